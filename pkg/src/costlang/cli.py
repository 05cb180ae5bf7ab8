"""Command-line front end.

Exit codes: 0 success, 1 parse, type or input error, 2 evaluation error. For
``check-bound`` and ``sweep-all``, 0 means every row was within its bound and
1 means at least one was not.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from . import cost as C
from . import gen, stdlib
from .machine import EXTENSIONAL, INTENSIONAL, EvalError, eval_program, eval_traced
from .presets import PRESETS, RECURRENCES, enq_inputs, queue_inputs, recurrence
from .refine import BoundReport, sweep
from .syntax import ParseError, TypeCheckError, check_program, parse
from .syntax import ast as A
from . import values as V

OK, INPUT_ERROR, EVAL_ERROR = 0, 1, 2
PHASES = {"intensional": INTENSIONAL, "extensional": EXTENSIONAL}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # keep exit status 2 for evaluation errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


# -- loading -----------------------------------------------------------------------


def _restrict(p: A.Program, entry: str | None) -> A.Program:
    if entry is None:
        return p
    for i, d in enumerate(p.defs):
        if d.name.replace("_", "-") == entry.replace("_", "-"):
            return replace(p, defs=p.defs[: i + 1])
    raise UsageError(f"no definition named '{entry}'")


def load(src: str, monoid_name: str | None = None, entry: str | None = None) -> A.Program:
    """Load ``stdlib:NAME`` or a ``.calf`` file and check it.

    Without an explicit monoid a file is checked with nat costs first and
    with (work span) costs if that fails on a cost literal.
    """
    monoid = C.MONOIDS[monoid_name] if monoid_name else None
    if src.startswith("stdlib:"):
        try:
            p = stdlib.get(src[len("stdlib:"):], monoid)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return _restrict(p, entry)
    try:
        with open(src, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {src}: {exc.strerror}") from None
    prog = _restrict(parse(text), entry)
    if monoid is not None:
        return check_program(prog, monoid)
    try:
        return check_program(prog, C.NAT)
    except TypeCheckError as exc:
        if exc.kind != "bad-cost-literal":
            raise
        try:
            return check_program(prog, C.PAR)
        except TypeCheckError:
            raise exc from None


def decode_args(p: A.Program, raw: list[str]) -> list:
    types = p.arg_types()
    if len(raw) != len(types):
        raise UsageError(f"{p.name} takes {len(types)} argument(s), got {len(raw)}")
    out = []
    for i, (text, t) in enumerate(zip(raw, types)):
        try:
            out.append(V.from_json(json.loads(text), t))
        except (ValueError, TypeError) as exc:
            raise UsageError(f"argument {i + 1}: expected {t}: {exc}") from None
    return out


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# -- commands -------------------------------------------------------------------------


def cmd_run(cfg, out) -> int:
    p = load(cfg.src, cfg.monoid, cfg.entry)
    args = decode_args(p, cfg.args)
    res = eval_program(p, args, PHASES[cfg.phase], cfg.fuel)
    value = V.to_json(res.value, p.result_type())
    if cfg.format == "json":
        doc = {"program": p.name, "monoid": str(p.monoid), "phase": cfg.phase, "value": value,
               "cost": C.to_json(res.cost), "transitions": res.transitions}
        out.write(json.dumps(doc) + "\n")
    else:
        out.write(f"value={_dump(value)} cost={_dump(C.to_json(res.cost))} transitions={res.transitions}\n")
    return OK


def cmd_profile(cfg, out) -> int:
    p = load(cfg.src, cfg.monoid, cfg.entry)
    args = decode_args(p, cfg.args)
    res, trace = eval_traced(p, args, PHASES[cfg.phase], cfg.fuel)
    par = p.monoid is C.PAR
    out.write("transition\twork\tspan\n" if par else "transition\tcost\n")
    for at, amount in trace:
        cols = "\t".join(f"+{x}" for x in C.components(amount))
        out.write(f"{at}\t{cols}\n")
    value = _dump(V.to_json(res.value, p.result_type()))
    if par:
        out.write(f"value={value} transitions={res.transitions}\n")
        out.write(f"work={res.cost.work} span={res.cost.span}\n")
    else:
        out.write(f"value={value} transitions={res.transitions}\n")
        out.write(f"cost={res.cost.value}\n")
    return OK


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad range '{text}', expected LO..HI") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"bad range '{text}'")
    return lo, hi


def inputs_for(p: A.Program, cfg):
    """Pick an input generator from the shape of the program's arguments."""
    types = p.arg_types()
    nat, L = A.NAT_T, A.ListT
    lo, hi = _parse_range(cfg.range) if cfg.range else (0, 100)
    if types == [nat]:
        return gen.nat_range(lo, hi)
    if types == [nat, nat]:
        return gen.nat_pairs(lo, hi)
    if len(types) == 1 and isinstance(types[0], L) and types[0].elem == nat:
        return gen.sort_inputs(cfg.maxlen if cfg.maxlen is not None else 64, cfg.trials or 200, cfg.seed)
    if len(types) == 2 and isinstance(types[0], L) and isinstance(types[0].elem, A.SumT):
        return gen.queue_seq_inputs(cfg.trials or 500, cfg.ops if cfg.ops is not None else 200, cfg.seed)
    queue = A.ProdT(L(p.monoid.unit(), nat), L(p.monoid.unit(), nat))
    size = cfg.maxlen if cfg.maxlen is not None else 8
    if types == [queue]:
        return queue_inputs(size)
    if types == [queue, nat]:
        return enq_inputs(size)
    raise UsageError(f"no input generator for arguments {' '.join(map(str, types))}")


def _emit(reports: list[BoundReport], fmt: str, out):
    if fmt == "json":
        if len(reports) == 1:
            out.write(reports[0].to_json())
        else:
            docs = [json.loads(r.to_json()) for r in reports]
            out.write(json.dumps(docs, indent=2) + "\n")
    elif fmt == "csv":
        for i, r in enumerate(reports):
            text = r.to_csv()
            out.write(text if i == 0 else text.split("\n", 1)[1])
    else:
        for r in reports:
            out.write(r.summary() + "\n")
            for row in r.failures[:10]:
                out.write(f"  violation: inputs={_dump(row.inputs)} measured={row.measured} bound={row.bound}\n")


def cmd_check_bound(cfg, out) -> int:
    try:
        rec = recurrence(cfg.rec)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    p = load(cfg.src, cfg.monoid, cfg.entry)
    report = sweep(p, inputs_for(p, cfg), rec, cfg.fuel)
    _emit([report], cfg.format, out)
    return OK if report.ok else INPUT_ERROR


def cmd_sweep_all(cfg, out) -> int:
    if cfg.list:
        for p in PRESETS.values():
            out.write(f"{p.name}\t{p.program}\t{p.rec}\t{p.doc}\n")
        return OK
    names = cfg.preset or list(PRESETS)
    unknown = [n for n in names if n not in PRESETS]
    if unknown:
        raise UsageError(f"unknown preset(s) {', '.join(unknown)}; known: {', '.join(PRESETS)}")
    reports = [PRESETS[n].run(cfg.fuel) for n in names]
    _emit(reports, cfg.format, out)
    return OK if all(r.ok for r in reports) else INPUT_ERROR


# -- argument parsing -----------------------------------------------------------------


def _fuel(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("fuel must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="costlang", description="Run cost-annotated programs and check their cost bounds.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmts=("text", "json")):
        sp.add_argument("src", help="a .calf file or stdlib:NAME")
        sp.add_argument("--monoid", choices=sorted(C.MONOIDS), help="cost monoid (default: the program's own)")
        sp.add_argument("--entry", help="definition to run (default: the last one)")
        sp.add_argument("--fuel", type=_fuel, help="transition budget (default: $CALF_FUEL or 10^8)")
        sp.add_argument("--format", choices=fmts, default="text")

    for name, helptext in [("run", "evaluate a program"), ("profile", "print the cost charged at each transition")]:
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--args", nargs="*", default=[], metavar="JSON", help="arguments, one JSON value each")
        sp.add_argument("--phase", choices=sorted(PHASES), default="intensional")

    sp = sub.add_parser("check-bound", help="sweep a program against a named recurrence")
    common(sp, ("text", "json", "csv"))
    sp.add_argument("--rec", required=True, help=f"one of: {', '.join(RECURRENCES)}")
    sp.add_argument("--range", help="LO..HI for natural-number arguments (default 0..100)")
    sp.add_argument("--ops", type=int, help="maximum op-list length for queue sequences (default 200)")
    sp.add_argument("--trials", type=int, help="random samples (default 500 op lists, or 200 lists per length)")
    sp.add_argument("--maxlen", type=int, help="maximum list length (default 64 for sorts, 8 for queues)")
    sp.add_argument("--seed", type=int, default=7)

    sp = sub.add_parser("sweep-all", help="run the named acceptance sweeps")
    sp.add_argument("preset", nargs="*", help="presets to run (default: all)")
    sp.add_argument("--list", action="store_true", help="list presets and exit")
    sp.add_argument("--fuel", type=_fuel)
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    return ap


COMMANDS = {"run": cmd_run, "profile": cmd_profile, "check-bound": cmd_check_bound, "sweep-all": cmd_sweep_all}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    cfg = build_parser().parse_args(argv)
    if getattr(cfg, "fuel", None) is None and os.environ.get("CALF_FUEL"):
        try:
            cfg.fuel = _fuel(os.environ["CALF_FUEL"])
        except (ValueError, argparse.ArgumentTypeError):
            err.write(f"costlang: error: bad CALF_FUEL value {os.environ['CALF_FUEL']!r}\n")
            return INPUT_ERROR
    where = getattr(cfg, "src", "")
    try:
        return COMMANDS[cfg.command](cfg, out)
    except ParseError as exc:
        err.write(f"{where}:{exc.line}:{exc.col}: parse error: {exc.message}\n")
        return INPUT_ERROR
    except TypeCheckError as exc:
        pos = f"{exc.span.line}:{exc.span.col}:" if exc.span else ""
        err.write(f"{where}:{pos} type error [{exc.kind}]: {exc.message}\n")
        return INPUT_ERROR
    except UsageError as exc:
        err.write(f"costlang: error: {exc}\n")
        return INPUT_ERROR
    except EvalError as exc:
        err.write(f"{where}: evaluation error [{exc.kind}]: {exc.message}\n")
        return EVAL_ERROR


def main_exit():
    try:
        code = main()
        sys.stdout.flush()
    except BrokenPipeError:
        # output was cut short by the reader, e.g. `| head`
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = OK
    sys.exit(code)


if __name__ == "__main__":
    main_exit()
