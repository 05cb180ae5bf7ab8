"""Cost refinements checked against the machine.

``has_cost`` asks for the exact cost, ``is_bounded`` for an upper bound. Bounds
are compared with the monoid's ordinary order ``leq``: for the monoids used
here the extensional and ordinary orders coincide, so no modal inequality is
modelled.

Certificates (:class:`RetCert`, :class:`StepCert`, :class:`BindCert`,
:class:`RelaxCert`) mirror the syntax-directed bounding rules and are checked
against a term. :class:`UnfoldCert` is an addition that performs one
zero-cost head reduction (beta, force, recursor or case unfolding) so that
certificates can reach past non-syntax-directed heads.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import cost as C
from .cost import Cost, Monoid
from .machine import INTENSIONAL, EvalResult, _step_amount, eval_comp, eval_program, eval_value
from .recurrences import ceil_log2, fib, fib_inv  # noqa: F401  (re-exported)
from .syntax import ast as A
from .values import NIL, Closure, VInl
from . import values as V


def measure(p: A.Program, args, fuel=None) -> EvalResult:
    return eval_program(p, list(args), INTENSIONAL, fuel)


def has_cost(p: A.Program, args, c: Cost, fuel=None) -> bool:
    return measure(p, args, fuel).cost == c


def is_bounded(p: A.Program, args, c: Cost, fuel=None) -> bool:
    return measure(p, args, fuel).cost.leq(c)


# -- certificates ---------------------------------------------------------------


class CertShapeError(Exception):
    pass


@dataclass(frozen=True)
class RetCert:
    pass


@dataclass(frozen=True)
class StepCert:
    cost: Cost
    inner: object = RetCert()


@dataclass(frozen=True)
class BindCert:
    lhs: object
    # Given the value the left-hand side returns, the certificate for the body.
    rhs: Callable


@dataclass(frozen=True)
class RelaxCert:
    inner: object
    weaker: Cost


@dataclass(frozen=True)
class UnfoldCert:
    inner: object


def unfold(e: A.CompTerm, env: dict):
    """One zero-cost head rewrite of ``e`` under ``env``.

    Destructing a cons cell turns into an explicit ``step`` carrying the
    list's charge, so the charge stays visible to certificates.
    """
    t = type(e)
    if t is A.Ap:
        arg = eval_value(e.arg, env)
        fn = e.fn
        if type(fn) is A.Lam:
            return fn.body, {**env, fn.var: arg}
        if type(fn) is A.Step:
            return A.Step(fn.cost, A.Ap(fn.body, A.Lit(arg))), env
        if type(fn) is A.Bind:
            return A.Bind(fn.comp, fn.var, A.Ap(fn.body, A.Lit(arg))), env
        inner, env2 = unfold(fn, env)
        return A.Ap(inner, A.Lit(arg)), env2
    if t is A.Force:
        th = eval_value(e.value, env)
        return th.comp, th.env
    if t is A.RecNat:
        n = eval_value(e.scrut, env)
        if n == 0:
            return e.zero, env
        rec = Closure(A.RecNat(A.Lit(n - 1), e.zero, e.pred, e.rec, e.suc), env)
        return e.suc, {**env, e.pred: n - 1, e.rec: rec}
    if t is A.RecList:
        lst = eval_value(e.scrut, env)
        if lst is NIL:
            return e.nil, env
        rec = Closure(A.RecList(A.Lit(lst.tail), e.nil, e.head, e.tail, e.rec, e.cons, e.charge), env)
        inner = {**env, e.head: lst.head, e.tail: lst.tail, e.rec: rec}
        if e.charge is None or e.charge.is_zero():
            return e.cons, inner
        # rec-list body runs under inner; the Step node is evaluated there too
        return A.Step(e.charge, e.cons), inner
    if t is A.Case:
        s = eval_value(e.scrut, env)
        if type(s) is VInl:
            return e.left, {**env, e.left_var: s.value}
        return e.right, {**env, e.right_var: s.value}
    if t is A.If:
        return (e.then if eval_value(e.cond, env) else e.orelse), env
    if t is A.Split:
        p = eval_value(e.scrut, env)
        if type(p) is tuple:
            return e.body, {**env, e.left_var: p[0], e.right_var: p[1]}
    raise CertShapeError(f"no zero-cost unfolding for {t.__name__}")


def _certify(cert, e, env, monoid: Monoid):
    ct = type(cert)
    if ct is RelaxCert:
        b, ok = _certify(cert.inner, e, env, monoid)
        return cert.weaker, ok and b.leq(cert.weaker)
    if ct is UnfoldCert:
        e2, env2 = unfold(e, env)
        return _certify(cert.inner, e2, env2, monoid)
    if ct is RetCert:
        if type(e) is not A.Ret:
            raise CertShapeError(f"Ret certificate on {type(e).__name__}")
        return monoid.zero(), True
    if ct is StepCert:
        if type(e) is not A.Step:
            raise CertShapeError(f"Step certificate on {type(e).__name__}")
        amount = _step_amount(e.cost, env, monoid)
        b, ok = _certify(cert.inner, e.body, env, monoid)
        return cert.cost.seq(b), ok and cert.cost == amount
    if ct is BindCert:
        if type(e) is not A.Bind:
            raise CertShapeError(f"Bind certificate on {type(e).__name__}")
        b1, ok1 = _certify(cert.lhs, e.comp, env, monoid)
        a = eval_comp(e.comp, env, monoid).value
        b2, ok2 = _certify(cert.rhs(a), e.body, {**env, e.var: a}, monoid)
        return b1.seq(b2), ok1 and ok2
    raise CertShapeError(f"not a certificate: {cert!r}")


def check_cert(cert, e: A.CompTerm, env=None, monoid: Monoid = C.NAT) -> tuple[Cost, bool]:
    """Return the certified bound and whether the derivation is valid.

    A derivation is valid when every rule's side condition holds and the
    machine-measured cost of ``e`` is within the certified bound.
    """
    env = dict(env or {})
    bound, ok = _certify(cert, e, env, monoid)
    measured = eval_comp(e, env, monoid).cost
    return bound, ok and measured.leq(bound)


def cert_bound(cert, monoid: Monoid = C.NAT) -> Optional[Cost]:
    """Bound of a certificate that does not need a term (no Bind inside)."""
    ct = type(cert)
    if ct is RetCert:
        return monoid.zero()
    if ct is StepCert:
        inner = cert_bound(cert.inner, monoid)
        return None if inner is None else cert.cost.seq(inner)
    if ct is RelaxCert:
        return cert.weaker
    if ct is UnfoldCert:
        return cert_bound(cert.inner, monoid)
    return None


# -- amortized analysis ------------------------------------------------------------


def enumerate_queues(max_front: int, max_back: int, alphabet=(0, 1)):
    from itertools import product

    from .stdlib import QueueState

    def lists(n):
        for k in range(n + 1):
            yield from product(alphabet, repeat=k)

    backs = list(lists(max_back))
    for f in lists(max_front):
        for b in backs:
            yield QueueState(f, b)


def amortized_cost(op, q, monoid: Monoid = C.NAT, runner=None) -> int:
    """Measured cost plus the change in potential, in signed integers.

    ``runner(op, q)`` returns ``(next state, EvalResult)``; it defaults to
    running the object-language ``operate`` program.
    """
    from .stdlib import phi, run_op

    if runner is None:
        q2, res = run_op(op, q, monoid=monoid)
    else:
        q2, res = runner(op, q)
    return res.cost.value + phi(q2) - phi(q)


def amortized_violations(op, k: int, queues: Iterable, monoid: Monoid = C.NAT, runner=None) -> list:
    out = []
    for q in queues:
        a = amortized_cost(op, q, monoid, runner)
        if a > k:
            out.append((q, a))
    return out


def amortized_check(op, k: int, queues: Iterable, monoid: Monoid = C.NAT, runner=None) -> bool:
    return not amortized_violations(op, k, queues, monoid, runner)


# -- sweeps and reports ---------------------------------------------------------------


@dataclass(frozen=True)
class Recurrence:
    name: str
    fn: Callable  # runtime argument values -> Cost, int or (work, span)
    doc: str = ""

    def __call__(self, *args) -> Cost:
        return self.fn(*args)


def lift(raw, monoid: Monoid) -> Cost:
    """Read a recurrence result as a cost of ``monoid``.

    Recurrences are plain host functions, so they may return a Cost, an
    integer or a (work, span) pair. An integer on the parallel monoid means
    that many unit operations, each (1, 1).
    """
    if isinstance(raw, (C.NatCost, C.ParCost)):
        if not monoid.owns(raw):
            raise TypeError(f"recurrence returned {raw}, not a {monoid} cost")
        return raw
    if isinstance(raw, int):
        return monoid.of(raw) if monoid is C.NAT else monoid.of(raw, raw)
    return monoid.of(*raw)


def _slack(measured: Cost, bound: Cost):
    diff = [b - m for m, b in zip(C.components(measured), C.components(bound))]
    return diff[0] if len(diff) == 1 else diff


def _sort_key(obj):
    if obj is None:
        return (0,)
    if isinstance(obj, bool):
        return (1, int(obj))
    if isinstance(obj, int):
        return (2, obj)
    if isinstance(obj, list):
        return (3, len(obj), tuple(_sort_key(x) for x in obj))
    if isinstance(obj, dict):
        return (4, tuple((k, _sort_key(v)) for k, v in sorted(obj.items())))
    return (5, str(obj))


@dataclass
class BoundRow:
    inputs: list
    measured: Cost
    bound: Cost

    @property
    def ok(self) -> bool:
        return self.measured.leq(self.bound)

    @property
    def slack(self):
        return _slack(self.measured, self.bound)


COLUMNS = ["program", "monoid", "inputs", "measured", "bound", "ok", "slack"]


@dataclass
class BoundReport:
    program: str
    monoid: str
    recurrence: str
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def failures(self) -> list:
        return [r for r in self.rows if not r.ok]

    @property
    def worst_slack(self):
        if not self.rows:
            return None
        slacks = [r.slack for r in self.rows]
        if isinstance(slacks[0], int):
            return min(slacks)
        return [min(s[i] for s in slacks) for i in range(len(slacks[0]))]

    def sorted(self) -> BoundReport:
        rows = sorted(self.rows, key=lambda r: _sort_key(r.inputs))
        return BoundReport(self.program, self.monoid, self.recurrence, rows)

    def records(self) -> list[dict]:
        return [
            {
                "program": self.program,
                "monoid": self.monoid,
                "inputs": r.inputs,
                "measured": C.to_json(r.measured),
                "bound": C.to_json(r.bound),
                "ok": r.ok,
                "slack": r.slack,
            }
            for r in self.sorted().rows
        ]

    def to_json(self) -> str:
        doc = {
            "program": self.program,
            "monoid": self.monoid,
            "recurrence": self.recurrence,
            "ok": self.ok,
            "count": len(self.rows),
            "worst_slack": self.worst_slack,
            "rows": self.records(),
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for rec in self.records():
            w.writerow([rec[c] if c in ("program", "monoid") else json.dumps(rec[c], separators=(",", ":")) for c in COLUMNS])
        return buf.getvalue()

    def summary(self) -> str:
        status = "ok" if self.ok else f"FAILED ({len(self.failures)} violations)"
        return (
            f"{self.program} <= {self.recurrence} [{self.monoid}]: {len(self.rows)} inputs, "
            f"worst slack {self.worst_slack}, {status}"
        )


def sweep(p: A.Program, gen: Iterable, r: Recurrence, fuel=None) -> BoundReport:
    """Measure ``p`` on every argument tuple from ``gen`` against ``r``."""
    types = p.arg_types()
    report = BoundReport(p.name, str(p.monoid), r.name)
    for args in gen:
        args = list(args)
        res = measure(p, args, fuel)
        inputs = [V.to_json(a, t) for a, t in zip(args, types)]
        report.rows.append(BoundRow(inputs, res.cost, lift(r(*args), p.monoid)))
    return report


__all__ = [
    "has_cost",
    "is_bounded",
    "check_cert",
    "RetCert",
    "StepCert",
    "BindCert",
    "RelaxCert",
    "UnfoldCert",
    "CertShapeError",
    "fib",
    "fib_inv",
    "ceil_log2",
    "amortized_check",
    "amortized_cost",
    "enumerate_queues",
    "Recurrence",
    "BoundReport",
    "sweep",
]
