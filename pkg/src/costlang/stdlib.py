"""Case-study programs, built directly as ASTs, plus their host-side models.

Programs follow the clocked-recursion recipe: anything that is not
structurally recursive takes a fuel argument, and the complete program
instantiates it with a recursion depth computed by a cost-free primitive.

Cost models:

* identity: one unit per recursive call of ``id_hard``.
* gcd: one unit per ``mod``.
* batched queues: one unit per cons cell destructed (lists of type
  ``(list 1 nat)``).
* sorting: ``(1, 1)`` per comparison; list traversal is free.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Union

from .cost import NAT, PAR, Monoid
from .machine import INTENSIONAL, EvalResult, Phase, eval_program
from .recurrences import gcd_depth  # noqa: F401  (re-exported)
from .syntax import ast as A
from .syntax.checker import check_program
from .values import NIL, TRIV, VCons, VInl, VInr, vlist

# -- construction helpers -------------------------------------------------------


def _v(x):
    return A.Var(x) if isinstance(x, str) else x


def lam(*names_and_body):
    *names, body = names_and_body
    for n in reversed(names):
        body = A.Lam(n, body)
    return body


def ap(fn, *args):
    fn = A.Force(A.Var(fn)) if isinstance(fn, str) else fn
    for a in args:
        fn = A.Ap(fn, _v(a))
    return fn


def ret(v):
    return A.Ret(_v(v))


def bind(e, x, body):
    return A.Bind(e, x, body)


def force(x):
    return A.Force(_v(x))


def step(c, e):
    return A.Step(c, e)


def rec_nat(n, e0, pred, rec, e1):
    return A.RecNat(_v(n), e0, pred, rec, e1)


def rec_list(l, e0, head, tail, rec, e1):
    return A.RecList(_v(l), e0, head, tail, rec, e1)


def split(v, x, y, body):
    return A.Split(_v(v), x, y, body)


def case(v, x, e0, y, e1):
    return A.Case(_v(v), x, e0, y, e1)


def pair(a, b):
    return A.Pair(_v(a), _v(b))


def cons(h, t):
    return A.Cons(_v(h), _v(t))


def meta(name, *args):
    return A.Meta(name, tuple(_v(a) for a in args))


def suc(v):
    return A.Suc(_v(v))


NIL_T = A.Nil()
ZERO = A.Zero()
TRIV_T = A.Triv()


def arrow(*types):
    *args, out = types
    for a in reversed(args):
        out = A.Arrow(a, out)
    return out


def _program(defs, monoid: Monoid) -> A.Program:
    return check_program(A.Program(tuple(A.Def(n, t, e) for n, t, e in defs)), monoid)


def _upto(defs, name):
    for i, (n, _, _) in enumerate(defs):
        if n == name:
            return defs[: i + 1]
    raise KeyError(name)


# -- identity ---------------------------------------------------------------------

NAT_F = arrow(A.NAT_T, A.F(A.NAT_T))


@functools.lru_cache(maxsize=None)
def build_id_easy(monoid: Monoid = NAT) -> A.Program:
    return _program([("id_easy", NAT_F, lam("x", ret("x")))], monoid)


@functools.lru_cache(maxsize=None)
def build_id_hard(monoid: Monoid = NAT) -> A.Program:
    body = rec_nat(
        "x",
        ret(ZERO),
        "x'",
        "u",
        step(monoid.unit(), bind(force("u"), "y", ret(suc("y")))),
    )
    return _program([("id_hard", NAT_F, lam("x", body))], monoid)


# -- Euclid's algorithm ---------------------------------------------------------


@functools.lru_cache(maxsize=None)
def build_gcd(monoid: Monoid = NAT) -> A.Program:
    mod_inst = lam("x", "y", step(monoid.unit(), ret(meta("mod", "x", "y"))))
    # Clock zero returns x; a nonzero clock peels one Euclid round.
    round_ = rec_nat(
        "y",
        ret("x"),
        "y'",
        "_",
        bind(ap("mod-inst", "x", suc("y'")), "m", ap(force("r"), suc("y'"), "m")),
    )
    clocked = lam("k", rec_nat("k", lam("x", "y", ret("x")), "k'", "r", lam("x", "y", round_)))
    gcd = lam("x", "y", ap("gcd-clocked", meta("gcd-depth", "x", "y"), "x", "y"))
    return _program(
        [
            ("mod-inst", arrow(A.NAT_T, A.NAT_T, A.F(A.NAT_T)), mod_inst),
            ("gcd-clocked", arrow(A.NAT_T, A.NAT_T, A.NAT_T, A.F(A.NAT_T)), clocked),
            ("gcd", arrow(A.NAT_T, A.NAT_T, A.F(A.NAT_T)), gcd),
        ],
        monoid,
    )


# -- batched queues -----------------------------------------------------------------


def _queue_defs(monoid: Monoid):
    one = monoid.unit()
    L1 = A.ListT(one, A.NAT_T)
    Q = A.ProdT(L1, L1)
    DEQ_T = A.SumT(A.UNIT_T, A.ProdT(Q, A.NAT_T))
    OP = A.SumT(A.NAT_T, A.UNIT_T)
    OPS = A.ListT(monoid.zero(), OP)

    enq = lam("q", "x", split("q", "f", "b", ret(pair("f", cons("x", "b")))))
    rev = lam(
        "l",
        rec_list("l", lam("acc", ret("acc")), "a", "l'", "r", lam("acc", ap(force("r"), cons("a", "acc")))),
    )
    deq_empty = lam(
        "b",
        bind(
            ap("rev", "b", NIL_T),
            "l",
            rec_list("l", ret(A.Inl(TRIV_T)), "a", "l'", "_", ret(A.Inr(pair(pair("l'", NIL_T), "a")))),
        ),
    )
    deq = lam(
        "q",
        split("q", "f", "b", rec_list("f", ap("deq-empty", "b"), "a", "f'", "_", ret(A.Inr(pair(pair("f'", "b"), "a"))))),
    )
    operate = lam(
        "o",
        "q",
        case(
            "o",
            "x",
            ap("enq", "q", "x"),
            "_",
            bind(ap("deq", "q"), "s", case("s", "_", ret(pair(NIL_T, NIL_T)), "p", split("p", "q'", "x", ret("q'")))),
        ),
    )
    operate_seq = lam(
        "ops",
        rec_list(
            "ops",
            lam("q", ret("q")),
            "o",
            "os",
            "r",
            lam("q", bind(ap("operate", "o", "q"), "q'", ap(force("r"), "q'"))),
        ),
    )
    return [
        ("enq", arrow(Q, A.NAT_T, A.F(Q)), enq),
        ("rev", arrow(L1, L1, A.F(L1)), rev),
        ("deq-empty", arrow(L1, A.F(DEQ_T)), deq_empty),
        ("deq", arrow(Q, A.F(DEQ_T)), deq),
        ("operate", arrow(OP, Q, A.F(Q)), operate),
        ("queue-seq", arrow(OPS, Q, A.F(Q)), operate_seq),
    ]


@functools.lru_cache(maxsize=None)
def build_enq(monoid: Monoid = NAT) -> A.Program:
    return _program(_upto(_queue_defs(monoid), "enq"), monoid)


@functools.lru_cache(maxsize=None)
def build_deq(monoid: Monoid = NAT) -> A.Program:
    return _program(_upto(_queue_defs(monoid), "deq"), monoid)


@functools.lru_cache(maxsize=None)
def build_operate(monoid: Monoid = NAT) -> A.Program:
    return _program(_upto(_queue_defs(monoid), "operate"), monoid)


@functools.lru_cache(maxsize=None)
def build_queue_seq(monoid: Monoid = NAT) -> A.Program:
    return _program(_queue_defs(monoid), monoid)


@dataclass(frozen=True)
class QueueState:
    """Batched queue; the logical order is ``front + reversed(back)``."""

    front: tuple = ()
    back: tuple = ()

    def to_value(self):
        return (vlist(self.front), vlist(self.back))

    @classmethod
    def from_value(cls, v) -> QueueState:
        f, b = v
        return cls(tuple(f), tuple(b))

    def contents(self) -> list:
        return list(self.front) + list(reversed(self.back))


@dataclass(frozen=True)
class Enq:
    x: int

    def to_value(self):
        return VInl(self.x)


@dataclass(frozen=True)
class Deq:
    def to_value(self):
        return VInr(TRIV)


QueueOp = Union[Enq, Deq]


def phi(q: QueueState) -> int:
    return len(q.front) + 2 * len(q.back)


def host_operate(o: QueueOp, q: QueueState) -> QueueState:
    """Reference semantics of one operation, used as an oracle."""
    if isinstance(o, Enq):
        return QueueState(q.front, (o.x,) + q.back)
    if q.front:
        return QueueState(q.front[1:], q.back)
    if q.back:
        rev = tuple(reversed(q.back))
        return QueueState(rev[1:], ())
    return QueueState()


def op_cost(o: QueueOp, q: QueueState) -> int:
    """Cost of one operation: nothing for enqueue; for dequeue, one cons
    destruction of the front, or reversing the back and then one more."""
    if isinstance(o, Enq):
        return 0
    if q.front:
        return 1
    if q.back:
        return 1 + len(q.back)
    return 0


def cost_seq(ops, q0: QueueState) -> int:
    total = 0
    q = q0
    for o in ops:
        total += op_cost(o, q)
        q = host_operate(o, q)
    return total


def operate_seq(ops, q0: QueueState, phase: Phase = INTENSIONAL, monoid: Monoid = NAT):
    """Run ``ops`` from ``q0`` on the machine; returns (final state, cost)."""
    prog = build_queue_seq(monoid)
    res = eval_program(prog, [vlist(o.to_value() for o in ops), q0.to_value()], phase)
    return QueueState.from_value(res.value), res.cost


def run_op(o: QueueOp, q: QueueState, phase: Phase = INTENSIONAL, monoid: Monoid = NAT) -> tuple[QueueState, EvalResult]:
    res = eval_program(build_operate(monoid), [o.to_value(), q.to_value()], phase)
    return QueueState.from_value(res.value), res


# -- sorting ---------------------------------------------------------------------------


def _sort_defs(monoid: Monoid):
    L = A.ListT(monoid.zero(), A.NAT_T)
    PL = A.ProdT(L, L)
    leb = lam("x", "y", step(monoid.unit(), ret(meta("le", "x", "y"))))
    insert = lam(
        "x",
        "l",
        rec_list(
            "l",
            ret(cons("x", NIL_T)),
            "a",
            "l'",
            "r",
            bind(
                ap("leb", "x", "a"),
                "b",
                A.If(A.Var("b"), ret(cons("x", cons("a", "l'"))), bind(force("r"), "s", ret(cons("a", "s")))),
            ),
        ),
    )
    isort = lam("l", rec_list("l", ret(NIL_T), "a", "_", "r", bind(force("r"), "s", ap("insert", "a", "s"))))
    deal = lam(
        "l",
        rec_list(
            "l",
            ret(pair(NIL_T, NIL_T)),
            "a",
            "_",
            "r",
            bind(force("r"), "p", split("p", "xs", "ys", ret(pair(cons("a", "ys"), "xs")))),
        ),
    )
    merge = lam(
        "l1",
        rec_list(
            "l1",
            lam("l2", ret("l2")),
            "a",
            "l1'",
            "r",
            lam(
                "l2",
                rec_list(
                    "l2",
                    ret(cons("a", "l1'")),
                    "b",
                    "l2'",
                    "r2",
                    bind(
                        ap("leb", "a", "b"),
                        "c",
                        A.If(
                            A.Var("c"),
                            bind(ap(force("r"), cons("b", "l2'")), "m", ret(cons("a", "m"))),
                            bind(force("r2"), "m", ret(cons("b", "m"))),
                        ),
                    ),
                ),
            ),
        ),
    )

    def sort_clocked(merge_name):
        # lists of length 0 or 1 are returned as they are
        body = rec_list(
            "l",
            ret(NIL_T),
            "a",
            "l'",
            "_",
            rec_list(
                "l'",
                ret(cons("a", NIL_T)),
                "_",
                "_",
                "_",
                bind(
                    ap("deal", "l"),
                    "p",
                    split(
                        "p",
                        "xs",
                        "ys",
                        bind(
                            A.Par(ap(force("r"), "xs"), ap(force("r"), "ys")),
                            "ss",
                            split("ss", "sx", "sy", ap(merge_name, "sx", "sy")),
                        ),
                    ),
                ),
            ),
        )
        return lam("k", rec_nat("k", lam("l", ret("l")), "k'", "r", lam("l", body)))

    def sort_entry(clocked_name):
        return lam("l", ap(clocked_name, meta("clog2", meta("length", "l")), "l"))

    append = lam(
        "l1",
        rec_list("l1", lam("l2", ret("l2")), "a", "_", "r", lam("l2", bind(ap(force("r"), "l2"), "m", ret(cons("a", "m"))))),
    )
    split_at = lam(
        "l",
        rec_list(
            "l",
            lam("k", ret(pair(NIL_T, NIL_T))),
            "a",
            "l'",
            "r",
            lam(
                "k",
                rec_nat(
                    "k",
                    ret(pair(NIL_T, cons("a", "l'"))),
                    "k'",
                    "_",
                    bind(ap(force("r"), "k'"), "p", split("p", "xs", "ys", ret(pair(cons("a", "xs"), "ys")))),
                ),
            ),
        ),
    )
    # (front, (mid, back)) with |front| = |l| // 2; only called on nonempty lists
    split_mid = lam(
        "l",
        bind(
            ap("split-at", "l", meta("half", meta("length", "l"))),
            "p",
            split(
                "p",
                "xs",
                "ys",
                rec_list("ys", ret(pair("xs", pair(ZERO, NIL_T))), "m", "back", "_", ret(pair("xs", pair("m", "back")))),
            ),
        ),
    )
    # Binary search of a sorted list: (elements <= p, elements > p).
    split_by_step = rec_list(
        "l",
        ret(pair(NIL_T, NIL_T)),
        "_",
        "_",
        "_",
        bind(
            ap("split-mid", "l"),
            "s",
            split(
                "s",
                "front",
                "rest",
                split(
                    "rest",
                    "m",
                    "back",
                    bind(
                        ap("leb", "m", "p"),
                        "c",
                        A.If(
                            A.Var("c"),
                            bind(
                                ap(force("r"), "back", "p"),
                                "cd",
                                split(
                                    "cd",
                                    "lo",
                                    "hi",
                                    bind(ap("append", "front", cons("m", "lo")), "lo'", ret(pair("lo'", "hi"))),
                                ),
                            ),
                            bind(
                                ap(force("r"), "front", "p"),
                                "cd",
                                split(
                                    "cd",
                                    "lo",
                                    "hi",
                                    bind(ap("append", "hi", cons("m", "back")), "hi'", ret(pair("lo", "hi'"))),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    )
    split_by_clocked = lam(
        "k",
        rec_nat("k", lam("l", "p", ret(pair(NIL_T, "l"))), "k'", "r", lam("l", "p", split_by_step)),
    )
    split_by = lam("l", "p", ap("split-by-clocked", meta("clog2", suc(meta("length", "l"))), "l", "p"))
    merge_par_step = rec_list(
        "l1",
        ret("l2"),
        "_",
        "_",
        "_",
        bind(
            ap("split-mid", "l1"),
            "s",
            split(
                "s",
                "a1",
                "rest",
                split(
                    "rest",
                    "p",
                    "b1",
                    bind(
                        ap("split-by", "l2", "p"),
                        "cd",
                        split(
                            "cd",
                            "c",
                            "d",
                            bind(
                                A.Par(ap(force("r"), "a1", "c"), ap(force("r"), "b1", "d")),
                                "mm",
                                split("mm", "m1", "m2", ap("append", "m1", cons("p", "m2"))),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    )
    merge_par_clocked = lam(
        "k",
        rec_nat("k", lam("l1", "l2", ap("append", "l1", "l2")), "k'", "r", lam("l1", "l2", merge_par_step)),
    )
    merge_par = lam("l1", "l2", ap("merge-par-clocked", meta("clog2", suc(meta("length", "l1"))), "l1", "l2"))

    LL_L = arrow(L, L, A.F(L))
    return [
        ("leb", arrow(A.NAT_T, A.NAT_T, A.F(A.BOOL_T)), leb),
        ("insert", arrow(A.NAT_T, L, A.F(L)), insert),
        ("isort", arrow(L, A.F(L)), isort),
        ("deal", arrow(L, A.F(PL)), deal),
        ("merge", LL_L, merge),
        ("msort-clocked", arrow(A.NAT_T, L, A.F(L)), sort_clocked("merge")),
        ("msort", arrow(L, A.F(L)), sort_entry("msort-clocked")),
        ("append", LL_L, append),
        ("split-at", arrow(L, A.NAT_T, A.F(PL)), split_at),
        ("split-mid", arrow(L, A.F(A.ProdT(L, A.ProdT(A.NAT_T, L)))), split_mid),
        ("split-by-clocked", arrow(A.NAT_T, L, A.NAT_T, A.F(PL)), split_by_clocked),
        ("split-by", arrow(L, A.NAT_T, A.F(PL)), split_by),
        ("merge-par-clocked", arrow(A.NAT_T, L, L, A.F(L)), merge_par_clocked),
        ("merge-par", LL_L, merge_par),
        ("msort-par-clocked", arrow(A.NAT_T, L, A.F(L)), sort_clocked("merge-par")),
        ("msort_par", arrow(L, A.F(L)), sort_entry("msort-par-clocked")),
    ]


def _without(defs, *names):
    return [d for d in defs if d[0] not in names]


@functools.lru_cache(maxsize=None)
def build_isort(monoid: Monoid = PAR) -> A.Program:
    return _program(_upto(_sort_defs(monoid), "isort"), monoid)


@functools.lru_cache(maxsize=None)
def build_msort(monoid: Monoid = PAR) -> A.Program:
    defs = _upto(_sort_defs(monoid), "msort")
    return _program(_without(defs, "insert", "isort"), monoid)


@functools.lru_cache(maxsize=None)
def build_msort_par(monoid: Monoid = PAR) -> A.Program:
    defs = _sort_defs(monoid)
    return _program(_without(defs, "insert", "isort", "merge", "msort-clocked", "msort"), monoid)


# -- registry ---------------------------------------------------------------------------

BUILDERS = {
    "id_easy": (build_id_easy, NAT),
    "id_hard": (build_id_hard, NAT),
    "gcd": (build_gcd, NAT),
    "enq": (build_enq, NAT),
    "deq": (build_deq, NAT),
    "operate": (build_operate, NAT),
    "queue-seq": (build_queue_seq, NAT),
    "isort": (build_isort, PAR),
    "msort": (build_msort, PAR),
    "msort_par": (build_msort_par, PAR),
}


def _key(name: str) -> str:
    for k in BUILDERS:
        if k.replace("_", "-") == name.replace("_", "-"):
            return k
    raise KeyError(f"unknown stdlib program '{name}'; known: {', '.join(BUILDERS)}")


def default_monoid(name: str) -> Monoid:
    return BUILDERS[_key(name)][1]


def get(name: str, monoid: Monoid | None = None) -> A.Program:
    builder, dflt = BUILDERS[_key(name)]
    return builder(monoid or dflt)


def names() -> list[str]:
    return list(BUILDERS)


__all__ = [
    "NIL",
    "build_id_easy",
    "build_id_hard",
    "build_gcd",
    "gcd_depth",
    "build_enq",
    "build_deq",
    "build_operate",
    "build_queue_seq",
    "QueueState",
    "QueueOp",
    "Enq",
    "Deq",
    "phi",
    "op_cost",
    "cost_seq",
    "operate_seq",
    "host_operate",
    "build_isort",
    "build_msort",
    "build_msort_par",
    "get",
    "names",
]
