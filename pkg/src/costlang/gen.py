"""Seeded input generators and a random well-typed program generator.

All randomness goes through :class:`Lcg`, a 64-bit linear congruential
generator with fixed constants (multiplier 6364136223846793005, increment
1442695040888963407, modulus 2**64). Outputs are the high 32 bits of the state,
so the same seed yields the same inputs on every platform.
"""

from __future__ import annotations

import dataclasses
from itertools import product

from . import cost as C
from .cost import Monoid
from .syntax import ast as A
from .syntax.checker import check_program
from .values import vlist

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = 2**64 - 1


class Lcg:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK

    def next32(self) -> int:
        self.state = (self.state * MULTIPLIER + INCREMENT) & MASK
        return self.state >> 32

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n)."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return (self.next32() * n) >> 32

    def between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def coin(self) -> bool:
        return self.next32() >> 31 == 1


# -- inputs -----------------------------------------------------------------------


def nat_range(lo: int, hi: int):
    for n in range(lo, hi + 1):
        yield (n,)


def nat_pairs(lo: int, hi: int):
    for x, y in product(range(lo, hi + 1), repeat=2):
        yield (x, y)


def random_ops(rng: Lcg, max_len: int, max_elem: int = 9) -> list:
    from .stdlib import Deq, Enq

    n = rng.between(0, max_len)
    return [Enq(rng.between(0, max_elem)) if rng.coin() else Deq() for _ in range(n)]


def op_lists(trials: int, max_len: int, seed: int):
    rng = Lcg(seed)
    return [random_ops(rng, max_len) for _ in range(trials)]


def queue_seq_inputs(trials: int, max_len: int, seed: int):
    """Argument tuples (ops, empty queue) for the queue-seq program."""
    from .stdlib import QueueState

    q0 = QueueState().to_value()
    for ops in op_lists(trials, max_len, seed):
        yield (vlist(o.to_value() for o in ops), q0)


SORT_LENGTHS = (0, 1, 2, 4, 8, 16, 32, 64)


def sort_lengths(maxlen: int) -> list[int]:
    out = [n for n in SORT_LENGTHS if n <= maxlen]
    if maxlen not in out:
        out.append(maxlen)
    return out


def sort_lists(maxlen: int = 64, trials: int = 200, seed: int = 7):
    """Python lists: ``trials`` random samples per length plus sorted and reversed."""
    rng = Lcg(seed)
    for n in sort_lengths(maxlen):
        for _ in range(trials):
            yield [rng.below(2 * n + 1) for _ in range(n)]
        yield list(range(n))
        yield list(range(n - 1, -1, -1))


def sort_inputs(maxlen: int = 64, trials: int = 200, seed: int = 7):
    for xs in sort_lists(maxlen, trials, seed):
        yield (vlist(xs),)


# -- random programs --------------------------------------------------------------

_VTYPES = [A.NAT_T, A.BOOL_T, A.ProdT(A.NAT_T, A.NAT_T)]


class ProgramGen:
    """Random closed computations of type ``F A``.

    Recursor scrutinees are small literals so every generated program
    terminates quickly; the generated term is run through the checker, so a
    generator bug shows up as a type error rather than a bogus sample.
    """

    def __init__(self, rng: Lcg, monoid: Monoid = C.NAT, max_depth: int = 4):
        self.rng = rng
        self.monoid = monoid
        self.max_depth = max_depth
        self.fresh = 0

    def name(self) -> str:
        self.fresh += 1
        return f"v{self.fresh}"

    def cost(self):
        r = self.rng
        if self.monoid is C.NAT:
            return C.NatCost(r.below(5))
        s = r.below(4)
        return C.ParCost(s + r.below(3), s)

    def small_nat(self, n: int) -> A.ValueTerm:
        v = A.Zero()
        for _ in range(n):
            v = A.Suc(v)
        return v

    # values

    def value(self, ctx, ty, depth) -> A.ValueTerm:
        r = self.rng
        vars_ = [x for x, t in ctx if t == ty]
        if vars_ and r.below(3) > 0:
            return A.Var(r.choice(vars_))
        if isinstance(ty, A.NatT):
            k = r.below(4)
            if k == 0 and depth > 0:
                return A.Suc(self.value(ctx, ty, depth - 1))
            if k == 1 and depth > 0:
                x = self.value(ctx, A.NAT_T, depth - 1)
                y = self.value(ctx, A.NAT_T, depth - 1)
                return A.Meta("mod", (x, A.Suc(y)))
            return self.small_nat(r.below(4))
        if isinstance(ty, A.BoolT):
            if depth > 0 and r.coin():
                return A.Meta("le", (self.value(ctx, A.NAT_T, depth - 1), self.value(ctx, A.NAT_T, depth - 1)))
            return A.TrueV() if r.coin() else A.FalseV()
        if isinstance(ty, A.ProdT):
            return A.Pair(self.value(ctx, ty.left, depth - 1), self.value(ctx, ty.right, depth - 1))
        raise TypeError(ty)

    # computations

    def comp(self, ctx, ty, depth) -> A.CompTerm:
        r = self.rng
        recs = [x for x, t in ctx if t == A.U(A.F(ty))]
        if depth <= 0:
            if recs and r.coin():
                return A.Force(A.Var(r.choice(recs)))
            return A.Ret(self.value(ctx, ty, 1))
        k = r.below(10)
        d = depth - 1
        if k == 0:
            return A.Ret(self.value(ctx, ty, 2))
        if k == 1:
            return A.Step(self.cost(), self.comp(ctx, ty, d))
        if k == 2:
            b = r.choice(_VTYPES)
            x = self.name()
            return A.Bind(self.comp(ctx, b, d), x, self.comp(ctx + [(x, b)], ty, d))
        if k == 3:
            return A.If(self.value(ctx, A.BOOL_T, 1), self.comp(ctx, ty, d), self.comp(ctx, ty, d))
        if k == 4:
            n, rec = self.name(), self.name()
            inner = ctx + [(n, A.NAT_T), (rec, A.U(A.F(ty)))]
            return A.RecNat(self.small_nat(r.below(4)), self.comp(ctx, ty, d), n, rec, self.comp(inner, ty, d))
        if k == 5:
            b = r.choice(_VTYPES)
            x = self.name()
            return A.Ap(A.Lam(x, self.comp(ctx + [(x, b)], ty, d), ann=b), self.value(ctx, b, 1))
        if k == 6:
            t = self.name()
            x = self.name()
            th = A.Thunk(self.comp(ctx, ty, d))
            return A.Bind(A.Ret(th), t, A.Bind(A.Force(A.Var(t)), x, A.Ret(A.Var(x))))
        if k == 7:
            a, b = r.choice(_VTYPES), r.choice(_VTYPES)
            p, x, y = self.name(), self.name(), self.name()
            body = self.comp(ctx + [(x, a), (y, b)], ty, d)
            return A.Bind(A.Par(self.comp(ctx, a, d), self.comp(ctx, b, d)), p, A.Split(A.Var(p), x, y, body))
        if k == 8:
            h, tl, rec = self.name(), self.name(), self.name()
            lt = A.ListT(self.cost(), A.NAT_T)
            scrut = A.Nil()
            for _ in range(r.below(4)):
                scrut = A.Cons(self.value(ctx, A.NAT_T, 1), scrut)
            inner = ctx + [(h, A.NAT_T), (tl, lt), (rec, A.U(A.F(ty)))]
            return self._rec_list(ctx, ty, d, lt, scrut, h, tl, rec, inner)
        if recs:
            return A.Force(A.Var(r.choice(recs)))
        return A.Ret(self.value(ctx, ty, 2))

    def _rec_list(self, ctx, ty, d, lt, scrut, h, tl, rec, inner):
        # bind the literal first so its element type (and charge) is fixed by an annotation
        x = self.name()
        lam = A.Lam(x, A.RecList(A.Var(x), self.comp(ctx, ty, d), h, tl, rec, self.comp(inner, ty, d)), ann=lt)
        return A.Ap(lam, scrut)

    def program(self, ty=None) -> A.Program:
        ty = ty or self.rng.choice(_VTYPES)
        term = self.comp([], ty, self.max_depth)
        return check_program(A.Program((A.Def("main", A.F(ty), term),)), self.monoid)


def random_programs(count: int, seed: int = 0, monoid: Monoid = C.NAT, max_depth: int = 4):
    rng = Lcg(seed)
    gen = ProgramGen(rng, monoid, max_depth)
    for _ in range(count):
        yield gen.program()


# -- step mutation -----------------------------------------------------------------


def map_steps(node, f):
    """Rebuild ``node`` with every literal step amount ``c`` replaced by ``f(c)``."""
    if isinstance(node, (A.ValueTerm, A.CompTerm, A.Def)):
        changes = {}
        for fld in dataclasses.fields(node):
            if fld.name == "span":
                continue
            old = getattr(node, fld.name)
            new = map_steps(old, f)
            if fld.name == "cost" and isinstance(node, A.Step) and not isinstance(old, A.Meta):
                new = f(old)
            if new is not old:
                changes[fld.name] = new
        return dataclasses.replace(node, **changes) if changes else node
    if isinstance(node, tuple):
        items = tuple(map_steps(x, f) for x in node)
        return items if any(a is not b for a, b in zip(items, node)) else node
    return node


def mutate_steps(p: A.Program, rng: Lcg) -> A.Program:
    monoid = p.monoid

    def fresh(_):
        if monoid is C.PAR:
            s = rng.below(100)
            return C.ParCost(s + rng.below(100), s)
        return C.NatCost(rng.below(100))

    return dataclasses.replace(p, defs=tuple(map_steps(d, fresh) for d in p.defs))
