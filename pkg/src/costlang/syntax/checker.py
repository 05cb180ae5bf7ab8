"""Bidirectional type checker for the nondependent fragment.

Checking also elaborates: every ``rec-list`` node is stamped with the cost
annotation of the list type it destructs, which is what the machine charges
per cons cell. :func:`check_program` returns the elaborated program.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Optional

from .. import meta
from ..cost import NAT, Monoid
from . import ast as A

POLARITY = "polarity-violation"
MISMATCH = "mismatch"
UNBOUND = "unbound-variable"
BAD_COST = "bad-cost-literal"


class TypeCheckError(Exception):
    def __init__(self, kind: str, message: str, span: Optional[A.Span] = None):
        where = str(span) if span is not None else "?"
        super().__init__(f"{where}: {kind}: {message}")
        self.kind = kind
        self.message = message
        self.span = span


class Checker:
    def __init__(self, monoid: Monoid = NAT):
        self.monoid = monoid

    # -- helpers ----------------------------------------------------------

    def _fail(self, kind, message, node=None, where=None):
        span = getattr(node, "span", None) or where
        raise TypeCheckError(kind, message, span)

    def cost_literal(self, c, where=None):
        if not self.monoid.owns(c):
            self._fail(BAD_COST, f"cost {c} is not an element of the {self.monoid} monoid", where=where)

    def vtype(self, t, where=None):
        """Check that ``t`` is a well-formed value type."""
        if isinstance(t, (A.NatT, A.UnitT, A.BoolT)):
            return
        if isinstance(t, A.U):
            self.ctype(t.comp, where)
        elif isinstance(t, (A.SumT, A.ProdT)):
            self.vtype(t.left, where)
            self.vtype(t.right, where)
        elif isinstance(t, A.ListT):
            self.cost_literal(t.cost, where)
            self.vtype(t.elem, where)
        elif isinstance(t, A.CompType):
            self._fail(POLARITY, f"computation type {t} used where a value type is required", where=where)
        else:
            self._fail(MISMATCH, f"not a type: {t!r}", where=where)

    def ctype(self, t, where=None):
        if isinstance(t, A.F):
            self.vtype(t.result, where)
        elif isinstance(t, (A.Arrow, A.PairCT)):
            self.vtype(t.arg if isinstance(t, A.Arrow) else t.left, where)
            self.ctype(t.body if isinstance(t, A.Arrow) else t.right, where)
        elif isinstance(t, A.ValueType):
            self._fail(POLARITY, f"value type {t} used where a computation type is required", where=where)
        else:
            self._fail(MISMATCH, f"not a type: {t!r}", where=where)

    def _want(self, got, want, node, where):
        if got != want:
            self._fail(MISMATCH, f"expected {want}, found {got}", node, where)

    def _as_value(self, v, where):
        if isinstance(v, A.CompTerm):
            self._fail(POLARITY, f"computation {type(v).__name__} used where a value is required", v, where)
        if not isinstance(v, A.ValueTerm):
            self._fail(MISMATCH, f"not a term: {v!r}", where=where)

    def _as_comp(self, e, where):
        if isinstance(e, A.ValueTerm):
            self._fail(POLARITY, f"value {type(e).__name__} used where a computation is required", e, where)
        if not isinstance(e, A.CompTerm):
            self._fail(MISMATCH, f"not a term: {e!r}", where=where)

    # -- values -----------------------------------------------------------

    def infer_value(self, ctx, v, where=None):
        """Return (type, elaborated term), or fail if the type is not inferable."""
        self._as_value(v, where)
        where = v.span or where
        t = type(v)
        if t is A.Var:
            if v.name not in ctx:
                self._fail(UNBOUND, f"unbound variable '{v.name}'", v, where)
            return ctx[v.name], v
        if t is A.Zero:
            return A.NAT_T, v
        if t is A.Suc:
            return A.NAT_T, replace(v, pred=self.check_value(ctx, v.pred, A.NAT_T, where))
        if t is A.Triv:
            return A.UNIT_T, v
        if t in (A.TrueV, A.FalseV):
            return A.BOOL_T, v
        if t is A.Thunk:
            x, e = self.infer_comp(ctx, v.comp, where)
            return A.U(x), replace(v, comp=e)
        if t is A.Pair:
            ta, a = self.infer_value(ctx, v.left, where)
            tb, b = self.infer_value(ctx, v.right, where)
            return A.ProdT(ta, tb), replace(v, left=a, right=b)
        if t is A.Cons:
            th, h = self.infer_value(ctx, v.head, where)
            if type(v.tail) is A.Nil:
                return A.ListT(self.monoid.zero(), th), replace(v, head=h)
            tt, tl = self.infer_value(ctx, v.tail, where)
            if not isinstance(tt, A.ListT) or tt.elem != th:
                self._fail(MISMATCH, f"cons of {th} onto {tt}", v, where)
            return tt, replace(v, head=h, tail=tl)
        if t is A.Meta:
            rt, args = self.meta_call(ctx, v, where)
            if rt is meta.COST:
                self._fail(MISMATCH, f"cost primitive '{v.name}' used as a value", v, where)
            return rt, replace(v, args=args)
        self._fail(MISMATCH, f"cannot infer the type of {type(v).__name__}; add an annotation", v, where)

    def meta_call(self, ctx, v, where):
        try:
            prim = meta.lookup(v.name)
        except KeyError:
            self._fail(UNBOUND, f"unknown primitive '{v.name}'", v, where)
        typed = [self.infer_value(ctx, a, where) for a in v.args]
        try:
            rt = prim.signature([ty for ty, _ in typed])
        except meta.MetaTypeError as exc:
            self._fail(MISMATCH, f"primitive '{v.name}' {exc}", v, where)
        return (meta.COST if prim.returns_cost else rt), tuple(a for _, a in typed)

    def check_value(self, ctx, v, want, where=None):
        self._as_value(v, where)
        where = v.span or where
        t = type(v)
        if t is A.Nil:
            if not isinstance(want, A.ListT):
                self._fail(MISMATCH, f"expected {want}, found a list", v, where)
            return v
        if t is A.Cons:
            if not isinstance(want, A.ListT):
                self._fail(MISMATCH, f"expected {want}, found a list", v, where)
            return replace(v, head=self.check_value(ctx, v.head, want.elem, where), tail=self.check_value(ctx, v.tail, want, where))
        if t in (A.Inl, A.Inr):
            if not isinstance(want, A.SumT):
                self._fail(MISMATCH, f"expected {want}, found an injection", v, where)
            side = want.left if t is A.Inl else want.right
            return replace(v, value=self.check_value(ctx, v.value, side, where))
        if t is A.Pair:
            if not isinstance(want, A.ProdT):
                self._fail(MISMATCH, f"expected {want}, found a pair", v, where)
            return replace(v, left=self.check_value(ctx, v.left, want.left, where), right=self.check_value(ctx, v.right, want.right, where))
        if t is A.Thunk:
            if not isinstance(want, A.U):
                self._fail(MISMATCH, f"expected {want}, found a thunk", v, where)
            return replace(v, comp=self.check_comp(ctx, v.comp, want.comp, where))
        got, v2 = self.infer_value(ctx, v, where)
        self._want(got, want, v, where)
        return v2

    # -- computations -------------------------------------------------------

    def _step_cost(self, ctx, e, where):
        c = e.cost
        if isinstance(c, A.Meta):
            rt, args = self.meta_call(ctx, c, where)
            if rt is not meta.COST:
                self._fail(BAD_COST, f"primitive '{c.name}' does not produce a cost", e, where)
            return replace(c, args=args)
        if isinstance(c, (A.ValueTerm, A.CompTerm)):
            self._fail(BAD_COST, "step amounts must be cost literals or primitive calls", e, where)
        self.cost_literal(c, e.span or where)
        return c

    def infer_comp(self, ctx, e, where=None):
        """Return (computation type, elaborated term)."""
        self._as_comp(e, where)
        where = e.span or where
        t = type(e)
        if t is A.Ret:
            ty, v = self.infer_value(ctx, e.value, where)
            return A.F(ty), replace(e, value=v)
        if t is A.Bind:
            x1, e1 = self.infer_comp(ctx, e.comp, where)
            if not isinstance(x1, A.F):
                self._fail(MISMATCH, f"bind expects F A on the left, found {x1}", e.comp, where)
            x2, body = self.infer_comp({**ctx, e.var: x1.result}, e.body, where)
            return x2, replace(e, comp=e1, body=body)
        if t is A.Force:
            ty, v = self.infer_value(ctx, e.value, where)
            if not isinstance(ty, A.U):
                self._fail(MISMATCH, f"force expects a thunk, found {ty}", e.value, where)
            return ty.comp, replace(e, value=v)
        if t is A.Lam:
            if e.ann is None:
                self._fail(MISMATCH, f"cannot infer the type of lam ({e.var}); annotate the binder", e, where)
            self.vtype(e.ann, where)
            x, body = self.infer_comp({**ctx, e.var: e.ann}, e.body, where)
            return A.Arrow(e.ann, x), replace(e, body=body)
        if t is A.Ap:
            xf, fn = self.infer_comp(ctx, e.fn, where)
            if not isinstance(xf, A.Arrow):
                self._fail(MISMATCH, f"applying a non-function of type {xf}", e.fn, where)
            return xf.body, replace(e, fn=fn, arg=self.check_value(ctx, e.arg, xf.arg, where))
        if t is A.Step:
            cost = self._step_cost(ctx, e, where)
            x, body = self.infer_comp(ctx, e.body, where)
            return x, replace(e, cost=cost, body=body)
        if t is A.Par:
            x1, e1 = self.infer_comp(ctx, e.left, where)
            x2, e2 = self.infer_comp(ctx, e.right, where)
            for side, xs in ((e.left, x1), (e.right, x2)):
                if not isinstance(xs, A.F):
                    self._fail(MISMATCH, f"par components must have type F A, found {xs}", side, where)
            return A.F(A.ProdT(x1.result, x2.result)), replace(e, left=e1, right=e2)
        if t is A.PairC:
            ta, v = self.infer_value(ctx, e.value, where)
            x, c = self.infer_comp(ctx, e.comp, where)
            return A.PairCT(ta, x), replace(e, value=v, comp=c)
        if t is A.RecNat:
            v = self.check_value(ctx, e.scrut, A.NAT_T, where)
            x, e0 = self.infer_comp(ctx, e.zero, where)
            e1 = self.check_comp({**ctx, e.pred: A.NAT_T, e.rec: A.U(x)}, e.suc, x, where)
            return x, replace(e, scrut=v, zero=e0, suc=e1)
        if t is A.RecList:
            lt, v = self._list_scrut(ctx, e, where)
            x, e0 = self.infer_comp(ctx, e.nil, where)
            e1 = self.check_comp({**ctx, e.head: lt.elem, e.tail: lt, e.rec: A.U(x)}, e.cons, x, where)
            return x, replace(e, scrut=v, nil=e0, cons=e1, charge=lt.cost)
        if t in (A.Case, A.Split, A.If):
            return self._branching(ctx, e, None, where)
        self._fail(MISMATCH, f"not a computation: {e!r}", where=where)

    def _list_scrut(self, ctx, e, where):
        lt, v = self.infer_value(ctx, e.scrut, where)
        if not isinstance(lt, A.ListT):
            self._fail(MISMATCH, f"rec-list expects a list, found {lt}", e.scrut, where)
        return lt, v

    def _branching(self, ctx, e, want, where):
        """case / split / if, in inference mode (want None) or checking mode."""

        def branch(extra, body):
            c2 = {**ctx, **extra}
            if want is None:
                return self.infer_comp(c2, body, where)
            return want, self.check_comp(c2, body, want, where)

        t = type(e)
        if t is A.If:
            cond = self.check_value(ctx, e.cond, A.BOOL_T, where)
            x0, e0 = branch({}, e.then)
            e1 = self.check_comp(ctx, e.orelse, x0, where)
            return x0, replace(e, cond=cond, then=e0, orelse=e1)
        st, v = self.infer_value(ctx, e.scrut, where)
        if t is A.Case:
            if not isinstance(st, A.SumT):
                self._fail(MISMATCH, f"case expects a sum, found {st}", e.scrut, where)
            x0, e0 = branch({e.left_var: st.left}, e.left)
            e1 = self.check_comp({**ctx, e.right_var: st.right}, e.right, x0, where)
            return x0, replace(e, scrut=v, left=e0, right=e1)
        if isinstance(st, A.ProdT):
            x, body = branch({e.left_var: st.left, e.right_var: st.right}, e.body)
        elif isinstance(st, A.U) and isinstance(st.comp, A.PairCT):
            pc = st.comp
            x, body = branch({e.left_var: pc.left, e.right_var: A.U(pc.right)}, e.body)
        else:
            self._fail(MISMATCH, f"split expects a pair or a thunked pairC, found {st}", e.scrut, where)
        return x, replace(e, scrut=v, body=body)

    def check_comp(self, ctx, e, want, where=None):
        self._as_comp(e, where)
        where = e.span or where
        t = type(e)
        if t is A.Ret:
            if not isinstance(want, A.F):
                self._fail(MISMATCH, f"expected {want}, found ret", e, where)
            return replace(e, value=self.check_value(ctx, e.value, want.result, where))
        if t is A.Bind:
            x1, e1 = self.infer_comp(ctx, e.comp, where)
            if not isinstance(x1, A.F):
                self._fail(MISMATCH, f"bind expects F A on the left, found {x1}", e.comp, where)
            return replace(e, comp=e1, body=self.check_comp({**ctx, e.var: x1.result}, e.body, want, where))
        if t is A.Lam:
            if not isinstance(want, A.Arrow):
                self._fail(MISMATCH, f"expected {want}, found lam", e, where)
            if e.ann is not None and e.ann != want.arg:
                self._fail(MISMATCH, f"binder annotated {e.ann} but {want.arg} expected", e, where)
            return replace(e, body=self.check_comp({**ctx, e.var: want.arg}, e.body, want.body, where))
        if t is A.Step:
            cost = self._step_cost(ctx, e, where)
            return replace(e, cost=cost, body=self.check_comp(ctx, e.body, want, where))
        if t is A.Par:
            if not (isinstance(want, A.F) and isinstance(want.result, A.ProdT)):
                self._fail(MISMATCH, f"expected {want}, found par", e, where)
            pt = want.result
            return replace(e, left=self.check_comp(ctx, e.left, A.F(pt.left), where), right=self.check_comp(ctx, e.right, A.F(pt.right), where))
        if t is A.PairC:
            if not isinstance(want, A.PairCT):
                self._fail(MISMATCH, f"expected {want}, found a computation pair", e, where)
            return replace(e, value=self.check_value(ctx, e.value, want.left, where), comp=self.check_comp(ctx, e.comp, want.right, where))
        if t is A.RecNat:
            v = self.check_value(ctx, e.scrut, A.NAT_T, where)
            e0 = self.check_comp(ctx, e.zero, want, where)
            e1 = self.check_comp({**ctx, e.pred: A.NAT_T, e.rec: A.U(want)}, e.suc, want, where)
            return replace(e, scrut=v, zero=e0, suc=e1)
        if t is A.RecList:
            lt, v = self._list_scrut(ctx, e, where)
            e0 = self.check_comp(ctx, e.nil, want, where)
            e1 = self.check_comp({**ctx, e.head: lt.elem, e.tail: lt, e.rec: A.U(want)}, e.cons, want, where)
            return replace(e, scrut=v, nil=e0, cons=e1, charge=lt.cost)
        if t in (A.Case, A.Split, A.If):
            return self._branching(ctx, e, want, where)[1]
        got, e2 = self.infer_comp(ctx, e, where)
        self._want(got, want, e, where)
        return e2

    # -- programs -----------------------------------------------------------

    def check_def(self, ctx, d: A.Def):
        if isinstance(d.type, A.CompType):
            self.ctype(d.type, d.span)
            return replace(d, term=self.check_comp(ctx, d.term, d.type, d.span)), A.U(d.type)
        self.vtype(d.type, d.span)
        return replace(d, term=self.check_value(ctx, d.term, d.type, d.span)), d.type

    def check_program(self, prog: A.Program) -> A.Program:
        ctx: dict = {}
        out = []
        for d in prog.defs:
            if d.name in ctx:
                self._fail(MISMATCH, f"duplicate definition '{d.name}'", where=d.span)
            d2, t = self.check_def(ctx, d)
            out.append(d2)
            ctx = {**ctx, d.name: t}
        if not isinstance(prog.entry.type, A.CompType):
            self._fail(MISMATCH, f"entry '{prog.entry.name}' must have a computation type", where=prog.entry.span)
        entry = prog.entry.type
        while isinstance(entry, A.Arrow):
            entry = entry.body
        if not isinstance(entry, A.F):
            self._fail(MISMATCH, f"entry '{prog.entry.name}' must return F A after its arguments", where=prog.entry.span)
        return A.Program(tuple(out), monoid=self.monoid)


def check_value(ctx, v, t, monoid: Monoid = NAT) -> None:
    Checker(monoid).check_value(dict(ctx), v, t)


def check_comp(ctx, e, t, monoid: Monoid = NAT) -> None:
    Checker(monoid).check_comp(dict(ctx), e, t)


def infer_comp(ctx, e, monoid: Monoid = NAT) -> A.CompType:
    return Checker(monoid).infer_comp(dict(ctx), e)[0]


def elaborate_comp(ctx, e, t, monoid: Monoid = NAT) -> A.CompTerm:
    return Checker(monoid).check_comp(dict(ctx), e, t)


def check_program(prog: A.Program, monoid: Monoid = NAT) -> A.Program:
    return Checker(monoid).check_program(prog)
