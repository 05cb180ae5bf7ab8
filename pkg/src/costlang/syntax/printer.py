"""Printer producing source text that reparses to the same AST."""

from __future__ import annotations

from ..cost import NatCost, ParCost
from . import ast as A

WIDTH = 88


def format_cost(c) -> str:
    if isinstance(c, NatCost):
        return str(c.value)
    if isinstance(c, ParCost):
        return f"({c.work} {c.span})"
    return render(_value(c))


def _type(t) -> object:
    if isinstance(t, A.NatT):
        return "nat"
    if isinstance(t, A.UnitT):
        return "unit"
    if isinstance(t, A.BoolT):
        return "bool"
    if isinstance(t, A.U):
        return ["U", _type(t.comp)]
    if isinstance(t, A.F):
        return ["F", _type(t.result)]
    if isinstance(t, A.Arrow):
        return ["->", _type(t.arg), _type(t.body)]
    if isinstance(t, A.SumT):
        return ["sum", _type(t.left), _type(t.right)]
    if isinstance(t, A.ProdT):
        return ["prod", _type(t.left), _type(t.right)]
    if isinstance(t, A.ListT):
        return ["list", format_cost(t.cost), _type(t.elem)]
    if isinstance(t, A.PairCT):
        return ["pairC", _type(t.left), _type(t.right)]
    raise TypeError(f"not a type: {t!r}")


def _numeral(v):
    n = 0
    while type(v) is A.Suc:
        n += 1
        v = v.pred
    return n if type(v) is A.Zero else None


def _value(v) -> object:
    t = type(v)
    if t is A.Var:
        return v.name
    if t is A.Zero:
        return "zero"
    if t is A.Suc:
        n = _numeral(v)
        return str(n) if n is not None else ["suc", _value(v.pred)]
    if t is A.Triv:
        return "triv"
    if t is A.Nil:
        return "nil"
    if t is A.TrueV:
        return "true"
    if t is A.FalseV:
        return "false"
    if t is A.Thunk:
        return ["thunk", _comp(v.comp)]
    if t is A.Inl:
        return ["inl", _value(v.value)]
    if t is A.Inr:
        return ["inr", _value(v.value)]
    if t is A.Pair:
        return ["pair", _value(v.left), _value(v.right)]
    if t is A.Cons:
        return ["cons", _value(v.head), _value(v.tail)]
    if t is A.Meta:
        return ["meta", v.name, *(_value(a) for a in v.args)]
    raise TypeError(f"cannot print value node {v!r}")


def _comp(e) -> object:
    t = type(e)
    if t is A.Ret:
        return ["ret", _value(e.value)]
    if t is A.Bind:
        return ["bind", _comp(e.comp), [e.var], _comp(e.body)]
    if t is A.Force:
        return ["force", _value(e.value)]
    if t is A.Lam:
        binder = e.var if e.ann is None else [e.var, _type(e.ann)]
        return ["lam", [binder], _comp(e.body)]
    if t is A.Ap:
        return ["ap", _comp(e.fn), _value(e.arg)]
    if t is A.Step:
        return ["step", format_cost(e.cost), _comp(e.body)]
    if t is A.RecNat:
        return ["rec-nat", _value(e.scrut), _comp(e.zero), [e.pred, e.rec], _comp(e.suc)]
    if t is A.RecList:
        return ["rec-list", _value(e.scrut), _comp(e.nil), [e.head, e.tail, e.rec], _comp(e.cons)]
    if t is A.Case:
        return ["case", _value(e.scrut), [e.left_var], _comp(e.left), [e.right_var], _comp(e.right)]
    if t is A.Split:
        return ["split", _value(e.scrut), [e.left_var, e.right_var], _comp(e.body)]
    if t is A.Par:
        return ["par", _comp(e.left), _comp(e.right)]
    if t is A.PairC:
        return ["pair", _value(e.value), _comp(e.comp)]
    if t is A.If:
        return ["if", _value(e.cond), _comp(e.then), _comp(e.orelse)]
    raise TypeError(f"cannot print computation node {e!r}")


def _flat(tree) -> str:
    if isinstance(tree, str):
        return tree
    return "(" + " ".join(_flat(t) for t in tree) + ")"


def _pretty(tree, indent: int, out: list):
    flat = _flat(tree)
    if isinstance(tree, str) or indent + len(flat) <= WIDTH:
        out.append(flat)
        return
    # keep the head and any short leading atoms/binder lists on the first line
    head = [tree[0]]
    rest = list(tree[1:])
    while rest and (isinstance(rest[0], str) or all(isinstance(x, str) for x in rest[0])) and len(rest) > 1:
        head.append(rest.pop(0))
    out.append("(" + " ".join(_flat(h) for h in head))
    pad = " " * (indent + 2)
    for child in rest:
        out.append("\n" + pad)
        _pretty(child, indent + 2, out)
    out.append(")")


def render(tree, indent: int = 0) -> str:
    out: list[str] = []
    _pretty(tree, indent, out)
    return "".join(out)


def print_type(t) -> str:
    return render(_type(t))


def print_value(v) -> str:
    return render(_value(v))


def print_comp(e) -> str:
    return render(_comp(e))


def print_def(d: A.Def) -> str:
    term = _comp(d.term) if isinstance(d.type, A.CompType) else _value(d.term)
    return render(["def", d.name, _type(d.type), term])


def print_program(p: A.Program) -> str:
    return "\n\n".join(print_def(d) for d in p.defs) + "\n"
