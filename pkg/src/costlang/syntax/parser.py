"""Sort-directed parser from s-expressions to :mod:`ast` nodes.

The parser always knows whether it expects a value or a computation, which
is how ``(pair v w)`` (a value pair) and ``(pair v e)`` (a value/computation
pair) are told apart.
"""

from __future__ import annotations

from ..cost import NatCost, ParCost
from . import ast as A
from .sexpr import Atom, ParseError, SList, read_all, read_one

COMP_FORMS = {
    "lam", "ap", "ret", "bind", "force", "step", "rec-nat", "rec-list",
    "case", "split", "par", "if",
}
VALUE_FORMS = {"thunk", "suc", "inl", "inr", "cons", "meta"}
VALUE_ATOMS = {"zero", "triv", "nil", "true", "false"}
KEYWORDS = COMP_FORMS | VALUE_FORMS | VALUE_ATOMS | {"pair", "def"}
TYPE_WORDS = {"nat", "unit", "bool", "U", "F", "->", "sum", "prod", "list", "pairC"}


def _err(node, message):
    return ParseError(node.span.line, node.span.col, message)


def _expect_list(node, what):
    if not isinstance(node, SList):
        raise _err(node, f"expected {what}")
    return node.items


def _arity(node, n, usage):
    if len(node.items) != n:
        raise _err(node, f"malformed form, expected {usage}")


def _ident(node):
    if not isinstance(node, Atom):
        raise _err(node, "expected an identifier")
    name = node.text
    if name in KEYWORDS or name.isdigit():
        raise _err(node, f"'{name}' cannot be used as a variable name")
    return name


def _binders(node, count, usage):
    items = _expect_list(node, f"binder list {usage}")
    if len(items) != count:
        raise _err(node, f"expected {count} binder(s) {usage}")
    return [_ident(b) for b in items]


def _natural(node):
    if isinstance(node, Atom) and node.text.isdigit():
        return int(node.text)
    raise _err(node, "expected a decimal natural number")


# -- costs and types ----------------------------------------------------------


def parse_cost(node):
    if isinstance(node, Atom):
        if not node.text.isdigit():
            raise _err(node, f"bad cost literal '{node.text}'")
        return NatCost(int(node.text))
    items = node.items
    if items and isinstance(items[0], Atom) and items[0].text == "meta":
        return parse_value(node)
    if len(items) != 2:
        raise _err(node, "bad cost literal, expected N or (work span)")
    return ParCost(_natural(items[0]), _natural(items[1]))


def parse_type(node):
    if isinstance(node, Atom):
        if node.text == "nat":
            return A.NAT_T
        if node.text == "unit":
            return A.UNIT_T
        if node.text == "bool":
            return A.BOOL_T
        raise _err(node, f"unknown type '{node.text}'")
    items = node.items
    if not items or not isinstance(items[0], Atom):
        raise _err(node, "expected a type")
    head = items[0].text
    if head == "U":
        _arity(node, 2, "(U X)")
        return A.U(parse_ctype(items[1]))
    if head == "F":
        _arity(node, 2, "(F A)")
        return A.F(parse_vtype(items[1]))
    if head == "->":
        if len(items) < 3:
            raise _err(node, "malformed form, expected (-> A ... X)")
        out = parse_ctype(items[-1])
        for arg in reversed(items[1:-1]):
            out = A.Arrow(parse_vtype(arg), out)
        return out
    if head in ("sum", "prod"):
        _arity(node, 3, f"({head} A B)")
        cls = A.SumT if head == "sum" else A.ProdT
        return cls(parse_vtype(items[1]), parse_vtype(items[2]))
    if head == "list":
        _arity(node, 3, "(list c A)")
        return A.ListT(parse_cost(items[1]), parse_vtype(items[2]))
    if head == "pairC":
        _arity(node, 3, "(pairC A X)")
        return A.PairCT(parse_vtype(items[1]), parse_ctype(items[2]))
    raise _err(node, f"unknown type constructor '{head}'")


def parse_vtype(node) -> A.ValueType:
    t = parse_type(node)
    if not isinstance(t, A.ValueType):
        raise _err(node, f"expected a value type, found computation type {t}")
    return t


def parse_ctype(node) -> A.CompType:
    t = parse_type(node)
    if not isinstance(t, A.CompType):
        raise _err(node, f"expected a computation type, found value type {t}")
    return t


# -- terms ----------------------------------------------------------------------


def parse_value(node) -> A.ValueTerm:
    sp = node.span
    if isinstance(node, Atom):
        text = node.text
        if text.isdigit():
            v = A.Zero(span=sp)
            for _ in range(int(text)):
                v = A.Suc(v, span=sp)
            return v
        if text == "zero":
            return A.Zero(span=sp)
        if text == "triv":
            return A.Triv(span=sp)
        if text == "nil":
            return A.Nil(span=sp)
        if text == "true":
            return A.TrueV(span=sp)
        if text == "false":
            return A.FalseV(span=sp)
        return A.Var(_ident(node), span=sp)
    items = node.items
    if not items or not isinstance(items[0], Atom):
        raise _err(node, "expected a value")
    head = items[0].text
    if head == "thunk":
        _arity(node, 2, "(thunk e)")
        return A.Thunk(parse_comp(items[1]), span=sp)
    if head in ("suc", "inl", "inr"):
        _arity(node, 2, f"({head} v)")
        cls = {"suc": A.Suc, "inl": A.Inl, "inr": A.Inr}[head]
        return cls(parse_value(items[1]), span=sp)
    if head in ("pair", "cons"):
        _arity(node, 3, f"({head} v w)")
        cls = A.Pair if head == "pair" else A.Cons
        return cls(parse_value(items[1]), parse_value(items[2]), span=sp)
    if head == "meta":
        if len(items) < 2:
            raise _err(node, "malformed form, expected (meta name v ...)")
        name = items[1]
        if not isinstance(name, Atom):
            raise _err(name, "expected a primitive name")
        return A.Meta(name.text, tuple(parse_value(a) for a in items[2:]), span=sp)
    if head in COMP_FORMS:
        raise _err(node, f"expected a value, found computation form '{head}'")
    raise _err(node, f"unknown value form '{head}'")


def _lam_binder(node):
    if isinstance(node, SList):
        if len(node.items) != 2:
            raise _err(node, "annotated binder must be (x A)")
        return _ident(node.items[0]), parse_vtype(node.items[1])
    return _ident(node), None


def parse_comp(node) -> A.CompTerm:
    sp = node.span
    if isinstance(node, Atom):
        if node.text in VALUE_ATOMS or node.text.isdigit() or node.text not in KEYWORDS:
            raise _err(node, f"expected a computation, found value '{node.text}'")
        raise _err(node, f"'{node.text}' must be applied")
    items = node.items
    if not items or not isinstance(items[0], Atom):
        raise _err(node, "expected a computation")
    head = items[0].text
    if head == "ret":
        _arity(node, 2, "(ret v)")
        return A.Ret(parse_value(items[1]), span=sp)
    if head == "bind":
        _arity(node, 4, "(bind e (x) f)")
        (x,) = _binders(items[2], 1, "in bind")
        return A.Bind(parse_comp(items[1]), x, parse_comp(items[3]), span=sp)
    if head == "force":
        _arity(node, 2, "(force v)")
        return A.Force(parse_value(items[1]), span=sp)
    if head == "lam":
        _arity(node, 3, "(lam (x ...) e)")
        binders = _expect_list(items[1], "binder list in lam")
        if not binders:
            raise _err(items[1], "lam needs at least one binder")
        body = parse_comp(items[2])
        for b in reversed(binders):
            x, ann = _lam_binder(b)
            body = A.Lam(x, body, ann, span=sp)
        return body
    if head == "ap":
        if len(items) < 3:
            raise _err(node, "malformed form, expected (ap e v ...)")
        out = parse_comp(items[1])
        for arg in items[2:]:
            out = A.Ap(out, parse_value(arg), span=sp)
        return out
    if head == "step":
        _arity(node, 3, "(step c e)")
        return A.Step(parse_cost(items[1]), parse_comp(items[2]), span=sp)
    if head == "rec-nat":
        _arity(node, 5, "(rec-nat v e0 (n r) e1)")
        n, r = _binders(items[3], 2, "in rec-nat")
        return A.RecNat(parse_value(items[1]), parse_comp(items[2]), n, r, parse_comp(items[4]), span=sp)
    if head == "rec-list":
        _arity(node, 5, "(rec-list v e0 (a l r) e1)")
        a, l, r = _binders(items[3], 3, "in rec-list")
        return A.RecList(parse_value(items[1]), parse_comp(items[2]), a, l, r, parse_comp(items[4]), span=sp)
    if head == "case":
        _arity(node, 6, "(case v (a) e0 (b) e1)")
        (a,) = _binders(items[2], 1, "in case")
        (b,) = _binders(items[4], 1, "in case")
        return A.Case(parse_value(items[1]), a, parse_comp(items[3]), b, parse_comp(items[5]), span=sp)
    if head == "split":
        _arity(node, 4, "(split v (x y) e)")
        x, y = _binders(items[2], 2, "in split")
        return A.Split(parse_value(items[1]), x, y, parse_comp(items[3]), span=sp)
    if head == "par":
        _arity(node, 3, "(par e1 e2)")
        return A.Par(parse_comp(items[1]), parse_comp(items[2]), span=sp)
    if head == "pair":
        _arity(node, 3, "(pair v e)")
        return A.PairC(parse_value(items[1]), parse_comp(items[2]), span=sp)
    if head == "if":
        _arity(node, 4, "(if v e0 e1)")
        return A.If(parse_value(items[1]), parse_comp(items[2]), parse_comp(items[3]), span=sp)
    if head in VALUE_FORMS:
        raise _err(node, f"expected a computation, found value form '{head}'")
    raise _err(node, f"unknown computation form '{head}'")


def parse_def(node) -> A.Def:
    items = _expect_list(node, "(def name type term)")
    if not items or not isinstance(items[0], Atom) or items[0].text != "def":
        raise _err(node, "expected (def name type term)")
    _arity(node, 4, "(def name type term)")
    name = _ident(items[1])
    t = parse_type(items[2])
    term = parse_comp(items[3]) if isinstance(t, A.CompType) else parse_value(items[3])
    return A.Def(name, t, term, span=node.span)


def parse(text: str) -> A.Program:
    """Parse a whole source file of ``(def ...)`` forms."""
    defs = tuple(parse_def(f) for f in read_all(text))
    if not defs:
        raise ParseError(1, 1, "no definitions")
    return A.Program(defs)


def parse_comp_text(text: str) -> A.CompTerm:
    return parse_comp(read_one(text))


def parse_value_text(text: str) -> A.ValueTerm:
    return parse_value(read_one(text))


def parse_type_text(text: str):
    return parse_type(read_one(text))
