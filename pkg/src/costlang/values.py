"""Runtime values produced by the machine.

Naturals are Python ints, booleans are Python bools, the unit value is the
empty tuple and value pairs are 2-tuples. Sums, lists and thunks get small
dedicated classes.
"""

from __future__ import annotations

from .syntax import ast as A

TRIV = ()


class VInl:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __eq__(self, other):
        return type(other) is VInl and self.value == other.value

    def __hash__(self):
        return hash(("inl", self.value))

    def __repr__(self):
        return f"VInl({self.value!r})"


class VInr:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __eq__(self, other):
        return type(other) is VInr and self.value == other.value

    def __hash__(self):
        return hash(("inr", self.value))

    def __repr__(self):
        return f"VInr({self.value!r})"


class VNil:
    __slots__ = ()

    def __iter__(self):
        return iter(())

    def __repr__(self):
        return "NIL"


NIL = VNil()


class VCons:
    __slots__ = ("head", "tail")

    def __init__(self, head, tail):
        self.head = head
        self.tail = tail

    def __iter__(self):
        node = self
        while node is not NIL:
            yield node.head
            node = node.tail

    def __eq__(self, other):
        a, b = self, other
        while type(a) is VCons and type(b) is VCons:
            if a.head != b.head:
                return False
            a, b = a.tail, b.tail
        return a is b

    def __hash__(self):
        return hash(tuple(self))

    def __repr__(self):
        return f"vlist({list(self)!r})"


class Closure:
    """A thunk: a computation paired with the environment it closes over."""

    __slots__ = ("comp", "env")

    def __init__(self, comp, env):
        self.comp = comp
        self.env = env

    def __repr__(self):
        return f"Closure({type(self.comp).__name__})"


def vlist(items) -> VCons | VNil:
    out = NIL
    if not isinstance(items, (list, tuple)):
        items = list(items)
    for x in reversed(items):
        out = VCons(x, out)
    return out


def vlength(v) -> int:
    n = 0
    while v is not NIL:
        n += 1
        v = v.tail
    return n


def conforms(v, t: A.ValueType) -> bool:
    """Does runtime value ``v`` inhabit value type ``t``?"""
    if isinstance(t, A.NatT):
        return type(v) is int and v >= 0
    if isinstance(t, A.BoolT):
        return type(v) is bool
    if isinstance(t, A.UnitT):
        return v == TRIV and type(v) is tuple
    if isinstance(t, A.ProdT):
        return type(v) is tuple and len(v) == 2 and conforms(v[0], t.left) and conforms(v[1], t.right)
    if isinstance(t, A.SumT):
        if type(v) is VInl:
            return conforms(v.value, t.left)
        return type(v) is VInr and conforms(v.value, t.right)
    if isinstance(t, A.ListT):
        if type(t.elem) is A.NatT:
            while type(v) is VCons:
                h = v.head
                if type(h) is not int or h < 0:
                    return False
                v = v.tail
            return v is NIL
        while type(v) is VCons:
            if not conforms(v.head, t.elem):
                return False
            v = v.tail
        return v is NIL
    if isinstance(t, A.U):
        return type(v) is Closure
    return False


def to_json(v, t: A.ValueType):
    """Type-directed encoding of a runtime value as JSON-compatible data."""
    if isinstance(t, (A.NatT, A.BoolT)):
        return v
    if isinstance(t, A.UnitT):
        return None
    if isinstance(t, A.ProdT):
        return [to_json(v[0], t.left), to_json(v[1], t.right)]
    if isinstance(t, A.SumT):
        if type(v) is VInl:
            return {"inl": to_json(v.value, t.left)}
        return {"inr": to_json(v.value, t.right)}
    if isinstance(t, A.ListT):
        return [to_json(x, t.elem) for x in v]
    if isinstance(t, A.U):
        return "<thunk>"
    raise TypeError(f"cannot encode value of type {t}")


def from_json(obj, t: A.ValueType):
    """Inverse of :func:`to_json`; raises ValueError on ill-typed data."""
    if isinstance(t, A.NatT):
        if isinstance(obj, bool) or not isinstance(obj, int) or obj < 0:
            raise ValueError(f"expected a natural number, got {obj!r}")
        return obj
    if isinstance(t, A.BoolT):
        if not isinstance(obj, bool):
            raise ValueError(f"expected a boolean, got {obj!r}")
        return obj
    if isinstance(t, A.UnitT):
        if obj is not None and obj != []:
            raise ValueError(f"expected null for unit, got {obj!r}")
        return TRIV
    if isinstance(t, A.ProdT):
        if not isinstance(obj, list) or len(obj) != 2:
            raise ValueError(f"expected a 2-element array for {t}, got {obj!r}")
        return (from_json(obj[0], t.left), from_json(obj[1], t.right))
    if isinstance(t, A.SumT):
        if isinstance(obj, dict) and len(obj) == 1:
            if "inl" in obj:
                return VInl(from_json(obj["inl"], t.left))
            if "inr" in obj:
                return VInr(from_json(obj["inr"], t.right))
        raise ValueError(f"expected {{'inl': ..}} or {{'inr': ..}} for {t}, got {obj!r}")
    if isinstance(t, A.ListT):
        if not isinstance(obj, list):
            raise ValueError(f"expected an array for {t}, got {obj!r}")
        return vlist(from_json(x, t.elem) for x in obj)
    raise ValueError(f"cannot decode arguments of type {t}")
