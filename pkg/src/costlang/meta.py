"""Registry of cost-free host primitives reachable through ``(meta name args...)``.

A primitive runs in zero cost and zero machine transitions. Clocks, recursion
depths and other analysis helpers live here so that programs can
use them without paying for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .syntax import ast as A
from . import recurrences
from .values import NIL, vlength


class MetaTypeError(Exception):
    """Raised by a signature function when argument types do not fit."""


@dataclass(frozen=True)
class Primitive:
    name: str
    # Maps inferred argument types to the result type, or raises MetaTypeError.
    signature: Callable[[list], object]
    fn: Callable
    # Cost primitives may only appear as the amount of a ``step``.
    returns_cost: bool = False


REGISTRY: dict[str, Primitive] = {}

COST = object()  # result marker for cost-valued primitives


def register(name, signature, fn, returns_cost=False):
    REGISTRY[name] = Primitive(name, signature, fn, returns_cost)
    return REGISTRY[name]


def lookup(name: str) -> Primitive:
    return REGISTRY[name]


def fixed(arg_types, result):
    """Signature for a monomorphic primitive."""

    def sig(types):
        if list(types) != list(arg_types):
            want = " ".join(map(str, arg_types)) or "no arguments"
            got = " ".join(map(str, types)) or "no arguments"
            raise MetaTypeError(f"expects {want}, got {got}")
        return result

    return sig


def _any_list(result):
    def sig(types):
        if len(types) != 1 or not isinstance(types[0], A.ListT):
            raise MetaTypeError(f"expects one list argument, got {' '.join(map(str, types))}")
        return result

    return sig


def _mod(x, y):
    if y == 0:
        raise ZeroDivisionError("mod by zero")
    return x % y


NN = [A.NAT_T, A.NAT_T]

register("mod", fixed(NN, A.NAT_T), _mod)
register("le", fixed(NN, A.BOOL_T), lambda x, y: x <= y)
register("gcd-depth", fixed(NN, A.NAT_T), recurrences.gcd_depth)
register("clog2", fixed([A.NAT_T], A.NAT_T), recurrences.ceil_log2)
register("half", fixed([A.NAT_T], A.NAT_T), lambda n: n // 2)
register("length", _any_list(A.NAT_T), vlength)
register("is-nil", _any_list(A.BOOL_T), lambda v: v is NIL)
