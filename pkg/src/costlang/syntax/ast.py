"""Abstract syntax for the polarized core language.

Value types and computation types are disjoint class hierarchies, and so are
value terms and computation terms. Every node carries an optional source span
that does not take part in equality, so a parsed program compares equal to
the same program built by hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..cost import Cost


@dataclass(frozen=True, slots=True)
class Span:
    line: int
    col: int
    end_line: int = 0
    end_col: int = 0

    def __str__(self):
        return f"{self.line}:{self.col}"


def _span():
    return field(default=None, compare=False, repr=False)


# -- types ------------------------------------------------------------------


class ValueType:
    __slots__ = ()


class CompType:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class NatT(ValueType):
    def __str__(self):
        return "nat"


@dataclass(frozen=True, slots=True)
class UnitT(ValueType):
    def __str__(self):
        return "unit"


@dataclass(frozen=True, slots=True)
class BoolT(ValueType):
    def __str__(self):
        return "bool"


@dataclass(frozen=True, slots=True)
class U(ValueType):
    comp: CompType

    def __str__(self):
        return f"(U {self.comp})"


@dataclass(frozen=True, slots=True)
class SumT(ValueType):
    left: ValueType
    right: ValueType

    def __str__(self):
        return f"(sum {self.left} {self.right})"


@dataclass(frozen=True, slots=True)
class ProdT(ValueType):
    left: ValueType
    right: ValueType

    def __str__(self):
        return f"(prod {self.left} {self.right})"


@dataclass(frozen=True, slots=True)
class ListT(ValueType):
    """Lists whose cons destruction charges ``cost``."""

    cost: Cost
    elem: ValueType

    def __str__(self):
        from .printer import format_cost

        return f"(list {format_cost(self.cost)} {self.elem})"


@dataclass(frozen=True, slots=True)
class F(CompType):
    result: ValueType

    def __str__(self):
        return f"(F {self.result})"


@dataclass(frozen=True, slots=True)
class Arrow(CompType):
    arg: ValueType
    body: CompType

    def __str__(self):
        return f"(-> {self.arg} {self.body})"


@dataclass(frozen=True, slots=True)
class PairCT(CompType):
    """Value/computation pairs (the nondependent positive-negative sum)."""

    left: ValueType
    right: CompType

    def __str__(self):
        return f"(pairC {self.left} {self.right})"


NAT_T = NatT()
UNIT_T = UnitT()
BOOL_T = BoolT()

Type = Union[ValueType, CompType]


# -- terms ------------------------------------------------------------------


class ValueTerm:
    __slots__ = ()


class CompTerm:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(ValueTerm):
    name: str
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Thunk(ValueTerm):
    comp: CompTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Zero(ValueTerm):
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Suc(ValueTerm):
    pred: ValueTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Triv(ValueTerm):
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Inl(ValueTerm):
    value: ValueTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Inr(ValueTerm):
    value: ValueTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Pair(ValueTerm):
    left: ValueTerm
    right: ValueTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Nil(ValueTerm):
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Cons(ValueTerm):
    head: ValueTerm
    tail: ValueTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class TrueV(ValueTerm):
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class FalseV(ValueTerm):
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Meta(ValueTerm):
    """Call of a registered cost-free host primitive."""

    name: str
    args: tuple = ()
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Lit(ValueTerm):
    """An already-evaluated runtime value. Produced by the machine only."""

    value: object
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Ret(CompTerm):
    value: ValueTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Bind(CompTerm):
    comp: CompTerm
    var: str
    body: CompTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Force(CompTerm):
    value: ValueTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Lam(CompTerm):
    var: str
    body: CompTerm
    ann: Optional[ValueType] = None
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Ap(CompTerm):
    fn: CompTerm
    arg: ValueTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Step(CompTerm):
    """Charge ``cost`` (a literal, or a :class:`Meta` call), then run ``body``."""

    cost: object
    body: CompTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class RecNat(CompTerm):
    scrut: ValueTerm
    zero: CompTerm
    pred: str
    rec: str
    suc: CompTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class RecList(CompTerm):
    scrut: ValueTerm
    nil: CompTerm
    head: str
    tail: str
    rec: str
    cons: CompTerm
    # Filled in by the checker from the scrutinee's list type.
    charge: Optional[Cost] = None
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Case(CompTerm):
    scrut: ValueTerm
    left_var: str
    left: CompTerm
    right_var: str
    right: CompTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Split(CompTerm):
    """Destruct a value pair, or run a thunked value/computation pair."""

    scrut: ValueTerm
    left_var: str
    right_var: str
    body: CompTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class Par(CompTerm):
    left: CompTerm
    right: CompTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class PairC(CompTerm):
    value: ValueTerm
    comp: CompTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True, slots=True)
class If(CompTerm):
    cond: ValueTerm
    then: CompTerm
    orelse: CompTerm
    span: Optional[Span] = _span()


Term = Union[ValueTerm, CompTerm]


@dataclass(frozen=True, slots=True)
class Def:
    name: str
    type: Type
    term: Term
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Program:
    defs: tuple
    # Set by the checker; None on freshly parsed programs.
    monoid: object = None

    @property
    def entry(self) -> Def:
        if not self.defs:
            raise ValueError("empty program")
        return self.defs[-1]

    def lookup(self, name: str) -> Def:
        for d in self.defs:
            if d.name == name:
                return d
        raise KeyError(name)

    @property
    def name(self) -> str:
        return self.entry.name

    def arg_types(self) -> list[ValueType]:
        t = self.entry.type
        out = []
        while isinstance(t, Arrow):
            out.append(t.arg)
            t = t.body
        return out

    def result_type(self) -> ValueType:
        t = self.entry.type
        while isinstance(t, Arrow):
            t = t.body
        if not isinstance(t, F):
            raise ValueError(f"entry {self.name} does not return F A: {t}")
        return t.result
