"""Cost monoids.

Two instances are provided: :class:`NatCost`, the additive naturals, and
:class:`ParCost`, work/span pairs where sequential composition adds both
components and parallel composition adds work and takes the max of span.

Carriers are unsigned 64-bit naturals. Arithmetic is checked: a result that
does not fit raises :class:`CostOverflow` instead of wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

MAX_COST = 2**64 - 1


class CostOverflow(ArithmeticError):
    pass


def _checked(n: int) -> int:
    if n > MAX_COST:
        raise CostOverflow(f"cost component {n} exceeds {MAX_COST}")
    return n


def _natural(n, what: str) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{what} must be an int, got {n!r}")
    if n < 0:
        raise ValueError(f"{what} must be non-negative, got {n}")
    return _checked(n)


@dataclass(frozen=True, slots=True)
class NatCost:
    value: int = 0

    def __post_init__(self):
        _natural(self.value, "NatCost value")

    def seq(self, other: NatCost) -> NatCost:
        if type(other) is not NatCost:
            raise TypeError(f"cannot combine NatCost with {type(other).__name__}")
        return NatCost(_checked(self.value + other.value))

    # Degenerate sequentialization: the additive monoid has no notion of
    # parallelism, so sequential programs run unchanged.
    par = seq

    def leq(self, other: NatCost) -> bool:
        if type(other) is not NatCost:
            raise TypeError(f"cannot compare NatCost with {type(other).__name__}")
        return self.value <= other.value

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True, slots=True)
class ParCost:
    work: int = 0
    span: int = 0

    def __post_init__(self):
        _natural(self.work, "work")
        _natural(self.span, "span")

    def seq(self, other: ParCost) -> ParCost:
        if type(other) is not ParCost:
            raise TypeError(f"cannot combine ParCost with {type(other).__name__}")
        return ParCost(_checked(self.work + other.work), _checked(self.span + other.span))

    def par(self, other: ParCost) -> ParCost:
        if type(other) is not ParCost:
            raise TypeError(f"cannot combine ParCost with {type(other).__name__}")
        return ParCost(_checked(self.work + other.work), max(self.span, other.span))

    def leq(self, other: ParCost) -> bool:
        """Componentwise order; incomparable pairs give False."""
        if type(other) is not ParCost:
            raise TypeError(f"cannot compare ParCost with {type(other).__name__}")
        return self.work <= other.work and self.span <= other.span

    def is_zero(self) -> bool:
        return self.work == 0 and self.span == 0

    def __str__(self):
        return f"({self.work}, {self.span})"


Cost = Union[NatCost, ParCost]


@dataclass(frozen=True)
class Monoid:
    """Descriptor for one cost monoid instance."""

    name: str
    cost_type: type

    def zero(self) -> Cost:
        return self.cost_type()

    def unit(self) -> Cost:
        """The cost of one abstract operation: 1, or (1, 1)."""
        if self.cost_type is NatCost:
            return NatCost(1)
        return ParCost(1, 1)

    def of(self, *components: int) -> Cost:
        return self.cost_type(*components)

    def owns(self, c) -> bool:
        return type(c) is self.cost_type

    def from_json(self, obj) -> Cost:
        if self.cost_type is NatCost:
            return NatCost(obj)
        work, span = obj
        return ParCost(work, span)

    def __str__(self):
        return self.name


NAT = Monoid("nat", NatCost)
PAR = Monoid("par", ParCost)
MONOIDS = {"nat": NAT, "par": PAR}


def monoid_of(c: Cost) -> Monoid:
    if type(c) is NatCost:
        return NAT
    if type(c) is ParCost:
        return PAR
    raise TypeError(f"not a cost: {c!r}")


def zero(monoid: Monoid = NAT) -> Cost:
    return monoid.zero()


def seq(a: Cost, b: Cost) -> Cost:
    return a.seq(b)


def par(a: Cost, b: Cost) -> Cost:
    return a.par(b)


def leq(a: Cost, b: Cost) -> bool:
    return a.leq(b)


def to_json(c: Cost):
    if type(c) is NatCost:
        return c.value
    return [c.work, c.span]


def components(c: Cost) -> tuple[int, ...]:
    if type(c) is NatCost:
        return (c.value,)
    return (c.work, c.span)
