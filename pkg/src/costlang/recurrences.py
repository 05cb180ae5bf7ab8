"""Cost-free recurrences and closed forms used as clocks and bounds."""

from __future__ import annotations

from .cost import MAX_COST, CostOverflow

_FIB = [0, 1]


def fib(n: int) -> int:
    if n < 0:
        raise ValueError("fib of a negative number")
    while len(_FIB) <= n:
        nxt = _FIB[-1] + _FIB[-2]
        if nxt > MAX_COST:
            raise CostOverflow(f"fib({len(_FIB)}) exceeds 64 bits")
        _FIB.append(nxt)
    return _FIB[n]


def fib_inv(x: int) -> int:
    """Largest i with fib(i) <= x.

    Fib repeats the value 1 at indices 1 and 2, so fib_inv(1) is 2. For
    x = 0 the answer is 0.
    """
    if x < 0:
        raise ValueError("fib_inv of a negative number")
    if x == 0:
        return 0
    # fib is strictly increasing from index 2 on
    i = 2
    while fib(i + 1) <= x:
        i += 1
    return i


def ceil_log2(n: int) -> int:
    """Least k with 2**k >= n; ceil_log2(0) is 0 by convention."""
    if n < 0:
        raise ValueError("ceil_log2 of a negative number")
    if n <= 1:
        return 0
    return (n - 1).bit_length()


def gcd_depth(x: int, y: int) -> int:
    """Number of mod operations Euclid's algorithm performs on (x, y)."""
    depth = 0
    while y != 0:
        x, y = y, x % y
        depth += 1
    return depth
