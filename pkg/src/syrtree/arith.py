"""Exact arithmetic kernel for 3n+1 sequences.

All functions work on plain Python ints, so every result is exact at any
magnitude. The column maps ``lift``/``unlift`` and the index map
``index_lift`` use cleared-denominator closed forms; divisibility by 3 is
asserted at each use, never assumed.
"""

DEFAULT_MAX_STEPS = 100_000


class NotReducible(ValueError):
    """Raised by unlift() when (m-1)/4 would leave the positive integers."""


def _require_positive(n):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"expected a positive integer, got {n!r}")


def _require_odd(n):
    _require_positive(n)
    if n & 1 == 0:
        raise ValueError(f"expected an odd integer, got {n}")


def v2(n: int) -> int:
    """2-adic valuation: the largest d with 2**d dividing n."""
    _require_positive(n)
    return (n & -n).bit_length() - 1


def odd_part(n: int) -> int:
    """n with all factors of 2 removed."""
    _require_positive(n)
    return n >> ((n & -n).bit_length() - 1)


def syr(n: int) -> int:
    """One accelerated step: the odd part of 3n+1 (n odd)."""
    _require_odd(n)
    m = 3 * n + 1
    return m >> ((m & -m).bit_length() - 1)


def col_step(n: int) -> int:
    """One plain step: 3n+1 for odd n, n/2 for even n."""
    _require_positive(n)
    return 3 * n + 1 if n & 1 else n >> 1


def lift(m: int, p: int = 1) -> int:
    """Apply m -> 4m+1 p times, via ((3m+1)*4**p - 1)/3.

    lift preserves the Syracuse image: syr(lift(m, p)) == syr(m) for odd m.
    """
    if m < 0 or p < 0:
        raise ValueError("lift needs m >= 0 and p >= 0")
    num = (3 * m + 1) * (1 << (2 * p)) - 1
    assert num % 3 == 0
    return num // 3


def unlift(m: int, p: int = 1) -> int:
    """Apply m -> (m-1)/4 p times, checking divisibility at each step.

    Raises NotReducible when an intermediate is not of the form 4k+1 with
    k >= 1 (the quotient must stay a positive integer).
    """
    _require_positive(m)
    if p < 0:
        raise ValueError("p must be >= 0")
    for _ in range(p):
        if m % 4 != 1 or m == 1:
            raise NotReducible(f"{m} is not 4k+1 with k >= 1")
        m = (m - 1) // 4
    return m


def index_lift(t: int, p: int = 1) -> int:
    """Apply t -> 4t+2 p times, via ((3t+2)*4**p - 2)/3.

    Acts on the index t of 8t+5: the Syracuse image of 8t+5 is invariant
    under this map.
    """
    if t < 0 or p < 0:
        raise ValueError("index_lift needs t >= 0 and p >= 0")
    num = (3 * t + 2) * (1 << (2 * p)) - 2
    assert num % 3 == 0
    return num // 3


def syr_class(a: int, t: int) -> int:
    """Syracuse image of the residue-class member 8t+a, a in {1,3,5,7}."""
    if a not in (1, 3, 5, 7):
        raise ValueError(f"class must be 1, 3, 5 or 7, got {a}")
    if t < 0:
        raise ValueError("t must be >= 0")
    return syr(8 * t + a)
