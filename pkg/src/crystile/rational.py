"""Exact rational scalars.

Everything that touches group logic or set geometry runs on exact
rationals; floats appear only where a square root is unavoidable
(norms, the isometry metric, rendering).  gmpy2's mpq is used when
present since it is roughly an order of magnitude faster than
fractions.Fraction; the two are drop-in compatible for our usage.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def rat(value) -> "Q":
    """Coerce ints, strings like '3' or '-5/7', and rationals to Q."""
    if isinstance(value, float):
        raise TypeError("refusing float -> rational conversion; pass a string or int")
    if isinstance(value, str):
        return Q(value.strip())
    return Q(value)


def rat_str(q) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_json(q):
    """JSON form: plain int when integral, else a 'p/q' string."""
    q = Q(q)
    if q.denominator == 1:
        return int(q.numerator)
    return rat_str(q)


def floor_rat(q) -> int:
    return math.floor(Q(q))


def ceil_rat(q) -> int:
    return math.ceil(Q(q))


def frac_part(q) -> "Q":
    """q reduced to [0, 1)."""
    q = Q(q)
    return q - floor_rat(q)


def isqrt_floor(q) -> int:
    """Largest integer m >= 0 with m*m <= q (q >= 0)."""
    q = Q(q)
    if q < 0:
        raise ValueError("negative argument")
    return math.isqrt(floor_rat(q))


def isqrt_ceil(q) -> int:
    """Smallest integer m >= 0 with m*m >= q (q >= 0)."""
    q = Q(q)
    if q < 0:
        raise ValueError("negative argument")
    c = ceil_rat(q)
    m = math.isqrt(c)
    return m if m * m >= c else m + 1


def sqrt_float(q) -> float:
    q = Q(q)
    if q < 0:
        raise ValueError("negative argument")
    # split to keep precision for large numerators/denominators
    return math.sqrt(q.numerator) / math.sqrt(q.denominator)
