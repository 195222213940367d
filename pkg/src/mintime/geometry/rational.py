"""Exact rational vectors, extended values and certified square-root intervals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

INF = math.inf

Rat = Fraction
Vec = tuple  # tuple[Fraction, ...]
ExtRat = Union[Fraction, float]  # a Fraction or +inf


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


class UnsupportedDimension(ValueError):
    """Requested set enumeration is only available in low dimension."""


def rat(value) -> Fraction:
    """Parse an int, Fraction, decimal string or ``"p/q"`` string exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite float {value!r} is not rational")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def vec(values: Iterable) -> tuple:
    return tuple(rat(v) for v in values)


def zeros(n: int) -> tuple:
    return (Fraction(0),) * n


def unit(n: int, i: int, sign: int = 1) -> tuple:
    return tuple(Fraction(sign if j == i else 0) for j in range(n))


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise DimensionError(f"dot of lengths {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> tuple:
    if len(a) != len(b):
        raise DimensionError(f"add of lengths {len(a)} and {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    if len(a) != len(b):
        raise DimensionError(f"sub of lengths {len(a)} and {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def scale(t, a: Sequence) -> tuple:
    return tuple(t * x for x in a)


def neg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def norm_sq(a: Sequence) -> Fraction:
    return dot(a, a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def primitive(a: Sequence) -> tuple:
    """Positive multiple of ``a`` with coprime integer entries (direction key)."""
    if is_zero(a):
        return tuple(Fraction(0) for _ in a)
    lcm = 1
    for x in a:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in a]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    return tuple(Fraction(v // g) for v in ints)


def fmt(x) -> str:
    """Lossless text form: ``"p/q"``, ``"p"`` or ``"inf"``."""
    if isinstance(x, float):
        if x == INF:
            return "inf"
        raise ValueError(f"only +inf may be stored as float, got {x!r}")
    if isinstance(x, Interval):
        return x.fmt()
    x = rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_ext(text) -> ExtRat:
    if isinstance(text, str) and text.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return rat(text)


def fmt_vec(a: Sequence) -> list:
    return [fmt(x) for x in a]


# ---------------------------------------------------------------------------
# certified intervals


@dataclass(frozen=True)
class Interval:
    """Closed rational interval ``[lo, hi]`` certified to contain a real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __mul__(self, t):
        t = rat(t)
        if t >= 0:
            return Interval(self.lo * t, self.hi * t)
        return Interval(self.hi * t, self.lo * t)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        t = rat(other)
        return Interval(self.lo + t, self.hi + t)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __truediv__(self, t):
        t = rat(t)
        if t == 0:
            raise ZeroDivisionError("interval division by zero")
        return self * (1 / t)

    def __float__(self) -> float:
        return float(self.mid)

    def fmt(self) -> str:
        return f"[{fmt(self.lo)}, {fmt(self.hi)}]"


def exact_or_interval(lo: Fraction, hi: Fraction):
    return lo if lo == hi else Interval(lo, hi)


def sqrt_exact(q: Fraction):
    """Exact square root of a rational if it is a perfect square, else None."""
    q = rat(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_interval(q, bits: int = 64):
    """Square root of ``q``: a Fraction when exact, else an ``Interval`` of width <= 2**-bits * (1+sqrt q)."""
    q = rat(q)
    root = sqrt_exact(q)
    if root is not None:
        return root
    n, d = q.numerator, q.denominator
    # sqrt(n/d) = sqrt(n*d)/d; scale to keep `bits` fractional bits
    s = 1 << bits
    m = n * d * s * s
    r = math.isqrt(m)
    lo = Fraction(r, d * s)
    hi = Fraction(r + 1, d * s)
    return Interval(lo, hi)


def lower(value) -> Fraction:
    return value.lo if isinstance(value, Interval) else value


def upper(value) -> Fraction:
    return value.hi if isinstance(value, Interval) else value


def to_float(value) -> float:
    if isinstance(value, Interval):
        return float(value.mid)
    return float(value)
