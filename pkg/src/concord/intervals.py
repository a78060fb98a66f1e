"""Certified rational interval arithmetic and enclosures of the handful of
transcendental values the signature integrals need: sqrt, arctan, arccos
and pi.  Everything is exact Fraction arithmetic; an enclosure [lo, hi]
always contains the true real value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .rings import rat

RationalLike = Union[Fraction, int, str]


def round_down(q: Fraction, bits: int) -> Fraction:
    """Largest dyadic with denominator 2^bits that is <= q."""
    scale = 1 << bits
    return Fraction(math.floor(q * scale), scale)


def round_up(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.ceil(q * scale), scale)


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", rat(self.lo))
        object.__setattr__(self, "hi", rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(q: RationalLike) -> "RatInterval":
        q = rat(q)
        return RatInterval(q, q)

    @staticmethod
    def of(x) -> "RatInterval":
        if isinstance(x, RatInterval):
            return x
        if isinstance(x, tuple) and len(x) == 2:
            return RatInterval(rat(x[0]), rat(x[1]))
        return RatInterval.point(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, q: RationalLike) -> bool:
        q = rat(q)
        return self.lo <= q <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def overlaps(self, other: "RatInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        o = RatInterval.of(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-RatInterval.of(other))

    def __rsub__(self, other):
        return RatInterval.of(other) + (-self)

    def __mul__(self, other):
        o = RatInterval.of(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(products), max(products))

    __rmul__ = __mul__

    def inverse(self) -> "RatInterval":
        if self.contains_zero():
            raise ZeroDivisionError("interval straddles zero")
        return RatInterval(Fraction(1) / self.hi, Fraction(1) / self.lo)

    def __truediv__(self, other):
        return self * RatInterval.of(other).inverse()

    def abs(self) -> "RatInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(Fraction(0), max(-self.lo, self.hi))

    def rounded(self, bits: int) -> "RatInterval":
        """Outward dyadic rounding: keeps the enclosure valid, caps bit growth."""
        return RatInterval(round_down(self.lo, bits), round_up(self.hi, bits))

    def __str__(self):
        if self.is_point:
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"


def simplest_rational(lo: RationalLike, hi: RationalLike) -> Fraction:
    """The rational with smallest denominator (smallest magnitude breaking
    ties) in the closed interval [lo, hi], by Stern-Brocot descent."""
    lo, hi = rat(lo), rat(hi)
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational(-hi, -lo)
    floor_lo = lo.numerator // lo.denominator
    if lo == floor_lo or floor_lo + 1 <= hi:
        return Fraction(floor_lo if lo == floor_lo else floor_lo + 1)
    rest = simplest_rational(1 / (hi - floor_lo), 1 / (lo - floor_lo))
    return floor_lo + 1 / rest


def sqrt_interval(q: RationalLike, bits: int = 64) -> RatInterval:
    """Enclosure of sqrt(q) for q >= 0, 2^-bits wide via integer square roots."""
    q = rat(q)
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    if q == 0:
        return RatInterval.point(0)
    num, den = q.numerator, q.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    big = num * den << (2 * bits)
    r = math.isqrt(big)
    scale = den << bits
    lo = Fraction(r, scale)
    hi = Fraction(r + 1, scale) if r * r != big else lo
    return RatInterval(lo, hi)


def _atan_series(u: RatInterval, bits: int) -> RatInterval:
    """Alternating Taylor series for arctan on [0, 3/4] with a tail bound."""
    terms = 0
    tail_num = u.hi ** 3
    # need u.hi^(2K+3)/(2K+3) <= 2^-(bits+2)
    bound = Fraction(1, 1 << (bits + 2))
    k = 0
    while tail_num / (2 * k + 3) > bound:
        k += 1
        tail_num *= u.hi * u.hi
    terms = k + 1

    def partial(x: Fraction) -> Fraction:
        acc = Fraction(0)
        p = x
        s = 1
        for j in range(terms):
            acc += s * p / (2 * j + 1)
            p *= x * x
            s = -s
        return acc

    tail = tail_num / (2 * terms + 1)
    return RatInterval(partial(u.lo) - tail, partial(u.hi) + tail)


def atan_interval(y, bits: int = 64) -> RatInterval:
    """Enclosure of arctan(y) for a rational or interval argument y >= 0 allowed
    to be any sign; width shrinks like 2^-bits."""
    y = RatInterval.of(y)
    if y.hi < 0:
        return -atan_interval(-y, bits)
    if y.lo < 0:
        neg = atan_interval(RatInterval(0, -y.lo), bits)
        pos = atan_interval(RatInterval(0, y.hi), bits)
        return RatInterval(-neg.hi, pos.hi)
    work = bits + 8
    halvings = 0
    u = y
    while u.hi > Fraction(1, 2):
        # arctan(y) = 2 arctan(y / (1 + sqrt(1 + y^2)))
        s_lo = sqrt_interval(1 + u.lo * u.lo, work)
        s_hi = sqrt_interval(1 + u.hi * u.hi, work)
        u = RatInterval(u.lo / (1 + s_lo.hi), u.hi / (1 + s_hi.lo)).rounded(work)
        halvings += 1
        if halvings > 64:
            raise RuntimeError("arctan halving failed to converge")
    series = _atan_series(u, bits + halvings)
    out = RatInterval(series.lo * (1 << halvings), series.hi * (1 << halvings))
    return out.rounded(bits + 4)


_PI_CACHE = {}


def pi_interval(bits: int = 64) -> RatInterval:
    """Machin's formula: pi = 16 arctan(1/5) - 4 arctan(1/239)."""
    if bits not in _PI_CACHE:
        a = atan_interval(Fraction(1, 5), bits + 8)
        b = atan_interval(Fraction(1, 239), bits + 8)
        _PI_CACHE[bits] = (16 * a - 4 * b).rounded(bits + 2)
    return _PI_CACHE[bits]


def acos_interval(x: RationalLike, bits: int = 64) -> RatInterval:
    """Enclosure of arccos(x) for rational x in [-1, 1].

    Uses arccos(x) = 2 arctan(sqrt((1 - x)/(1 + x))); the endpoints are exact
    (0) and pi respectively.
    """
    x = rat(x)
    if not (-1 <= x <= 1):
        raise ValueError("arccos argument outside [-1, 1]")
    if x == 1:
        return RatInterval.point(0)
    if x == -1:
        return pi_interval(bits)
    y = sqrt_interval((1 - x) / (1 + x), bits + 8)
    a = atan_interval(y, bits + 2)
    return RatInterval(2 * a.lo, 2 * a.hi).rounded(bits)
