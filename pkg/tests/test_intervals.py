"""Outward-rounded rational interval arithmetic and the certified
enclosures of pi, atan and arccos."""

import math
import random
from fractions import Fraction

import pytest

from concord.intervals import (
    RatInterval,
    acos_interval,
    atan_interval,
    pi_interval,
    simplest_rational,
    sqrt_interval,
)


def test_interval_basics():
    a = RatInterval(Fraction(1, 3), Fraction(1, 2))
    assert a.width == Fraction(1, 6)
    assert not a.is_point
    assert a.contains(Fraction(2, 5))
    assert not a.contains_zero()
    assert a.excludes_zero()
    p = RatInterval.point(Fraction(-2))
    assert p.is_point and p.midpoint() == -2
    with pytest.raises(ValueError):
        RatInterval(Fraction(1), Fraction(0))


def test_interval_arithmetic_encloses_true_values():
    rng = random.Random(3)
    for _ in range(150):
        a_mid = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        b_mid = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        ra = Fraction(rng.randint(0, 3), 7)
        rb = Fraction(rng.randint(0, 3), 7)
        A = RatInterval(a_mid - ra, a_mid + ra)
        B = RatInterval(b_mid - rb, b_mid + rb)
        # pick true points inside and check closure under the operations
        x = a_mid + ra * Fraction(rng.randint(-7, 7), 7)
        y = b_mid + rb * Fraction(rng.randint(-7, 7), 7)
        assert (A + B).contains(x + y)
        assert (A - B).contains(x - y)
        assert (A * B).contains(x * y)
        assert A.abs().contains(abs(x))
        if B.excludes_zero():
            assert (A / B).contains(x / y)
            assert B.inverse().contains(1 / y)


def test_interval_division_by_zero_straddling_raises():
    with pytest.raises(ZeroDivisionError):
        RatInterval(Fraction(1), Fraction(2)) / RatInterval(Fraction(-1), Fraction(1))


def test_pi_interval_tightens():
    last_width = None
    for bits in (16, 32, 64, 128):
        p = pi_interval(bits)
        # the certified enclosure brackets the closest double to pi
        assert float(p.lo) <= math.pi <= float(p.hi)
        assert p.width <= Fraction(1, 2 ** (bits - 8))
        if last_width is not None:
            assert p.width < last_width
        last_width = p.width
    assert abs(float(pi_interval(64).midpoint()) - math.pi) < 1e-15
    assert pi_interval(64).width < Fraction(1, 2 ** 60)


def test_atan_interval_known_points():
    p = pi_interval(80)
    quarter_pi = atan_interval(Fraction(1), 80)
    assert quarter_pi.lo * 4 <= p.hi and p.lo <= quarter_pi.hi * 4
    assert atan_interval(Fraction(0), 64) == RatInterval.point(Fraction(0))


def test_atan_interval_vs_math():
    rng = random.Random(5)
    for _ in range(100):
        x = Fraction(rng.randint(-500, 500), rng.randint(1, 40))
        iv = atan_interval(x, 64)
        true = math.atan(float(x))
        assert float(iv.lo) - 1e-12 <= true <= float(iv.hi) + 1e-12
        assert iv.width < Fraction(1, 2 ** 50)


def test_acos_interval_exact_endpoints_and_vs_math():
    assert acos_interval(Fraction(1), 64) == RatInterval.point(Fraction(0))
    full = acos_interval(Fraction(-1), 64)
    assert float(full.lo) <= math.pi <= float(full.hi)
    rng = random.Random(9)
    for _ in range(100):
        x = Fraction(rng.randint(-99, 99), 100)
        iv = acos_interval(x, 64)
        true = math.acos(float(x))
        assert float(iv.lo) - 1e-12 <= true <= float(iv.hi) + 1e-12


def test_acos_interval_rejects_out_of_range():
    with pytest.raises(ValueError):
        acos_interval(Fraction(3, 2), 64)


def test_sqrt_interval():
    rng = random.Random(101)
    for _ in range(100):
        x = Fraction(rng.randint(0, 10 ** 6), rng.randint(1, 100))
        iv = sqrt_interval(x, 64)
        assert iv.lo * iv.lo <= x <= iv.hi * iv.hi
        assert iv.width <= Fraction(1, 2 ** 40) * max(1, x)
    assert sqrt_interval(Fraction(9, 4), 64) == RatInterval.point(Fraction(3, 2))


def test_simplest_rational_frozen_cases():
    assert simplest_rational(Fraction(1, 3), Fraction(1, 2)) == Fraction(1, 2)
    assert simplest_rational(Fraction(-1, 2), Fraction(1, 3)) == 0
    assert simplest_rational(Fraction(27, 10), Fraction(28, 10)) == Fraction(11, 4)
    assert simplest_rational(Fraction(-28, 10), Fraction(-27, 10)) == Fraction(-11, 4)
    assert simplest_rational(Fraction(5), Fraction(5)) == 5
    # the canonical use: a tight enclosure of -4/3 snaps to -4/3
    assert simplest_rational(Fraction(-4, 3) - Fraction(1, 10 ** 9),
                             Fraction(-4, 3) + Fraction(1, 10 ** 9)) == Fraction(-4, 3)
    with pytest.raises(ValueError):
        simplest_rational(Fraction(1), Fraction(0))


def test_simplest_rational_is_simplest():
    rng = random.Random(15)
    for _ in range(120):
        lo = Fraction(rng.randint(-400, 400), rng.randint(1, 60))
        width = Fraction(rng.randint(0, 50), rng.randint(1, 60))
        hi = lo + width
        q = simplest_rational(lo, hi)
        assert lo <= q <= hi
        # nothing with a smaller denominator fits in [lo, hi]
        for d in range(1, q.denominator):
            n_lo = math.ceil(lo * d)
            n_hi = math.floor(hi * d)
            assert n_lo > n_hi, (lo, hi, q, d)
