"""Exact quadratic-surd arithmetic against a 256-bit floating oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ostrowski.surd import Surd, floor_sqrt_mul

from oracles import mp_value

ints = st.integers(min_value=-10**9, max_value=10**9)
small_ints = st.integers(min_value=-50, max_value=50)
radicands = st.sampled_from([2, 3, 5, 12, 13, 21, 45])
denoms = st.integers(min_value=1, max_value=1000)


def surds(a=ints, b=ints, c=denoms, d=radicands):
    return st.builds(Surd, a, b, c, d)


def test_normalization():
    s = Surd(4, -6, -8, 12)
    assert (s.a, s.b, s.c) == (-2, 3, 4)
    assert s.c > 0


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        Surd(1, 1, 0, 5)


def test_zero_radicand_collapses_to_rational():
    s = Surd(3, 7, 2, 0)
    assert s.b == 0
    assert s.sign() > 0
    assert s == Fraction(3, 2)


def test_rational_equality_across_radicands():
    assert Surd(3, 0, 2, 12) == Surd(3, 0, 2, 5) == Fraction(3, 2)
    assert Surd(1, 1, 1, 5) != Surd(1, 1, 1, 12)


def test_mixed_radicand_arithmetic_rejected():
    with pytest.raises(ValueError):
        Surd(1, 1, 1, 5) + Surd(1, 1, 1, 12)


def test_rational_operand_adopts_radicand():
    s = Surd(1, 1, 2, 12) + Fraction(1, 3)
    assert s.d == 12
    assert s == Surd(5, 3, 6, 12)


def test_floor_sqrt_mul_signs():
    assert floor_sqrt_mul(3, 2) == 4  # 3*sqrt(2) = 4.24..
    assert floor_sqrt_mul(-3, 2) == -5
    assert floor_sqrt_mul(0, 7) == 0
    assert floor_sqrt_mul(-2, 4) == -4  # perfect square: exactly -4


@given(surds())
@settings(max_examples=300, deadline=None)
def test_floor_matches_oracle(s):
    import mpmath as mp

    assert s.floor() == int(mp.floor(mp_value(s)))


@given(surds())
@settings(max_examples=300, deadline=None)
def test_float_matches_oracle(s):
    got = float(s)
    want = float(mp_value(s))
    assert got == pytest.approx(want, rel=1e-14, abs=1e-300)


@given(surds(), surds())
@settings(max_examples=200, deadline=None)
def test_ring_ops_match_oracle(s, t):
    t = Surd(t.a, t.b, t.c, s.d)  # align radicands
    for op in ("add", "sub", "mul"):
        got = {"add": s + t, "sub": s - t, "mul": s * t}[op]
        want = {
            "add": mp_value(s) + mp_value(t),
            "sub": mp_value(s) - mp_value(t),
            "mul": mp_value(s) * mp_value(t),
        }[op]
        assert float(got) == pytest.approx(float(want), rel=1e-12, abs=1e-12)


@given(surds())
@settings(max_examples=200, deadline=None)
def test_frac_in_unit_interval(s):
    f = s.frac()
    assert f.sign() >= 0
    assert (f - 1).sign() < 0
    assert f + s.floor() == s


@given(surds())
@settings(max_examples=200, deadline=None)
def test_dist_to_nearest_bounds(s):
    dist = s.dist_to_nearest()
    assert dist.sign() >= 0
    assert (dist - Fraction(1, 2)).sign() <= 0


def test_inverse_and_pow():
    s = Surd(1, 1, 2, 5)  # golden ratio
    assert s * s.inverse() == Surd(1, 0, 1, 5)
    assert s**5 == s * s * s * s * s
    assert s**0 == Surd(1, 0, 1, 5)
    assert (s**-2) * (s**2) == Surd(1, 0, 1, 5)
    with pytest.raises(ZeroDivisionError):
        Surd(0, 0, 1, 5).inverse()


def test_golden_ratio_identity():
    # x^2 = x + 1 for x = (1+sqrt(5))/2
    x = Surd(1, 1, 2, 5)
    assert x * x == x + 1


def test_comparisons_are_exact_near_ties():
    # 2*sqrt(6) vs 5: 24 < 25
    assert Surd(0, 2, 1, 6) < 5
    assert Surd(0, 5, 1, 6) > 12  # 5*sqrt(6)=12.247
    assert Surd(0, 2, 1, 6) < Surd(5, 0, 1, 6)
