"""Exponential sums: streamed joint sums, window sums, DFT windows, and the
numeric forms of the classical inequalities."""

import math
from fractions import Fraction

import numpy as np
import pytest

from ostrowski import (
    BudgetError,
    CompensatedSum,
    b_zero,
    b_zero_normalization,
    b_zero_surds,
    dft_window,
    fejer_check,
    frac_mul,
    joint_exp_series,
    joint_exp_sum,
    m_sums,
    make_alpha,
    min_norm_sum,
    q_sequence,
    reconstruction_error,
    schmidt_margin,
    single_decay,
    unit_exp,
    weyl_vdc_check,
)
from ostrowski.surd import Surd

from oracles import naive_joint_sum, naive_m_sums

# frozen from verified oracle runs
JOINT_N1000 = complex(-22.499999999999996, 32.042939940024304)
MSUM_K4_H1 = (
    complex(1.1403667161328963, 1.1207300425805355),
    complex(-1.05596761551232, -0.608298392031276),
)
MIN_NORM_LHS = 392493.04423369595
SCHMIDT_H1000 = 0.0232832186530321
DECAY_D6 = 0.06755779406938923


def test_compensated_sum_matches_fsum():
    values = [1e16, 1.0, -1e16, 3.14, 1e-8, -2.71] * 100
    acc = CompensatedSum()
    for v in values:
        acc.add(complex(v, -v))
    want = math.fsum(values)
    assert acc.value().real == pytest.approx(want, abs=1e-9)
    assert acc.value().imag == pytest.approx(-want, abs=1e-9)


# -- joint sums -----------------------------------------------------------------


def test_joint_sum_trivial_phases(p2, p3):
    assert joint_exp_sum(100, 0, 0, p2, p3) == 100 + 0j
    assert joint_exp_sum(1, Fraction(1, 3), Fraction(1, 2), p2, p3) == 1 + 0j


def test_joint_sum_against_naive_oracle(p2, p3):
    got = joint_exp_sum(1000, Fraction(1, 3), Fraction(1, 2), p2, p3)
    want = naive_joint_sum(1000, 1 / 3, 1 / 2, p2, p3)
    assert abs(got - want) < 1e-10
    assert abs(got - JOINT_N1000) < 1e-9


def test_joint_sum_float_path_matches_rational_path(p2, p3):
    exact = joint_exp_sum(500, Fraction(1, 3), Fraction(1, 2), p2, p3)
    floats = joint_exp_sum(500, 1 / 3, 1 / 2, p2, p3)
    assert abs(exact - floats) < 1e-9


def test_joint_sum_workers_deterministic(p2, p3):
    base = joint_exp_sum(2000, Fraction(1, 3), Fraction(1, 2), p2, p3)
    for workers in (2, 3, 8):
        alt = joint_exp_sum(2000, Fraction(1, 3), Fraction(1, 2), p2, p3, workers=workers)
        assert abs(base - alt) < 1e-9


def test_joint_series_cumulative(p2, p3):
    series = joint_exp_series((100, 400, 1000), Fraction(1, 3), Fraction(1, 2), p2, p3)
    for n, s in zip(series.grid, series.values):
        assert abs(s - joint_exp_sum(n, Fraction(1, 3), Fraction(1, 2), p2, p3)) < 1e-9
    assert series.normalized == tuple(abs(s) / n for n, s in zip(series.grid, series.values))


def test_joint_series_rejects_bad_grid(p2, p3):
    with pytest.raises(ValueError):
        joint_exp_series((100, 100), 0, 0, p2, p3)
    with pytest.raises(ValueError):
        joint_exp_series((), 0, 0, p2, p3)


def test_phase_with_phi_equals_phase_with_alpha(p2):
    # phi - alpha is an integer, so both reduce to the same fractional part
    for h in (1, 5, 153, 987654):
        assert frac_mul(h, p2.phi) == frac_mul(h, p2.alpha)


# -- single-system decay -----------------------------------------------------------


def test_decay_trivial_gamma(p2):
    series = single_decay(p2, 0, 0, kmax=6)
    assert series.values == (1.0,) * 5
    assert series.hypothesis_ok is False  # m*0 is an integer


def test_decay_flags_integer_m_gamma(p2):
    assert single_decay(p2, Fraction(1, 2), 0, kmax=4).hypothesis_ok is False
    assert single_decay(p2, Fraction(1, 3), 0, kmax=4).hypothesis_ok is True


def test_decay_anchor_and_slope(p2):
    series = single_decay(p2, Fraction(1, 3), Fraction(3, 10), kmax=12, kmin=6)
    assert series.values[0] == pytest.approx(DECAY_D6, rel=1e-9)
    assert series.slope < 0


def test_decay_budget_rejected(p2, monkeypatch):
    monkeypatch.setenv("OSTROWSKI_BUDGET", "1000")
    with pytest.raises(BudgetError, match="q_kmax"):
        single_decay(p2, Fraction(1, 3), 0, kmax=14)


# -- window sums and coefficients ----------------------------------------------------


def test_m_sums_all_ones(p2):
    qs = q_sequence(2, min_len=5)
    lo, hi = m_sums(p2, 4, 0, 0)
    assert lo == pytest.approx(qs[3])
    assert hi == pytest.approx(qs[4] - qs[3])


def test_m_sums_triangle_bound(p2):
    qs = q_sequence(2, min_len=6)
    for h, theta in ((1, 0.37), (3, 0.5), (-2, 0.1)):
        lo, hi = m_sums(p2, 5, h, theta)
        assert abs(lo) <= qs[4] + 1e-9
        assert abs(hi) <= qs[5] - qs[4] + 1e-9


def test_m_sums_against_naive_oracle(p2):
    got = m_sums(p2, 4, 1, Fraction(1, 3))
    want = naive_m_sums(p2, 4, 1, 1 / 3)
    assert abs(got[0] - want[0]) < 1e-10
    assert abs(got[1] - want[1]) < 1e-10
    assert abs(got[0] - MSUM_K4_H1[0]) < 1e-9
    assert abs(got[1] - MSUM_K4_H1[1]) < 1e-9


def test_m_sums_budget_rejected(p2, monkeypatch):
    monkeypatch.setenv("OSTROWSKI_BUDGET", "10")
    with pytest.raises(BudgetError, match=r"q_k \* \|h\|"):
        m_sums(p2, 4, 50, 0)


def test_m_sums_parity_sign(p3):
    # odd k flips the twist sign; compare against a hand-rolled sum
    from ostrowski import digit_sum

    k, h = 3, 2
    qs = q_sequence(3, min_len=k + 1)
    want_lo = sum(
        unit_exp(0.2 * digit_sum(u, p3) + frac_mul(h * u, p3.phi))
        for u in range(qs[k - 1])
    )
    lo, _ = m_sums(p3, k, h, 0.2)
    assert abs(lo - want_lo) < 1e-9


def test_b_zero_examples_m2():
    p = make_alpha(2)
    b1, b2 = b_zero(p, 4)
    assert b1 == pytest.approx(0.124355, abs=1e-6)
    assert b2 == pytest.approx(0.0717968, abs=1e-7)
    b1, b2 = b_zero(p, 3)
    assert b1 == pytest.approx(0.2679492, abs=1e-7)
    assert b2 == pytest.approx(0.1961524, abs=1e-7)


@pytest.mark.parametrize("m", [2, 3])
def test_b_zero_normalization_exact(m):
    params = make_alpha(m)
    one = Surd(1, 0, 1, params.d)
    for k in range(2, 21):
        assert b_zero_normalization(params, k) == one


@pytest.mark.parametrize("m", [2, 3])
def test_b_zero_geometric_decay(m):
    # stepping k by 2 divides both coefficients by phi, exactly
    params = make_alpha(m)
    for k in range(2, 16):
        b1a, b2a = b_zero_surds(params, k)
        b1b, b2b = b_zero_surds(params, k + 2)
        assert b1b * params.phi == b1a
        assert b2b * params.phi == b2a
        assert b1a.sign() > 0 and b2a.sign() > 0


# -- DFT windows -----------------------------------------------------------------------


def test_dft_window_constant_signal(p2):
    spectrum = dft_window(p2, 4, 2, 0)
    assert spectrum.coeffs[0] == pytest.approx(1.0)
    assert np.max(np.abs(spectrum.coeffs[1:])) < 1e-12


def test_dft_window_reconstruction(p2):
    spectrum = dft_window(p2, 4, 1, Fraction(1, 3))
    assert reconstruction_error(spectrum, extended=True) < 1e-9
    assert spectrum.parseval_sum() == pytest.approx(1.0, abs=1e-9)


def test_dft_window_lengths_follow_gaps(p2):
    qs = q_sequence(2, min_len=6)
    for v in range(1, 7):
        spectrum = dft_window(p2, 5, v, 0.37)
        assert spectrum.Q in (qs[4], qs[5])


def test_dft_window_budget(p2, monkeypatch):
    monkeypatch.setenv("OSTROWSKI_BUDGET", "3")
    with pytest.raises(BudgetError, match="block length"):
        dft_window(p2, 4, 1, Fraction(1, 3))


# -- inequality checks -------------------------------------------------------------------


def test_fejer_at_zero():
    for R in (1, 2, 7, 50):
        lhs, rhs = fejer_check(0.0, R)
        assert lhs == pytest.approx(R * R)
        assert rhs == pytest.approx(R * R)


def test_fejer_half_R2():
    lhs, rhs = fejer_check(0.5, 2)
    assert lhs == pytest.approx(0.0, abs=1e-12)
    assert rhs == pytest.approx(0.0, abs=1e-12)


def test_fejer_random():
    rng = np.random.default_rng(7)
    for _ in range(100):
        x = float(rng.random())
        R = int(rng.integers(1, 101))
        lhs, rhs = fejer_check(x, R)
        assert abs(lhs - rhs) <= 1e-8 * R * R


def test_min_norm_capped_by_interval(p2):
    res = min_norm_sum(p2, 0.25, (1, 50), 1.0)
    assert res.lhs <= 50.0 + 1e-9


def test_min_norm_near_integer_hits_cap(p2):
    # choose t so that t + 7*phi is an integer: the h=7 term contributes K
    t = -frac_mul(7, p2.phi)
    res = min_norm_sum(p2, t, (1, 20), 1e6)
    assert res.lhs >= 1e6


def test_min_norm_pinned_value(p2):
    res = min_norm_sum(p2, 0.0, (1, 1000), 1e4)
    assert res.lhs == pytest.approx(MIN_NORM_LHS, rel=1e-9)
    assert res.sqrt_term == pytest.approx(100.0 * 1000)
    assert res.log_term == pytest.approx(1e4 * math.log(1000))
    assert res.ratio == pytest.approx(MIN_NORM_LHS / (1e5 + 1e4 * math.log(1000)), rel=1e-12)


def test_schmidt_margin_basics(p2, p3):
    m1 = schmidt_margin(p2, p3, 1)
    assert m1 > 0
    values = [schmidt_margin(p2, p3, H) for H in (1, 10, 100)]
    assert values[0] >= values[1] >= values[2] > 0


def test_schmidt_margin_pinned(p2, p3):
    assert schmidt_margin(p2, p3, 1000) == pytest.approx(SCHMIDT_H1000, rel=1e-9)


def test_schmidt_margin_rejects_equal_m(p2):
    with pytest.raises(ValueError):
        schmidt_margin(p2, make_alpha(2), 10)


def test_schmidt_margin_against_mpmath(p2, p3):
    # the H=1 minimum is over {(0,1),(1,0),(1,-1),(1,1)}; recompute at 256 bits
    import mpmath as mp

    with mp.workprec(256):
        phi1 = (2 + 2 + mp.sqrt(12)) / 2
        phi2 = (3 + 2 + mp.sqrt(21)) / 2

        def dist(x):
            f = mp.frac(x)
            return float(min(f, 1 - f))

        want = min(
            dist(phi1), dist(phi2), dist(phi2 - phi1), dist(phi2 + phi1)
        )
    assert schmidt_margin(p2, p3, 1) == pytest.approx(want, rel=1e-12)


def test_weyl_vdc_constant_sequence():
    lhs, rhs = weyl_vdc_check(np.ones(50), 7)
    assert lhs == pytest.approx(2500.0)
    assert rhs >= lhs


def test_weyl_vdc_R1_is_cauchy_schwarz():
    rng = np.random.default_rng(11)
    a = np.exp(2j * np.pi * rng.random(200))
    lhs, rhs = weyl_vdc_check(a, 1)
    assert rhs == pytest.approx(200 * float(np.sum(np.abs(a) ** 2)), rel=1e-12)
    assert lhs <= rhs + 1e-9


def test_weyl_vdc_random():
    rng = np.random.default_rng(13)
    for _ in range(100):
        N = int(rng.integers(1, 501))
        R = int(rng.integers(1, 51))
        a = np.exp(2j * np.pi * rng.random(N))
        lhs, rhs = weyl_vdc_check(a, R)
        assert lhs <= rhs + 1e-6 * N * N
