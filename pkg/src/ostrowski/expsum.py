"""Exponential sums over Ostrowski digit sums.

Covers the joint sum sum_{n<N} e(theta*S_1(n) + beta*S_2(n)) streamed with
two synchronized odometers, the per-level window sums twisted by h*phi, the
window DFT whose coefficients reconstruct e(theta*S_{alpha,k}) on a full
block plus a q_{k-1} overhang, and numeric checks of the classical
inequalities used alongside them (Fejer weights, Weyl-van der Corput,
min(K, ||t+h*phi||^-2) sums, and simultaneous-approximation margins for
two quadratic constants).

Phase arguments are reduced mod 1 before exponentiation.  Multiples of phi
are reduced with exact integer arithmetic; rational theta/beta are reduced
exactly as integer residue classes with a precomputed root table; float
coefficients fall back to ordinary floating reduction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable, Sequence

import numpy as np

from . import budget
from .cf import AlphaParams, frac_mul, q_sequence
from .digits import Odometer, v_sequence
from .surd import Surd

TWO_PI = 2.0 * math.pi

# rational phases with a common denominator up to this size use an exact
# residue-class table instead of per-term floating reduction
_MAX_ROOT_TABLE = 4096

Real = float | int | Fraction


def unit_exp(x: float) -> complex:
    """e(x) = exp(2*pi*i*x)."""
    return cmath.exp(complex(0.0, TWO_PI * (x % 1.0)))


class CompensatedSum:
    """Neumaier-compensated accumulation of complex terms.

    Keeps the absolute error of a length-N unimodular sum near eps*|total|
    instead of growing with N, which is what lets streamed sums over 1e8
    terms stay inside a 1e-8 absolute budget.
    """

    __slots__ = ("re", "im", "cre", "cim")

    def __init__(self) -> None:
        self.re = 0.0
        self.im = 0.0
        self.cre = 0.0
        self.cim = 0.0

    def add(self, z: complex) -> None:
        x = z.real
        s = self.re
        t = s + x
        if abs(s) >= abs(x):
            self.cre += (s - t) + x
        else:
            self.cre += (x - t) + s
        self.re = t
        y = z.imag
        s = self.im
        t = s + y
        if abs(s) >= abs(y):
            self.cim += (s - t) + y
        else:
            self.cim += (y - t) + s
        self.im = t

    def value(self) -> complex:
        return complex(self.re + self.cre, self.im + self.cim)


def _as_fraction(x: Real) -> Fraction | None:
    """Exact rational view of x, or None when x is a float."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


def phase_term(c1: Real, c2: Real) -> Callable[[int, int], complex]:
    """Factory for (x1, x2) -> e(c1*x1 + c2*x2) over nonnegative integers.

    Exact residue-class reduction when both coefficients are rational with
    a small common denominator; floating reduction otherwise.
    """
    f1, f2 = _as_fraction(c1), _as_fraction(c2)
    if f1 is not None and f2 is not None:
        L = math.lcm(f1.denominator, f2.denominator)
        if L <= _MAX_ROOT_TABLE:
            u1 = f1.numerator * (L // f1.denominator) % L
            u2 = f2.numerator * (L // f2.denominator) % L
            roots = tuple(cmath.exp(complex(0.0, TWO_PI * j / L)) for j in range(L))
            return lambda x1, x2: roots[(u1 * x1 + u2 * x2) % L]
    g1, g2 = float(c1), float(c2)
    return lambda x1, x2: cmath.exp(complex(0.0, TWO_PI * ((g1 * x1 + g2 * x2) % 1.0)))


def _chunk_bounds(lo: int, hi: int, workers: int) -> list[tuple[int, int]]:
    span = hi - lo
    parts = max(1, min(workers, span))
    size, extra = divmod(span, parts)
    bounds = []
    start = lo
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        bounds.append((start, end))
        start = end
    return bounds


def _joint_chunk(
    p1: AlphaParams,
    p2: AlphaParams,
    term: Callable[[int, int], complex],
    lo: int,
    hi: int,
) -> complex:
    od1 = Odometer(p1, lo)
    od2 = Odometer(p2, lo)
    acc = CompensatedSum()
    add = acc.add
    s1 = od1.step
    s2 = od2.step
    for _ in range(hi - lo):
        add(term(od1.digit_sum, od2.digit_sum))
        s1()
        s2()
    return acc.value()


def joint_exp_sum(
    N: int,
    theta: Real,
    beta: Real,
    p1: AlphaParams,
    p2: AlphaParams,
    workers: int = 1,
) -> complex:
    """sum_{n<N} e(theta*S_1(n) + beta*S_2(n)), streamed exactly once.

    With workers > 1 the range splits into chunks, each chunk seeds its own
    pair of odometers, and partial sums merge in chunk order, so results
    are reproducible for a fixed chunk count and agree across chunk counts
    to well below 1e-9.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    term = phase_term(theta, beta)
    total = CompensatedSum()
    if workers <= 1:
        return _joint_chunk(p1, p2, term, 0, N)
    from concurrent.futures import ThreadPoolExecutor

    bounds = _chunk_bounds(0, N, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(lambda b: _joint_chunk(p1, p2, term, b[0], b[1]), bounds)
        for part in parts:
            total.add(part)
    return total.value()


@dataclass(frozen=True, slots=True)
class ExpSumSeries:
    """Joint sums along an N grid, with normalized moduli |S|/N."""

    m1: int
    m2: int
    theta: str
    beta: str
    grid: tuple[int, ...]
    values: tuple[complex, ...]

    @property
    def normalized(self) -> tuple[float, ...]:
        return tuple(abs(s) / n for s, n in zip(self.values, self.grid))

    def csv_rows(self) -> list[list[str]]:
        rows = [["N", "re", "im", "modulus", "normalized"]]
        for n, s in zip(self.grid, self.values):
            rows.append([str(n), repr(s.real), repr(s.imag), repr(abs(s)), repr(abs(s) / n)])
        return rows

    def json_records(self) -> list[dict]:
        return [
            {"N": n, "re": s.real, "im": s.imag, "modulus": abs(s), "normalized": abs(s) / n}
            for n, s in zip(self.grid, self.values)
        ]


def joint_exp_series(
    grid: Sequence[int],
    theta: Real,
    beta: Real,
    p1: AlphaParams,
    p2: AlphaParams,
    workers: int = 1,
) -> ExpSumSeries:
    """Cumulative joint sums at each grid point, in one streaming pass."""
    pts = list(grid)
    if not pts or sorted(set(pts)) != pts or pts[0] < 1:
        raise ValueError("grid must be strictly increasing positive integers")
    term = phase_term(theta, beta)
    total = CompensatedSum()
    values = []
    prev = 0
    for n in pts:
        if workers <= 1:
            total.add(_joint_chunk(p1, p2, term, prev, n))
        else:
            from concurrent.futures import ThreadPoolExecutor

            bounds = _chunk_bounds(prev, n, workers)
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for part in pool.map(
                    lambda b: _joint_chunk(p1, p2, term, b[0], b[1]), bounds
                ):
                    total.add(part)
        values.append(total.value())
        prev = n
    return ExpSumSeries(
        m1=p1.m,
        m2=p2.m,
        theta=str(theta),
        beta=str(beta),
        grid=tuple(pts),
        values=tuple(values),
    )


@dataclass(frozen=True, slots=True)
class DecaySeries:
    """Normalized window sums D_k = |sum_{u<q_k} e(gamma*S(u) + theta*u)| / q_k."""

    m: int
    gamma: str
    theta: str
    ks: tuple[int, ...]
    qks: tuple[int, ...]
    values: tuple[float, ...]
    slope: float
    intercept: float
    hypothesis_ok: bool

    def csv_rows(self) -> list[list[str]]:
        rows = [["k", "q_k", "D_k"]]
        for k, q, v in zip(self.ks, self.qks, self.values):
            rows.append([str(k), str(q), repr(v)])
        return rows


def _hypothesis_m_gamma(params: AlphaParams, gamma: Real) -> bool:
    """True when m*gamma is a noninteger, the condition behind the decay."""
    fr = _as_fraction(gamma)
    if fr is not None:
        return (params.m * fr).denominator != 1
    return (params.m * float(gamma)) % 1.0 != 0.0


def single_decay(
    params: AlphaParams,
    gamma: Real,
    theta: Real,
    kmax: int,
    kmin: int = 2,
) -> DecaySeries:
    """D_k for kmin <= k <= kmax with a log-linear fit of the decay rate.

    A noninteger m*gamma is what guarantees geometric decay; when it fails
    the series is still computed but flagged.
    """
    if kmin < 2 or kmax < kmin:
        raise ValueError(f"need 2 <= kmin <= kmax, got {kmin}..{kmax}")
    qs = q_sequence(params.m, min_len=kmax + 1)
    budget.check("single_decay window q_kmax", qs[kmax])
    hypothesis_ok = _hypothesis_m_gamma(params, gamma)
    term = phase_term(gamma, theta)
    od = Odometer(params)
    acc = CompensatedSum()
    values: dict[int, float] = {}
    k_at = {qs[k]: k for k in range(kmin, kmax + 1)}
    for u in range(qs[kmax]):
        acc.add(term(od.digit_sum, u))
        od.step()
        k = k_at.get(u + 1)
        if k is not None:
            values[k] = abs(acc.value()) / qs[k]
    ks = tuple(range(kmin, kmax + 1))
    dvals = tuple(values[k] for k in ks)
    fit_ks = [k for k, v in zip(ks, dvals) if v > 0.0]
    fit_ls = [math.log(v) for v in dvals if v > 0.0]
    if len(fit_ks) >= 2:
        slope, intercept = np.polyfit(fit_ks, fit_ls, 1)
    else:
        slope, intercept = float("nan"), float("nan")
    return DecaySeries(
        m=params.m,
        gamma=str(gamma),
        theta=str(theta),
        ks=ks,
        qks=tuple(qs[k] for k in ks),
        values=dvals,
        slope=float(slope),
        intercept=float(intercept),
        hypothesis_ok=hypothesis_ok,
    )


def m_sums(params: AlphaParams, k: int, h: int, theta: Real) -> tuple[complex, complex]:
    """Window sums over [0, q_{k-1}) and [q_{k-1}, q_k) twisted by h*phi.

    Each term is e(theta*S(u) - (-1)^k * h*u*phi); the h*u*phi fractional
    parts come from exact surd arithmetic.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    qs = q_sequence(params.m, min_len=k + 1)
    budget.check("m_sums q_k * |h|", qs[k] * max(1, abs(h)), budget.frequency_budget())
    sign = -1.0 if k % 2 == 0 else 1.0
    tf = float(theta)
    phi = params.phi
    od = Odometer(params)
    acc1 = CompensatedSum()
    acc2 = CompensatedSum()
    for u in range(qs[k]):
        fr = frac_mul(h * u, phi) if h else 0.0
        z = unit_exp(tf * od.digit_sum + sign * fr)
        (acc1 if u < qs[k - 1] else acc2).add(z)
        od.step()
    return acc1.value(), acc2.value()


def b_zero_surds(params: AlphaParams, k: int) -> tuple[Surd, Surd]:
    """Exact leading window coefficients, split by the parity of k.

    For k = 2*k0:   ( (2-m+sqrt(d)) / (2*phi^k0),  1 / phi^k0 )
    For k = 2*k0+1: ( 1 / phi^k0,  (-m+sqrt(d)) / (2*phi^k0) )

    They satisfy b1*q_{k-1} + b2*(q_k - q_{k-1}) = 1 exactly, which is the
    half-index identity q_{2k0} + alpha*q_{2k0-1} = phi^k0 in disguise.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    m, d = params.m, params.d
    k0 = k // 2
    phi_pow = params.phi ** k0
    one = Surd(1, 0, 1, d)
    if k % 2 == 0:
        b1 = Surd(2 - m, 1, 2, d) / phi_pow  # alpha + 1 over phi^k0
        b2 = one / phi_pow
    else:
        b1 = one / phi_pow
        b2 = Surd(-m, 1, 2, d) / phi_pow  # alpha over phi^k0
    return b1, b2


def b_zero(params: AlphaParams, k: int) -> tuple[float, float]:
    """Leading window coefficients as floats (one rounding from exact values)."""
    b1, b2 = b_zero_surds(params, k)
    return float(b1), float(b2)


def b_zero_normalization(params: AlphaParams, k: int) -> Surd:
    """Exact value of b1*q_{k-1} + b2*(q_k - q_{k-1}); equals 1 for every k."""
    b1, b2 = b_zero_surds(params, k)
    qs = q_sequence(params.m, min_len=k + 1)
    return b1 * qs[k - 1] + b2 * (qs[k] - qs[k - 1])


@dataclass(frozen=True, slots=True)
class SpectrumL:
    """DFT coefficients of u -> e(theta*S_{alpha,k}(u + start)) over one block.

    The inversion identity holds on [0, Q) by construction and extends to
    [0, Q + q_{k-1}) because the truncated digit sum repeats with period
    Q at offsets below q_{k-1}.
    """

    params: AlphaParams
    k: int
    v: int
    start: int
    Q: int
    theta: Real
    coeffs: np.ndarray = field(repr=False)

    def reconstruct(self, n: int) -> complex:
        phases = np.exp(2j * np.pi * np.arange(self.Q) * (n % self.Q) / self.Q)
        return complex(np.dot(self.coeffs, phases))

    def parseval_sum(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))


def dft_window(params: AlphaParams, k: int, v: int, theta: Real) -> SpectrumL:
    """Spectrum of the v-th zero-low-digit block at truncation level k."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    vs = v_sequence(params, k, v + 1)
    start = vs.values[v - 1]
    Q = vs.values[v] - start
    budget.check("dft_window block length Q(v)", Q)
    tf = float(theta)
    od = Odometer(params, start)
    samples = np.empty(Q, dtype=complex)
    for u in range(Q):
        samples[u] = unit_exp(tf * od.digit_sum_trunc(k))
        od.step()
    coeffs = np.fft.fft(samples) / Q
    return SpectrumL(
        params=params, k=k, v=v, start=start, Q=Q, theta=theta, coeffs=coeffs
    )


def reconstruction_error(spectrum: SpectrumL, extended: bool = True) -> float:
    """Max |reconstruction - direct signal| over the (extended) block range."""
    params = spectrum.params
    qs = q_sequence(params.m, min_len=spectrum.k + 1)
    upper = spectrum.Q + (qs[spectrum.k - 1] if extended else 0)
    tf = float(spectrum.theta)
    od = Odometer(params, spectrum.start)
    worst = 0.0
    for n in range(upper):
        direct = unit_exp(tf * od.digit_sum_trunc(spectrum.k))
        err = abs(spectrum.reconstruct(n) - direct)
        if err > worst:
            worst = err
        od.step()
    return worst


def fejer_check(x: float, R: int) -> tuple[float, float]:
    """Both sides of the Fejer weight identity
    sum_{|r|<R} (R-|r|) e(rx) = |sum_{0<=r<R} e(rx)|^2."""
    if R < 1:
        raise ValueError(f"R must be >= 1, got {R}")
    lhs_c = complex(R, 0.0)
    for r in range(1, R):
        z = unit_exp(r * x)
        lhs_c += (R - r) * (z + z.conjugate())
    geo = sum(unit_exp(r * x) for r in range(R))
    if abs(lhs_c.imag) > 1e-9 * R * R:
        raise AssertionError(f"Fejer LHS has nonreal part {lhs_c.imag}")
    return lhs_c.real, abs(geo) ** 2


@dataclass(frozen=True, slots=True)
class MinNormResult:
    """Value and reference bound terms for sum_h min(K, ||t + h*phi||^-2)."""

    lhs: float
    sqrt_term: float  # sqrt(K) * |I|
    log_term: float  # K * log|I|

    @property
    def ratio(self) -> float:
        return self.lhs / (self.sqrt_term + self.log_term)


def min_norm_sum(
    params: AlphaParams, t: float, interval: tuple[int, int], K: float
) -> MinNormResult:
    """sum over h in [lo, hi] of min(K, ||t + h*phi||^-2), with exact h*phi parts."""
    lo, hi = interval
    size = hi - lo + 1
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if size < 2:
        raise ValueError(f"interval must contain at least 2 integers, got {size}")
    total = 0.0
    for h in range(lo, hi + 1):
        frac = frac_mul(h, params.phi)
        s = (frac + t) % 1.0
        dist = min(s, 1.0 - s)
        total += K if dist == 0.0 or 1.0 / (dist * dist) > K else 1.0 / (dist * dist)
    return MinNormResult(lhs=total, sqrt_term=math.sqrt(K) * size, log_term=K * math.log(size))


def schmidt_margin(
    p1: AlphaParams, p2: AlphaParams, H: int, eps: float = 0.1, bits: int = 256
) -> float:
    """min over 0 < max(|h2|,|h4|) <= H of ||h2*phi2 + h4*phi1|| * max(|h2|,|h4|)^(2+eps).

    phi1 and phi2 live over different radicands, so the combination is
    evaluated as a scaled integer at `bits` precision; the scaled square
    roots are each off by less than one unit, giving a certified error
    below (|h2|+|h4|) * 2^-(bits+1), negligible against the margins.
    """
    if p1.m == p2.m:
        raise ValueError("the two systems must have distinct m")
    if H < 1:
        raise ValueError(f"H must be >= 1, got {H}")
    s1 = isqrt(p1.d << (2 * bits))  # floor(sqrt(d1) * 2^bits)
    s2 = isqrt(p2.d << (2 * bits))
    scale = 1 << (bits + 1)  # the /2 in phi = (m+2+sqrt(d))/2
    c1 = (p1.m + 2) << bits
    c2 = (p2.m + 2) << bits
    best = math.inf
    for h2 in range(0, H + 1):
        h4_range = range(-H, H + 1) if h2 > 0 else range(1, H + 1)
        base2 = h2 * (c2 + s2)
        for h4 in h4_range:
            scaled = base2 + h4 * (c1 + s1)
            rem = scaled % scale
            dist = min(rem, scale - rem) / scale
            weight = max(abs(h2), abs(h4)) ** (2.0 + eps)
            cand = dist * weight
            if cand < best:
                best = cand
    return best


def weyl_vdc_check(a: Sequence[complex], R: int) -> tuple[float, float]:
    """LHS and RHS of the shifted-correlation bound
    |sum a_n|^2 <= (N-1+R)/R * sum_{|r|<R} (1-|r|/R) sum_n a_{n+r} conj(a_n)."""
    if R < 1:
        raise ValueError(f"R must be >= 1, got {R}")
    arr = np.asarray(a, dtype=complex)
    N = len(arr)
    if N == 0:
        return 0.0, 0.0
    lhs = abs(arr.sum()) ** 2
    corr = float(np.sum(np.abs(arr) ** 2))
    for r in range(1, min(R, N)):  # the shifted sum is empty once r >= N
        inner = np.vdot(arr[: N - r], arr[r:])  # sum_n conj(a_n) a_{n+r}
        corr += 2.0 * (1.0 - r / R) * inner.real
    rhs = (N - 1 + R) / R * corr
    return float(lhs), float(rhs)
