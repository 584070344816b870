"""Exact joint residue counting and error-exponent estimation.

Counts, over n < N, the pairs (S_1(n) mod b1, S_2(n) mod b2) of digit sums
in two numeration systems with a single streamed pass of two odometers.
Counts are exact integers; the expected cell size is N/(b1*b2) and the
report carries the coprimality flags gcd(b1,m1)=1 / gcd(b2,m2)=1 that the
equidistribution statement rests on (tests assert decay only when both
hold).  The error exponent delta is estimated by ordinary least squares on
log err(N) versus log N over a log-spaced grid, with err the maximum
relative cell deviation (counting mode) or |S_N|/N (exponential-sum mode).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cf import AlphaParams, q_sequence
from .digits import Odometer, digit_sum_array
from .expsum import ExpSumSeries, Real, _as_fraction, joint_exp_series, joint_exp_sum, unit_exp


@dataclass(frozen=True, slots=True)
class JointCountReport:
    """Exact b1 x b2 count matrix of joint digit-sum residues below N."""

    N: int
    m1: int
    b1: int
    m2: int
    b2: int
    counts: tuple[tuple[int, ...], ...]
    gcd1_ok: bool
    gcd2_ok: bool

    @property
    def expected(self) -> float:
        return self.N / (self.b1 * self.b2)

    def deviations(self) -> list[float]:
        """Relative deviation |C * b1*b2 / N - 1| per cell, row-major."""
        scale = self.b1 * self.b2 / self.N
        return [abs(c * scale - 1.0) for row in self.counts for c in row]

    @property
    def max_rel_dev(self) -> float:
        return max(self.deviations())

    @property
    def mean_rel_dev(self) -> float:
        devs = self.deviations()
        return sum(devs) / len(devs)

    def row_marginal(self) -> list[int]:
        return [sum(row) for row in self.counts]

    def col_marginal(self) -> list[int]:
        return [sum(row[j] for row in self.counts) for j in range(self.b2)]

    def to_json_dict(self) -> dict:
        return {
            "N": str(self.N),
            "m1": self.m1,
            "b1": self.b1,
            "m2": self.m2,
            "b2": self.b2,
            "counts": [[str(c) for c in row] for row in self.counts],
            "expected": self.expected,
            "max_rel_dev": self.max_rel_dev,
            "mean_rel_dev": self.mean_rel_dev,
            "gcd1_ok": self.gcd1_ok,
            "gcd2_ok": self.gcd2_ok,
        }

    def csv_rows(self) -> list[list[str]]:
        rows = [["a1", "a2", "count", "rel_dev"]]
        scale = self.b1 * self.b2 / self.N
        for a1, row in enumerate(self.counts):
            for a2, c in enumerate(row):
                rows.append([str(a1), str(a2), str(c), repr(abs(c * scale - 1.0))])
        return rows


def _count_chunk(
    p1: AlphaParams, p2: AlphaParams, b1: int, b2: int, lo: int, hi: int
) -> list[list[int]]:
    grid = [[0] * b2 for _ in range(b1)]
    od1 = Odometer(p1, lo)
    od2 = Odometer(p2, lo)
    s1 = od1.step
    s2 = od2.step
    for _ in range(hi - lo):
        grid[od1.digit_sum % b1][od2.digit_sum % b2] += 1
        s1()
        s2()
    return grid


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


def _counts_segment(
    p1: AlphaParams, p2: AlphaParams, b1: int, b2: int, lo: int, hi: int, workers: int
) -> list[list[int]]:
    """Count matrix over [lo, hi), chunked when workers > 1; merge is exact."""
    if workers <= 1 or hi - lo < 2:
        return _count_chunk(p1, p2, b1, b2, lo, hi)
    from concurrent.futures import ThreadPoolExecutor

    total = [[0] * b2 for _ in range(b1)]
    bounds = _chunk_bounds(lo, hi, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for grid in pool.map(lambda b: _count_chunk(p1, p2, b1, b2, b[0], b[1]), bounds):
            for i in range(b1):
                row = total[i]
                add = grid[i]
                for j in range(b2):
                    row[j] += add[j]
    return total


def _make_report(
    N: int, p1: AlphaParams, b1: int, p2: AlphaParams, b2: int, counts: list[list[int]]
) -> JointCountReport:
    assert sum(map(sum, counts)) == N
    return JointCountReport(
        N=N,
        m1=p1.m,
        b1=b1,
        m2=p2.m,
        b2=b2,
        counts=tuple(tuple(row) for row in counts),
        gcd1_ok=math.gcd(b1, p1.m) == 1,
        gcd2_ok=math.gcd(b2, p2.m) == 1,
    )


def joint_counts(
    N: int,
    p1: AlphaParams,
    b1: int,
    p2: AlphaParams,
    b2: int,
    workers: int = 1,
) -> JointCountReport:
    """Exact residue-pair counts over n < N; the matrix always sums to N."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if b1 < 1 or b2 < 1:
        raise ValueError(f"moduli must be >= 1, got {b1}, {b2}")
    counts = _counts_segment(p1, p2, b1, b2, 0, N, workers)
    return _make_report(N, p1, b1, p2, b2, counts)


def single_counts(N: int, params: AlphaParams, b: int) -> list[int]:
    """Residue counts of one digit-sum function, via the block-built sum array.

    Deliberately avoids the odometer so it can cross-check the marginals of
    joint_counts through an independent code path.
    """
    if N < 1 or b < 1:
        raise ValueError("need N >= 1 and b >= 1")
    sums = digit_sum_array(params, N)
    return np.bincount(sums % b, minlength=b).tolist()


def counts_via_orthogonality(
    N: int, p1: AlphaParams, b1: int, p2: AlphaParams, b2: int
) -> list[list[float]]:
    """Count matrix recovered from the b1*b2 joint exponential sums.

    Averaging e(j1*(S1-a1)/b1 + j2*(S2-a2)/b2) over the residue characters
    (j1, j2) isolates each cell; the result must match joint_counts up to
    floating rounding.  This ties the counting route to the sum route.
    """
    sums = {
        (j1, j2): joint_exp_sum(N, Fraction(j1, b1), Fraction(j2, b2), p1, p2)
        for j1 in range(b1)
        for j2 in range(b2)
    }
    out = [[0.0] * b2 for _ in range(b1)]
    for a1 in range(b1):
        for a2 in range(b2):
            acc = 0.0 + 0.0j
            for (j1, j2), s in sums.items():
                acc += unit_exp(-(j1 * a1 / b1 + j2 * a2 / b2)) * s
            out[a1][a2] = (acc / (b1 * b2)).real
    return out


def mismatch_count(
    params: AlphaParams, N: int, k: int, r: int
) -> tuple[int, Fraction]:
    """How often adding r to n changes digits at or above index k.

    Returns the exact count of n < N with
    S(n+r) - S(n) != S_k(n+r) - S_k(n), together with the proven ceiling
    N*r/q_{k-1} as an exact rational.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if r < 0 or N < 0:
        raise ValueError("N and r must be nonnegative")
    qs = q_sequence(params.m, min_len=k + 1)
    bound = Fraction(N * r, qs[k - 1])
    if r == 0 or N == 0:
        return 0, bound
    od_lo = Odometer(params, 0)
    od_hi = Odometer(params, r)
    count = 0
    for _ in range(N):
        full = od_hi.digit_sum - od_lo.digit_sum
        trunc = od_hi.digit_sum_trunc(k) - od_lo.digit_sum_trunc(k)
        if full != trunc:
            count += 1
        od_lo.step()
        od_hi.step()
    return count, bound


@dataclass(frozen=True, slots=True)
class MismatchRecord:
    N: int
    k: int
    r: int
    count: int
    bound: Fraction

    @property
    def ok(self) -> bool:
        return self.count <= self.bound


def mismatch_sweep(
    params: AlphaParams,
    Ns: Sequence[int],
    ks: Sequence[int],
    rs: Sequence[int],
) -> list[MismatchRecord]:
    """mismatch_count over a parameter grid, vectorized over one shared pass.

    Builds S and the truncated sums as arrays (an independent route from
    the odometer used by mismatch_count) and compares shifted slices, so
    large sweeps stay cheap.
    """
    max_n = max(Ns)
    max_r = max(rs)
    qs = q_sequence(params.m, min_len=max(ks) + 1)
    full = digit_sum_array(params, max_n + max_r)
    out = []
    for k in ks:
        trunc = digit_sum_array(params, max_n + max_r, trunc=k)
        for r in rs:
            diff_full = full[r : max_n + r] - full[:max_n]
            diff_trunc = trunc[r : max_n + r] - trunc[:max_n]
            prefix = np.cumsum(diff_full != diff_trunc)
            for N in Ns:
                count = int(prefix[N - 1]) if N > 0 else 0
                out.append(
                    MismatchRecord(
                        N=N, k=k, r=r, count=count, bound=Fraction(N * r, qs[k - 1])
                    )
                )
    return out


@dataclass(frozen=True, slots=True)
class DeltaFit:
    """Log-log fit of the error decay err(N) ~ N^-delta along an N grid.

    delta_hat is None when no positive errors are available to fit (for
    example the single-class count where every deviation is exactly zero).
    """

    mode: str
    grid: tuple[int, ...]
    err: tuple[float, ...]
    delta_hat: float | None
    residual: float | None
    hypothesis_ok: bool
    series: ExpSumSeries | None = None
    reports: tuple[JointCountReport, ...] | None = None

    def to_json_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "grid": [str(n) for n in self.grid],
            "err": list(self.err),
            "delta_hat": self.delta_hat,
            "residual": self.residual,
            "hypothesis_ok": self.hypothesis_ok,
        }
        if self.series is not None:
            out["series"] = self.series.json_records()
        if self.reports is not None:
            out["reports"] = [r.to_json_dict() for r in self.reports]
        return out

    def csv_rows(self) -> list[list[str]]:
        rows = [["N", "err"]]
        for n, e in zip(self.grid, self.err):
            rows.append([str(n), repr(e)])
        return rows


def _fit_delta(grid: Sequence[int], err: Sequence[float]) -> tuple[float | None, float | None]:
    pts = [(math.log(n), math.log(e)) for n, e in zip(grid, err) if e > 0.0]
    if len(pts) < 2:
        return None, None
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    slope, intercept = np.polyfit(xs, ys, 1)
    fitted = slope * xs + intercept
    residual = float(np.sqrt(np.mean((fitted - ys) ** 2)))
    return float(-slope), residual


def _check_grid(grid: Sequence[int]) -> tuple[int, ...]:
    pts = tuple(grid)
    if len(pts) < 4:
        raise ValueError(f"grid needs at least 4 points, got {len(pts)}")
    if pts[0] < 1 or any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError("grid must be strictly increasing positive integers")
    return pts


def delta_scan_theorem(
    p1: AlphaParams,
    p2: AlphaParams,
    theta: Real,
    beta: Real,
    grid: Sequence[int],
    workers: int = 1,
) -> DeltaFit:
    """Fit the decay of |sum_{n<N} e(theta*S1 + beta*S2)| / N along the grid.

    The cancellation hypothesis is that m2*beta is not an integer (checked
    exactly for rational beta); a failing hypothesis is flagged rather than
    fatal, so degenerate baselines like theta = beta = 0 stay observable.
    """
    pts = _check_grid(grid)
    fr = _as_fraction(beta)
    if fr is not None:
        hypothesis_ok = (p2.m * fr).denominator != 1
    else:
        hypothesis_ok = (p2.m * float(beta)) % 1.0 != 0.0
    series = joint_exp_series(pts, theta, beta, p1, p2, workers=workers)
    err = series.normalized
    delta_hat, residual = _fit_delta(pts, err)
    return DeltaFit(
        mode="theorem",
        grid=pts,
        err=err,
        delta_hat=delta_hat,
        residual=residual,
        hypothesis_ok=hypothesis_ok,
        series=series,
    )


def delta_scan(mode: str, grid: Sequence[int], workers: int = 1, **params) -> DeltaFit:
    """Dispatch to the exponential-sum fit ("theorem") or the counting fit
    ("corollary").

    theorem mode takes p1, p2, theta, beta; corollary mode takes p1, b1,
    p2, b2.
    """
    if mode == "theorem":
        return delta_scan_theorem(
            params["p1"], params["p2"], params["theta"], params["beta"],
            grid, workers=workers,
        )
    if mode == "corollary":
        return delta_scan_corollary(
            params["p1"], params["b1"], params["p2"], params["b2"],
            grid, workers=workers,
        )
    raise ValueError(f"unknown mode {mode!r}, expected 'theorem' or 'corollary'")


def delta_scan_corollary(
    p1: AlphaParams,
    b1: int,
    p2: AlphaParams,
    b2: int,
    grid: Sequence[int],
    workers: int = 1,
) -> DeltaFit:
    """Fit the decay of the max relative cell deviation along the grid.

    One streaming pass produces the cumulative count matrix at every grid
    point; err(N) is the worst cell's relative deviation from N/(b1*b2).
    """
    pts = _check_grid(grid)
    running = [[0] * b2 for _ in range(b1)]
    reports = []
    prev = 0
    for n in pts:
        seg = _counts_segment(p1, p2, b1, b2, prev, n, workers)
        for i in range(b1):
            for j in range(b2):
                running[i][j] += seg[i][j]
        reports.append(_make_report(n, p1, b1, p2, b2, [row[:] for row in running]))
        prev = n
    err = tuple(r.max_rel_dev for r in reports)
    delta_hat, residual = _fit_delta(pts, err)
    return DeltaFit(
        mode="corollary",
        grid=pts,
        err=err,
        delta_hat=delta_hat,
        residual=residual,
        hypothesis_ok=reports[-1].gcd1_ok and reports[-1].gcd2_ok,
        reports=tuple(reports),
    )
