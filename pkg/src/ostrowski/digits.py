"""Digit expansion, digit sums, and streaming enumeration for alpha(m).

Every nonnegative integer has a unique expansion n = sum_i eps_i * q_i over
the convergent denominators, subject to the admissibility rule

    eps_0 = 0;  0 <= eps_i <= a_{i+1};  eps_i = a_{i+1}  forces  eps_{i-1} = 0,

where the partial quotients alternate a_1, a_2, ... = 1, m, 1, m, ...  The
expansion is computed greedily from the top; the Odometer enumerates the
digit strings of 0, 1, 2, ... with amortized O(1) digit rewrites per step
instead of re-expanding each n.

Digit strings serialize least-significant first as comma-separated
integers, e.g. "0,2,0,2" for 10 = 2*q_1 + 2*q_3 when m = 2.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .cf import AlphaParams, q_sequence


@dataclass(frozen=True, slots=True)
class DigitString:
    """An admissible digit vector eps_0 .. eps_{K-1}, least significant first."""

    params: AlphaParams
    eps: tuple[int, ...]

    def value(self) -> int:
        qs = q_sequence(self.params.m, min_len=len(self.eps))
        return sum(e * q for e, q in zip(self.eps, qs))

    def digit_sum(self) -> int:
        return sum(self.eps)

    def serialize(self) -> str:
        return ",".join(str(e) for e in self.eps)

    @staticmethod
    def parse(text: str, params: AlphaParams) -> "DigitString":
        eps = tuple(int(t) for t in text.split(",")) if text.strip() else (0,)
        return DigitString(params, eps)

    def __str__(self) -> str:
        return self.serialize()


@dataclass(frozen=True, slots=True)
class ValidationReport:
    """Outcome of the admissibility check; index points at the first violation."""

    ok: bool
    index: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(eps, params: AlphaParams) -> ValidationReport:
    """Check the three admissibility clauses, reporting the first violation."""
    if isinstance(eps, DigitString):
        eps = eps.eps
    m = params.m
    prev = 0
    for i, e in enumerate(eps):
        if e < 0:
            return ValidationReport(False, i, f"negative digit {e}")
        if i == 0:
            if e != 0:
                return ValidationReport(False, 0, "eps_0 must be 0 (a_1 = 1)")
        else:
            cap = m if i % 2 == 1 else 1
            if e > cap:
                return ValidationReport(False, i, f"digit {e} exceeds cap {cap}")
            if e == cap and prev != 0:
                return ValidationReport(
                    False, i, f"digit at cap {cap} requires a zero below it"
                )
        prev = e
    return ValidationReport(True)


def digits_of(n: int, params: AlphaParams) -> DigitString:
    """Unique admissible digit string of n, by greedy descent from the top."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return DigitString(params, (0,))
    m = params.m
    qs = q_sequence(m, above=n)
    i = bisect_right(qs, n) - 1
    eps = [0] * (i + 1)
    rem = n
    while rem and i >= 1:
        e = rem // qs[i]
        if e:
            cap = m if i & 1 else 1
            if e > cap:  # cannot trigger for rem < q_{i+1}; kept as a guard
                e = cap
            eps[i] = e
            rem -= e * qs[i]
        i -= 1
    assert rem == 0, "greedy expansion failed to terminate at zero"
    return DigitString(params, tuple(eps))


def value_of(digits: DigitString) -> int:
    """Value of an admissible digit string; rejects inadmissible input."""
    report = validate(digits.eps, digits.params)
    if not report:
        raise ValueError(f"inadmissible digits at index {report.index}: {report.reason}")
    return digits.value()


def digit_sum(n: int, params: AlphaParams) -> int:
    """S_alpha(n): sum of all digits of n."""
    return digits_of(n, params).digit_sum()


def digit_sum_trunc(n: int, params: AlphaParams, k: int) -> int:
    """Sum of the digits below index k."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return sum(digits_of(n, params).eps[:k])


def truncate(n: int, params: AlphaParams, k: int) -> int:
    """Value of the low-k digits of n; always below q_k."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    eps = digits_of(n, params).eps[:k]
    qs = q_sequence(params.m, min_len=k)
    return sum(e * q for e, q in zip(eps, qs))


class Odometer:
    """Streaming successor state: digits and digit sum of n, n+1, n+2, ...

    Carries restore admissibility locally: a unit lands on position 1; a
    digit passing m+1 there collapses to q_2; a digit raised next to an
    at-cap neighbour collapses via q_{i+2} = a_{i+2} q_{i+1} + q_i.  Each
    step touches O(1) digits amortized.  Single-owner mutable state; to
    scan [0, N) in parallel, seed one odometer per chunk via digits_of.
    """

    __slots__ = ("params", "n", "digit_sum", "_eps", "_m")

    def __init__(self, params: AlphaParams, start: int = 0):
        self.params = params
        self.n = start
        self._m = params.m
        seed = digits_of(start, params)
        self._eps = list(seed.eps) + [0, 0, 0]
        self.digit_sum = seed.digit_sum()

    def digits(self) -> tuple[int, ...]:
        """Current digit string, trimmed to match digits_of(n)."""
        eps = self._eps
        top = len(eps) - 1
        while top > 0 and eps[top] == 0:
            top -= 1
        return tuple(eps[: top + 1])

    def digit_sum_trunc(self, k: int) -> int:
        return sum(self._eps[:k])

    def step(self) -> None:
        """Advance to n+1, rewriting digits in place."""
        eps = self._eps
        m = self._m
        ds = self.digit_sum
        i = 1
        while True:
            if i + 1 >= len(eps):
                eps.extend((0,) * (i + 2 - len(eps)))
            eps[i] += 1
            ds += 1
            if eps[i] > (m if i & 1 else 1):
                # only position 1 can overflow: (m+1)*q_1 = q_2 there
                assert i == 1, "digit overflow above position 1"
                eps[1] = 0
                ds -= m + 1
                i = 2
                continue
            cap_up = m if (i + 1) & 1 else 1
            if eps[i + 1] == cap_up:
                # neighbour sits at its cap, which demands a zero below it:
                # carry with q_{i+2} = a_{i+2} q_{i+1} + q_i
                eps[i] -= 1
                eps[i + 1] = 0
                ds -= 1 + cap_up
                i += 2
                continue
            break
        self.digit_sum = ds
        self.n += 1


@dataclass(frozen=True, slots=True)
class VSequence:
    """Increasing enumeration n_0 = 0 < n_1 < ... of the integers whose
    digits below index k all vanish; consecutive gaps are q_{k-1} or q_k."""

    params: AlphaParams
    k: int
    values: tuple[int, ...]
    gaps: tuple[int, ...]


def v_sequence(params: AlphaParams, k: int, count: int) -> VSequence:
    """First `count` elements of the zero-low-digit set and their gaps."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    qs = q_sequence(params.m, min_len=k + 1)
    candidates = (qs[k - 1], qs[k])
    values = [0]
    gaps: list[int] = []
    while len(values) < count:
        cur = values[-1]
        for g in candidates:
            nxt = cur + g
            eps = digits_of(nxt, params).eps
            if not any(eps[:k]):
                values.append(nxt)
                gaps.append(g)
                break
        else:
            raise AssertionError("no successor at gap q_{k-1} or q_k")
    return VSequence(params=params, k=k, values=tuple(values), gaps=tuple(gaps))


def digit_sum_array(params: AlphaParams, N: int, trunc: int | None = None) -> np.ndarray:
    """Vector of S_alpha(n) (or S_{alpha,k} with trunc=k) for n = 0 .. N-1.

    Built by the block self-similarity of the value-ordered digit strings:
    [0, q_j) splits into a_j shifted copies of [0, q_{j-1}) followed by one
    copy of [0, q_{j-2}).  Independent of the greedy expansion and of the
    odometer, which makes it a useful cross-check, and it is fast enough
    for N in the tens of millions.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    m = params.m
    qs = q_sequence(m, above=N)
    blocks: list[np.ndarray] = [np.zeros(1, dtype=np.int32), np.zeros(1, dtype=np.int32)]
    j = 1
    while qs[j] < N:
        j += 1
        a_j = m if j % 2 == 0 else 1
        counted = trunc is None or (j - 1) < trunc
        parts = [blocks[j - 1] + (c if counted else 0) for c in range(a_j)]
        parts.append(blocks[j - 2] + (a_j if counted else 0))
        blocks.append(np.concatenate(parts))
    return blocks[j][:N].copy()
