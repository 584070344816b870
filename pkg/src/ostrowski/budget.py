"""Operation-size caps for the long scans.

The global cap bounds single-pass enumeration lengths (q_k budgets, DFT
window lengths); the frequency cap bounds q_k * |h| products in the
twisted window sums.  OSTROWSKI_BUDGET in the environment overrides the
global cap, and the frequency cap scales with it.
"""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10_000_000
ENV_VAR = "OSTROWSKI_BUDGET"


class BudgetError(ValueError):
    """An operation would exceed a configured size cap; names the cap."""

    def __init__(self, cap_name: str, requested: int, cap: int):
        self.cap_name = cap_name
        self.requested = requested
        self.cap = cap
        super().__init__(
            f"{cap_name} exceeded: requested {requested}, cap {cap} "
            f"(override with {ENV_VAR})"
        )


def global_budget() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw}")
    return value


def frequency_budget() -> int:
    """Cap on q_k * |h| for twisted sums (10x the global enumeration cap)."""
    return 10 * global_budget()


def check(cap_name: str, requested: int, cap: int | None = None) -> None:
    limit = global_budget() if cap is None else cap
    if requested > limit:
        raise BudgetError(cap_name, requested, limit)
