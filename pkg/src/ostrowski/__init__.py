"""Ostrowski numeration for alpha = [0; 1, m, 1, m, ...].

Exact continued-fraction constants and quadratic-surd arithmetic, digit
expansion with a streaming odometer, exponential sums over digit-sum
functions, and exact joint residue counting with empirical error-exponent
fits.
"""

from .budget import BudgetError
from .cf import (
    AlphaParams,
    ConvergentTable,
    convergents,
    dist_nearest,
    frac_mul,
    make_alpha,
    q_sequence,
)
from .digits import (
    DigitString,
    Odometer,
    ValidationReport,
    VSequence,
    digit_sum,
    digit_sum_array,
    digit_sum_trunc,
    digits_of,
    truncate,
    v_sequence,
    validate,
    value_of,
)
from .equidist import (
    DeltaFit,
    JointCountReport,
    MismatchRecord,
    counts_via_orthogonality,
    delta_scan,
    delta_scan_corollary,
    delta_scan_theorem,
    joint_counts,
    mismatch_count,
    mismatch_sweep,
    single_counts,
)
from .expsum import (
    CompensatedSum,
    DecaySeries,
    ExpSumSeries,
    MinNormResult,
    SpectrumL,
    b_zero,
    b_zero_normalization,
    b_zero_surds,
    dft_window,
    fejer_check,
    joint_exp_series,
    joint_exp_sum,
    m_sums,
    min_norm_sum,
    reconstruction_error,
    schmidt_margin,
    single_decay,
    unit_exp,
    weyl_vdc_check,
)
from .surd import Surd

__version__ = "0.1.0"

__all__ = [
    "AlphaParams",
    "BudgetError",
    "CompensatedSum",
    "ConvergentTable",
    "DecaySeries",
    "DeltaFit",
    "DigitString",
    "ExpSumSeries",
    "JointCountReport",
    "MinNormResult",
    "MismatchRecord",
    "Odometer",
    "SpectrumL",
    "Surd",
    "VSequence",
    "ValidationReport",
    "b_zero",
    "b_zero_normalization",
    "b_zero_surds",
    "convergents",
    "counts_via_orthogonality",
    "delta_scan",
    "delta_scan_corollary",
    "delta_scan_theorem",
    "dft_window",
    "digit_sum",
    "digit_sum_array",
    "digit_sum_trunc",
    "digits_of",
    "dist_nearest",
    "fejer_check",
    "frac_mul",
    "joint_counts",
    "joint_exp_series",
    "joint_exp_sum",
    "m_sums",
    "make_alpha",
    "min_norm_sum",
    "mismatch_count",
    "mismatch_sweep",
    "q_sequence",
    "reconstruction_error",
    "schmidt_margin",
    "single_counts",
    "single_decay",
    "truncate",
    "unit_exp",
    "v_sequence",
    "validate",
    "value_of",
    "weyl_vdc_check",
]
