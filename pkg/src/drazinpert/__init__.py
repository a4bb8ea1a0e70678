"""Drazin and group inverses of perturbed complex matrices.

``matcore`` holds the dense kernels, ``geninv`` the Drazin, group and corner
inverses, ``perturb`` the hypothesis checks, block formulas for
``(a+b)^#`` and the error bounds, and ``harness`` the random generator,
oracle trials, matrix files and worked pairs.
"""

from .errors import (
    BlockViolation,
    CornerSingular,
    DrazinPertError,
    GenerationFailed,
    HypothesisFailed,
    MismatchWithPaper,
    NormNotContractive,
    NotGroupInvertible,
    NumericFailure,
    PreconditionViolated,
    ShapeError,
    Singular,
)
from .geninv import (
    DrazinResult,
    cline_check,
    corner_inverse,
    dinv,
    drazin,
    drazin_via_powers,
    group_inverse,
    index_by_rank,
    spectral_idempotent,
    split_check,
)
from .matcore import DEFAULT_TOL, NormKind, Tolerances, norm, rank
from .perturb import (
    BoundBreakdown,
    ConditionReport,
    PerturbResult,
    bound_c24,
    bound_c33,
    bound_c34,
    bound_t23,
    bound_t32,
    check_c34,
    check_t23,
    check_t32,
    lemma21_block_drazin,
    lemma31_qnil_sum,
    neumann_corner,
    qnil_plus_sum_yangliu,
    sum_group_t23,
    sum_group_t32,
)

__version__ = "0.1.0"
