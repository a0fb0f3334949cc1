"""Missing-digit fractals, their automatic sequences, and ghost measures."""

from .digitset import (
    DEFAULT_BUDGET,
    DigitSet,
    SequencePrefix,
    Substitution,
    Word,
    build_substitution,
    digit_membership,
    hausdorff_dimension,
    iterate_substitution,
    membership_prefix,
    new_digit_set,
)
from .errors import (
    BaseTooSmall,
    BudgetExceeded,
    DegenerateLeadingCoefficient,
    DegenerateLeadingCoefficientWarning,
    DigitFractalError,
    DigitOutOfRange,
    DuplicateDigit,
    InvalidDigitSet,
    MissingZero,
    UnsupportedDegree,
)
from .mahler import (
    AsymptoticProbeReport,
    CharacteristicPolynomial,
    DigitPolynomial,
    MahlerEigenvalue,
    MahlerEquation,
    Polynomial,
    asymptotic_probe,
    characteristic_polynomial,
    digit_polynomial,
    evaluate_truncated_product,
    mahler_eigenvalue,
    mahler_equation,
)
from .measures import (
    CdfSample,
    DyadicPoint,
    FourierCoefficient,
    GhostLevelMeasure,
    LevelSet,
    fourier_ghost_direct,
    fourier_ghost_product,
    fourier_level_measure,
    fourier_limit,
    fourier_table,
    ghost_level_measure,
    level_cdf,
    level_set,
    limit_cdf,
    staircase_samples,
)

__version__ = "0.1.0"
