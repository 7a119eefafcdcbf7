"""Level-weighted average (WABL) defuzzification of fuzzy numbers.

The package represents triangular/trapezoidal fuzzy numbers (continuous
and restricted to discrete levels) and discrete fuzzy numbers, builds
degree-importance weights over membership levels, and computes the WABL
defuzzified value under a configurable optimism coefficient, by direct
level summation, by closed forms, and by quadrature, so every route can
be checked against the others.
"""

from .core import (
    DiscreteFN,
    Interval,
    LevelSet,
    TrapezoidalFN,
    alpha_cut,
    discretize,
    lr_bounds,
    membership,
    native_levels,
)
from .engine import (
    ComputePath,
    LevelTerm,
    WablResult,
    closed_form_constant,
    closed_form_linear,
    closed_form_quadratic,
    mean_at_level,
    sum_means,
    wabl_continuous_closed,
    wabl_continuous_quadrature,
    wabl_discrete,
    wabl_trapezoid_pattern,
    weighted_sum_means,
)
from .errors import (
    DomainError,
    EmptyCutError,
    InputError,
    NormalizationError,
    WablError,
)
from .ranking import (
    TIE_TOLERANCE,
    Alternative,
    RankedAlternative,
    Ranking,
    rank_alternatives,
)
from .weights import (
    DiscreteWeights,
    EqualSpacedScheme,
    continuous_density,
    explicit_weights,
    normalize,
    pattern_weights,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "Interval",
    "TrapezoidalFN",
    "DiscreteFN",
    "LevelSet",
    "membership",
    "lr_bounds",
    "alpha_cut",
    "native_levels",
    "discretize",
    # weights
    "EqualSpacedScheme",
    "DiscreteWeights",
    "pattern_weights",
    "explicit_weights",
    "normalize",
    "continuous_density",
    # engine
    "ComputePath",
    "LevelTerm",
    "WablResult",
    "mean_at_level",
    "wabl_discrete",
    "wabl_trapezoid_pattern",
    "closed_form_constant",
    "closed_form_linear",
    "closed_form_quadratic",
    "wabl_continuous_closed",
    "wabl_continuous_quadrature",
    "sum_means",
    "weighted_sum_means",
    # ranking
    "TIE_TOLERANCE",
    "Alternative",
    "RankedAlternative",
    "Ranking",
    "rank_alternatives",
    # errors
    "WablError",
    "DomainError",
    "EmptyCutError",
    "NormalizationError",
    "InputError",
]
