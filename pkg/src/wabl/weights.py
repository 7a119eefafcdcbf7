"""Degree-importance weights over membership levels.

Weights assign each level a nonnegative mass and the masses total 1.
They come either from a power pattern, where the mass at the i-th of t+1
equally spaced levels is proportional to i**k, or from explicit
(level, mass) pairs supplied by the caller.  The continuous counterpart
is the density (k + 1) * alpha**k on [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._checks import require_exponent, require_real, require_subintervals, require_unit
from .core import LevelSet
from .errors import DomainError, NormalizationError

__all__ = [
    "MASS_SUM_TOLERANCE",
    "MASS_SUM_REJECT_TOLERANCE",
    "EqualSpacedScheme",
    "DiscreteWeights",
    "pattern_weights",
    "explicit_weights",
    "normalize",
    "continuous_density",
]

# Masses are accepted as-is when their total is this close to 1 ...
MASS_SUM_TOLERANCE = 1e-12
# ... silently renormalized up to here, and rejected beyond it.
MASS_SUM_REJECT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class EqualSpacedScheme:
    """Equally spaced levels i/t for i = 0..t with pattern exponent k.

    k = 0 weights all levels uniformly (0**0 counts as 1, so the support
    level participates); k >= 1 gives zero mass to level 0 and masses that
    increase with the level.
    """

    t: int
    k: int

    def __post_init__(self) -> None:
        require_subintervals(self.t)
        require_exponent(self.k)

    @property
    def levels(self) -> LevelSet:
        return LevelSet(tuple(i / self.t for i in range(self.t + 1)))


@dataclass(frozen=True)
class DiscreteWeights:
    """A mass per level: masses are nonnegative and total 1 within 1e-12."""

    levels: LevelSet
    masses: tuple[float, ...]

    def __post_init__(self) -> None:
        masses = tuple(require_real("mass", m) for m in self.masses)
        object.__setattr__(self, "masses", masses)
        if len(masses) != len(self.levels):
            raise DomainError(
                f"{len(self.levels)} levels but {len(masses)} masses"
            )
        for alpha, mass in zip(self.levels, masses):
            if mass < 0.0:
                raise DomainError(
                    f"mass at level {alpha!r} must be >= 0, got {mass!r}"
                )
        total = math.fsum(masses)
        if abs(total - 1.0) > MASS_SUM_TOLERANCE:
            raise NormalizationError(
                f"masses must total 1 within {MASS_SUM_TOLERANCE}, got {total!r}",
                total=total,
            )

    def items(self) -> tuple[tuple[float, float], ...]:
        """(level, mass) pairs in level order."""
        return tuple(zip(self.levels, self.masses))


def pattern_weights(scheme: EqualSpacedScheme) -> DiscreteWeights:
    """Masses i**k / sum(j**k) over the scheme's levels i/t.

    The accumulation is exact integer arithmetic, so for k in {0, 1, 2}
    the masses equal the textbook closed forms 1/(t+1), 2i/(t(t+1)) and
    6i**2/(t(t+1)(2t+1)) bit for bit.
    """
    pattern = [i**scheme.k for i in range(scheme.t + 1)]
    total = sum(pattern)
    masses = tuple(q / total for q in pattern)
    return DiscreteWeights(scheme.levels, masses)


def explicit_weights(levels: LevelSet, masses: list[float]) -> DiscreteWeights:
    """Validate caller-supplied masses against the given levels.

    Totals within 1e-12 of 1 pass through untouched; drift up to 1e-9 is
    renormalized (decimal inputs rarely sum to exactly 1); anything worse
    is rejected.
    """
    masses = [require_real("mass", m) for m in masses]
    if len(masses) != len(levels):
        raise DomainError(f"{len(levels)} levels but {len(masses)} masses")
    for alpha, mass in zip(levels, masses):
        if mass < 0.0:
            raise DomainError(f"mass at level {alpha!r} must be >= 0, got {mass!r}")
    total = math.fsum(masses)
    deviation = abs(total - 1.0)
    if deviation > MASS_SUM_REJECT_TOLERANCE:
        raise NormalizationError(
            f"masses must total 1, got {total!r} "
            f"(deviation {deviation:.3e} exceeds {MASS_SUM_REJECT_TOLERANCE})",
            total=total,
        )
    if deviation > MASS_SUM_TOLERANCE:
        masses = [m / total for m in masses]
    return DiscreteWeights(levels, tuple(masses))


def normalize(raw: list[float]) -> list[float]:
    """Scale a nonnegative, not-all-zero vector to total 1."""
    values = [require_real("weight", v) for v in raw]
    if not values:
        raise DomainError("cannot normalize an empty weight vector")
    for v in values:
        if v < 0.0:
            raise DomainError(f"weights must be >= 0, got {v!r}")
    total = math.fsum(values)
    if total == 0.0:
        raise DomainError("cannot normalize an all-zero weight vector")
    return [v / total for v in values]


def continuous_density(k: int, alpha: float) -> float:
    """Level-weight density (k + 1) * alpha**k; integrates to 1 on [0, 1]."""
    require_exponent(k)
    alpha = require_unit("alpha", alpha)
    return (k + 1) * alpha**k
