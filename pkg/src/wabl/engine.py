"""Level-weighted average (WABL) defuzzification.

The WABL value of a fuzzy number mixes each level cut's bounds with an
optimism coefficient c, M(alpha) = (1 - c) * L(alpha) + c * R(alpha), and
averages the per-level means M under the level weights: a weighted sum
over discrete levels or the integral of M against the density
(k + 1) * alpha**k in the continuous case.

Every route the module offers is cross-checkable against the others:

* ``wabl_discrete`` and the summation mode of ``wabl_trapezoid_pattern``
  sum mass * M(level) directly.
* ``closed_form_constant`` / ``closed_form_linear`` evaluate the exact
  closed forms (M(0) + M(1)) / 2 and M(0) + (2t+1)/(3t) * (M(1) - M(0))
  for k = 0 and k = 1 pattern weights on equally spaced levels.
* ``closed_form_quadratic`` evaluates the k = 2 analogue
  M(0) + 3(t+1)/(2(2t+1)) * (M(1) - M(0)), obtained from
  sum(i**3) = t**2 (t+1)**2 / 4 the same way the k = 1 form follows from
  sum(i**2); it is checked against the summation route in the tests.
* ``wabl_continuous_closed`` and ``wabl_continuous_quadrature`` evaluate
  the continuous value, by formula and by Gauss-Legendre quadrature.

Note on the k = 1 closed form: a published worked computation of the
trapezoid (10, 14, 15, 23) with t = 4, c = 0.8 reports 19.9, which
contradicts both the closed form above and the direct summation (each
gives 16.2).  This package treats 19.9 as an erratum; the ``verify`` CLI
command demonstrates the discrepancy on exactly that configuration.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from numpy.polynomial.legendre import leggauss

from ._checks import require_exponent, require_subintervals, require_unit
from .core import DiscreteFN, Interval, TrapezoidalFN, alpha_cut, lr_bounds
from .errors import WablError
from .weights import DiscreteWeights, EqualSpacedScheme, pattern_weights

__all__ = [
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
]


class ComputePath(enum.Enum):
    """Which route produced a WABL value."""

    SUMMATION = "summation"
    CLOSED_CONSTANT = "closed-constant"
    CLOSED_LINEAR = "closed-linear"
    CLOSED_QUADRATIC = "closed-quadratic"
    CLOSED_CONTINUOUS = "closed-continuous"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class LevelTerm:
    """One level's contribution: cut bounds, mean and the mass applied to it."""

    alpha: float
    mass: float
    lo: float
    hi: float
    mean: float


@dataclass(frozen=True)
class WablResult:
    """A defuzzified value, the path used, and the per-level breakdown.

    The breakdown is populated by the summation paths, where
    sum(mass * mean) over its terms reproduces ``value``.
    """

    value: float
    path: ComputePath
    breakdown: tuple[LevelTerm, ...] | None = None


def mean_at_level(interval: Interval, c: float) -> float:
    """Optimism-weighted mean of a cut: (1 - c) * lo + c * hi."""
    c = require_unit("optimism coefficient c", c)
    return (1.0 - c) * interval.lo + c * interval.hi


def _mean(lo: float, hi: float, c: float) -> float:
    return (1.0 - c) * lo + c * hi


def _support_core_means(fn: TrapezoidalFN, c: float) -> tuple[float, float]:
    """M(0) over the support and M(1) over the core."""
    return _mean(fn.l, fn.r, c), _mean(fn.m_l, fn.m_r, c)


def wabl_discrete(
    fn: DiscreteFN, weights: DiscreteWeights, c: float
) -> WablResult:
    """Sum mass * M(level) over the weights' levels, cut from fn.

    Every positively weighted level must have a nonempty cut; zero-mass
    levels without one (including a level-0 entry, whose cut is undefined
    for discrete numbers) are skipped.
    """
    c = require_unit("optimism coefficient c", c)
    terms = []
    for alpha, mass in weights.items():
        if mass == 0.0:
            try:
                cut = alpha_cut(fn, alpha)
            except WablError:
                continue
        else:
            cut = alpha_cut(fn, alpha)
        terms.append(LevelTerm(alpha, mass, cut.lo, cut.hi, _mean(cut.lo, cut.hi, c)))
    value = math.fsum(term.mass * term.mean for term in terms)
    return WablResult(value, ComputePath.SUMMATION, tuple(terms))


def wabl_trapezoid_pattern(
    fn: TrapezoidalFN,
    scheme: EqualSpacedScheme,
    c: float,
    *,
    force_summation: bool = False,
) -> WablResult:
    """WABL of a trapezoid over equally spaced levels with pattern weights.

    Dispatches to the closed form for k in {0, 1, 2}; other exponents, or
    ``force_summation=True``, take the direct summation route, which also
    populates the per-level breakdown.
    """
    c = require_unit("optimism coefficient c", c)
    if not force_summation:
        if scheme.k == 0:
            return WablResult(closed_form_constant(fn, c), ComputePath.CLOSED_CONSTANT)
        if scheme.k == 1:
            return WablResult(
                closed_form_linear(fn, scheme.t, c), ComputePath.CLOSED_LINEAR
            )
        if scheme.k == 2:
            return WablResult(
                closed_form_quadratic(fn, scheme.t, c), ComputePath.CLOSED_QUADRATIC
            )
    terms = []
    for alpha, mass in pattern_weights(scheme).items():
        cut = lr_bounds(fn, alpha)
        terms.append(LevelTerm(alpha, mass, cut.lo, cut.hi, _mean(cut.lo, cut.hi, c)))
    value = math.fsum(term.mass * term.mean for term in terms)
    return WablResult(value, ComputePath.SUMMATION, tuple(terms))


def closed_form_constant(fn: TrapezoidalFN, c: float) -> float:
    """WABL under uniform level weights (k = 0): (M(0) + M(1)) / 2.

    Independent of the number of levels.
    """
    c = require_unit("optimism coefficient c", c)
    m0, m1 = _support_core_means(fn, c)
    return (m0 + m1) / 2.0


def closed_form_linear(fn: TrapezoidalFN, t: int, c: float) -> float:
    """WABL under linear level weights (k = 1) on t+1 equally spaced levels.

    M(0) + (2t + 1) / (3t) * (M(1) - M(0)).
    """
    require_subintervals(t)
    c = require_unit("optimism coefficient c", c)
    m0, m1 = _support_core_means(fn, c)
    return m0 + (2 * t + 1) / (3 * t) * (m1 - m0)


def closed_form_quadratic(fn: TrapezoidalFN, t: int, c: float) -> float:
    """WABL under quadratic level weights (k = 2) on t+1 equally spaced levels.

    M(0) + 3(t + 1) / (2(2t + 1)) * (M(1) - M(0)).  The coefficient is
    sum(p_i * alpha_i) with p_i = i**2 / (t(t+1)(2t+1)/6), alpha_i = i/t
    and sum(i**3) = t**2 (t+1)**2 / 4; it tends to 3/4, matching the
    continuous k = 2 value, and the summation route confirms it.
    """
    require_subintervals(t)
    c = require_unit("optimism coefficient c", c)
    m0, m1 = _support_core_means(fn, c)
    return m0 + 3 * (t + 1) / (2 * (2 * t + 1)) * (m1 - m0)


def wabl_continuous_closed(fn: TrapezoidalFN, k: int, c: float) -> float:
    """Continuous WABL under the density (k + 1) * alpha**k.

    c * (r - (k+1)/(k+2) * (r - m_r)) + (1 - c) * (l + (k+1)/(k+2) * (m_l - l)).
    The triangular case is m_l == m_r.
    """
    require_exponent(k)
    c = require_unit("optimism coefficient c", c)
    shrink = (k + 1) / (k + 2)
    return c * (fn.r - shrink * (fn.r - fn.m_r)) + (1.0 - c) * (
        fn.l + shrink * (fn.m_l - fn.l)
    )


@lru_cache(maxsize=None)
def _unit_gauss_rule(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Gauss-Legendre nodes and weights mapped from [-1, 1] to [0, 1]."""
    nodes, wts = leggauss(n)
    return tuple((x + 1.0) / 2.0 for x in nodes), tuple(w / 2.0 for w in wts)


def wabl_continuous_quadrature(fn: TrapezoidalFN, k: int, c: float) -> float:
    """Continuous WABL by fixed-order Gauss-Legendre quadrature.

    The integrand (k + 1) * alpha**k * M(alpha) is a polynomial of degree
    k + 1, so ceil((k + 2) / 2) nodes already integrate it exactly; two
    extra nodes are pure safety margin.  Absolute error stays within
    1e-12 of the true integral.
    """
    require_exponent(k)
    c = require_unit("optimism coefficient c", c)
    nodes, wts = _unit_gauss_rule((k + 3) // 2 + 2)
    return math.fsum(
        w * (k + 1) * alpha**k * _mean(
            fn.l + alpha * (fn.m_l - fn.l),
            fn.r - alpha * (fn.r - fn.m_r),
            c,
        )
        for alpha, w in zip(nodes, wts)
    )


def sum_means(fn: TrapezoidalFN, t: int, c: float) -> float:
    """Direct sum of M(i/t) for i = 0..t.

    Equals (t + 1) / 2 * (M(0) + M(1)); the tests confirm the identity.
    """
    require_subintervals(t)
    c = require_unit("optimism coefficient c", c)
    return math.fsum(
        mean_at_level(lr_bounds(fn, i / t), c) for i in range(t + 1)
    )


def weighted_sum_means(fn: TrapezoidalFN, t: int, c: float) -> float:
    """Direct sum of i * M(i/t) for i = 0..t.

    Equals (t + 1) * (3t * M(0) + (2t + 1) * (M(1) - M(0))) / 6; the tests
    confirm the identity.
    """
    require_subintervals(t)
    c = require_unit("optimism coefficient c", c)
    return math.fsum(
        i * mean_at_level(lr_bounds(fn, i / t), c) for i in range(t + 1)
    )
