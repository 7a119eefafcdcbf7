"""Fuzzy number value types and their level-cut operations.

Triangular and trapezoidal numbers share one piecewise-linear
representation: a triangle is a trapezoid whose core collapses to a point,
and a crisp number is the fully degenerate trapezoid.  Discrete numbers
carry an explicit, strictly increasing list of support points with their
membership degrees.  All values are immutable and every operation is a
pure function, so instances are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._checks import require_real, require_unit
from .errors import DomainError, EmptyCutError

__all__ = [
    "Interval",
    "TrapezoidalFN",
    "DiscreteFN",
    "LevelSet",
    "membership",
    "lr_bounds",
    "alpha_cut",
    "native_levels",
    "discretize",
]


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] on the real line."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", require_real("lo", self.lo))
        object.__setattr__(self, "hi", require_real("hi", self.hi))
        if self.lo > self.hi:
            raise DomainError(
                f"interval bounds out of order: lo={self.lo!r} > hi={self.hi!r}"
            )

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class TrapezoidalFN:
    """Trapezoidal fuzzy number with support [l, r] and core [m_l, m_r].

    Membership rises linearly from l to m_l, is 1 on the core, and falls
    linearly from m_r to r.  Degenerate sides (l == m_l, m_r == r) and the
    triangular case m_l == m_r are all legal, down to the crisp number
    l == m_l == m_r == r.
    """

    l: float
    m_l: float
    m_r: float
    r: float

    def __post_init__(self) -> None:
        for name in ("l", "m_l", "m_r", "r"):
            object.__setattr__(self, name, require_real(name, getattr(self, name)))
        if not (self.l <= self.m_l <= self.m_r <= self.r):
            raise DomainError(
                "trapezoid parameters must satisfy l <= m_l <= m_r <= r, got "
                f"({self.l!r}, {self.m_l!r}, {self.m_r!r}, {self.r!r})"
            )

    @classmethod
    def triangular(cls, l: float, m: float, r: float) -> "TrapezoidalFN":
        """Triangle (l, m, r) as the degenerate trapezoid (l, m, m, r)."""
        return cls(l, m, m, r)

    @property
    def is_triangular(self) -> bool:
        return self.m_l == self.m_r


@dataclass(frozen=True)
class DiscreteFN:
    """Discrete fuzzy number: (x, mu) support points, strictly increasing in x.

    Points with zero membership are rejected rather than stored; they can
    never enter a level cut.  ``height`` is the largest membership degree.
    A value with height < 1 is legal (it arises from coarse discretisation)
    but is flagged as non-normal; level cuts above its height are empty.
    """

    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        pts = tuple(
            (require_real("x", x), require_real("mu", mu)) for x, mu in self.points
        )
        object.__setattr__(self, "points", pts)
        if not pts:
            raise DomainError("a discrete fuzzy number needs at least one point")
        for x, mu in pts:
            if not 0.0 < mu <= 1.0:
                raise DomainError(
                    f"membership degree at x={x!r} must lie in (0, 1], got {mu!r}"
                )
        for (x_prev, _), (x_next, _) in zip(pts, pts[1:]):
            if not x_prev < x_next:
                raise DomainError(
                    f"support points must be strictly increasing in x, got "
                    f"{x_prev!r} before {x_next!r}"
                )

    @property
    def xs(self) -> tuple[float, ...]:
        return tuple(x for x, _ in self.points)

    @property
    def mus(self) -> tuple[float, ...]:
        return tuple(mu for _, mu in self.points)

    @property
    def height(self) -> float:
        return max(self.mus)

    @property
    def is_normal(self) -> bool:
        return self.height == 1.0


@dataclass(frozen=True)
class LevelSet:
    """Strictly increasing membership levels in (0, 1], optional leading 0.

    The leading 0 accommodates equal-spaced level schemes, which include
    the support level; at least one level must be positive.
    """

    alphas: tuple[float, ...]

    def __post_init__(self) -> None:
        alphas = tuple(require_real("alpha", a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if not alphas:
            raise DomainError("a level set needs at least one level")
        if alphas[0] < 0.0 or alphas[-1] > 1.0:
            raise DomainError(
                f"levels must lie in [0, 1], got range "
                f"[{alphas[0]!r}, {alphas[-1]!r}]"
            )
        if alphas[-1] <= 0.0:
            raise DomainError("a level set needs at least one positive level")
        for a_prev, a_next in zip(alphas, alphas[1:]):
            if not a_prev < a_next:
                raise DomainError(
                    f"levels must be strictly increasing, got {a_prev!r} "
                    f"before {a_next!r}"
                )

    def __len__(self) -> int:
        return len(self.alphas)

    def __iter__(self):
        return iter(self.alphas)

    def __contains__(self, alpha: float) -> bool:
        return alpha in self.alphas


def membership(fn: TrapezoidalFN, x: float) -> float:
    """Membership degree of x, piecewise linear over [l, m_l, m_r, r]."""
    x = require_real("x", x)
    if x < fn.l or x > fn.r:
        return 0.0
    if fn.m_l <= x <= fn.m_r:
        return 1.0
    if x < fn.m_l:
        # here l <= x < m_l, so the left side is non-degenerate
        return (x - fn.l) / (fn.m_l - fn.l)
    # here m_r < x <= r, so the right side is non-degenerate
    return (fn.r - x) / (fn.r - fn.m_r)


def lr_bounds(fn: TrapezoidalFN, alpha: float) -> Interval:
    """Level-cut bounds of a trapezoid: [l + alpha(m_l - l), r - alpha(r - m_r)].

    At alpha = 0 this is the support closure [l, r], at alpha = 1 the core
    [m_l, m_r].
    """
    alpha = require_unit("alpha", alpha)
    # the exact bounds never cross the core; clamping stops rounding at
    # alpha near 1 from flipping a degenerate interval
    return Interval(
        min(fn.l + alpha * (fn.m_l - fn.l), fn.m_l),
        max(fn.r - alpha * (fn.r - fn.m_r), fn.m_r),
    )


def alpha_cut(fn: DiscreteFN, alpha: float) -> Interval:
    """Min/max of the points with membership >= alpha, for alpha in (0, 1].

    Raises EmptyCutError when no point reaches the level, i.e. when
    alpha > fn.height.
    """
    alpha = require_real("alpha", alpha)
    if not 0.0 < alpha <= 1.0:
        raise DomainError(
            f"cut level must lie in (0, 1] for discrete numbers, got {alpha!r}"
        )
    qualifying = [x for x, mu in fn.points if mu >= alpha]
    if not qualifying:
        raise EmptyCutError(
            f"level cut at alpha={alpha!r} is empty "
            f"(largest membership degree is {fn.height!r})",
            alpha=alpha,
        )
    return Interval(qualifying[0], qualifying[-1])


def native_levels(fn: DiscreteFN) -> LevelSet:
    """The distinct membership degrees appearing in fn, sorted ascending."""
    return LevelSet(tuple(sorted(set(fn.mus))))


def discretize(fn: TrapezoidalFN, universe: list[float]) -> DiscreteFN:
    """Restrict a trapezoid to a discrete universe, dropping zero-membership x.

    The universe must be nonempty and strictly increasing.  The result is
    non-normal (height < 1) when no universe point lands on the core.
    """
    xs = [require_real("universe point", x) for x in universe]
    if not xs:
        raise DomainError("universe must contain at least one point")
    for x_prev, x_next in zip(xs, xs[1:]):
        if not x_prev < x_next:
            raise DomainError(
                f"universe must be strictly increasing, got {x_prev!r} "
                f"before {x_next!r}"
            )
    points = []
    for x in xs:
        mu = membership(fn, x)
        if mu > 0.0:
            points.append((x, mu))
    if not points:
        raise DomainError(
            "no universe point has positive membership: the universe does not "
            f"meet the support ({fn.l!r}, {fn.r!r})"
        )
    return DiscreteFN(tuple(points))
