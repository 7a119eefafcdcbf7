"""Ranking of fuzzy-number alternatives by WABL value.

All alternatives are scored under one shared decision-maker
configuration: trapezoids through the equal-spaced pattern scheme,
discrete numbers through explicit level weights.  Scores sort
descending; values within a hair of each other count as tied and share
a competition rank (1, 2, 2, 4), listed in input order.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._checks import require_unit
from .core import DiscreteFN, TrapezoidalFN
from .engine import wabl_discrete, wabl_trapezoid_pattern
from .errors import DomainError, EmptyCutError, WablError
from .weights import DiscreteWeights, EqualSpacedScheme

__all__ = [
    "TIE_TOLERANCE",
    "Alternative",
    "RankedAlternative",
    "Ranking",
    "rank_alternatives",
]

# Scores this close count as equal; far below any meaningful WABL gap.
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Alternative:
    """A labelled fuzzy number to be ranked."""

    id: str
    fn: TrapezoidalFN | DiscreteFN

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise DomainError(f"alternative id must be a nonempty string, got {self.id!r}")
        if not isinstance(self.fn, (TrapezoidalFN, DiscreteFN)):
            raise DomainError(
                f"alternative {self.id!r} must wrap a trapezoidal or discrete "
                f"fuzzy number, got {type(self.fn).__name__}"
            )


@dataclass(frozen=True)
class RankedAlternative:
    id: str
    value: float
    rank: int


@dataclass(frozen=True)
class Ranking:
    """Alternatives in descending WABL order with competition ranks."""

    entries: tuple[RankedAlternative, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index: int) -> RankedAlternative:
        return self.entries[index]


def _score(
    alt: Alternative,
    c: float,
    pattern: EqualSpacedScheme | None,
    weights: DiscreteWeights | None,
    force_summation: bool,
) -> float:
    if isinstance(alt.fn, TrapezoidalFN):
        if pattern is None:
            raise DomainError(
                "an equal-spaced pattern scheme is required to rank "
                "trapezoidal alternatives"
            )
        return wabl_trapezoid_pattern(
            alt.fn, pattern, c, force_summation=force_summation
        ).value
    if weights is None:
        raise DomainError(
            "explicit level weights are required to rank discrete alternatives"
        )
    return wabl_discrete(alt.fn, weights, c).value


def rank_alternatives(
    alts: list[Alternative],
    c: float,
    *,
    pattern: EqualSpacedScheme | None = None,
    weights: DiscreteWeights | None = None,
    force_summation: bool = False,
) -> Ranking:
    """Score every alternative and order them by descending WABL value.

    Mixed collections need both a pattern scheme and explicit weights,
    one per alternative kind.  Errors raised while scoring are re-raised
    with the offending alternative's id prepended.
    """
    c = require_unit("optimism coefficient c", c)
    if not alts:
        raise DomainError("at least one alternative is required")
    seen: set[str] = set()
    for alt in alts:
        if alt.id in seen:
            raise DomainError(f"duplicate alternative id {alt.id!r}")
        seen.add(alt.id)

    scored = []
    for index, alt in enumerate(alts):
        try:
            value = _score(alt, c, pattern, weights, force_summation)
        except EmptyCutError as exc:
            raise EmptyCutError(
                f"alternative {alt.id!r}: {exc}", alpha=exc.alpha
            ) from exc
        except WablError as exc:
            raise type(exc)(f"alternative {alt.id!r}: {exc}") from exc
        scored.append((index, alt.id, value))

    # Stable sort: exact ties keep input order already; near ties are
    # regrouped below and re-listed in input order.
    ordered = sorted(scored, key=lambda item: -item[2])
    groups: list[list[tuple[int, str, float]]] = []
    for item in ordered:
        if groups and groups[-1][0][2] - item[2] <= TIE_TOLERANCE:
            groups[-1].append(item)
        else:
            groups.append([item])

    entries = []
    next_rank = 1
    for group in groups:
        group.sort(key=lambda item: item[0])
        for _, alt_id, value in group:
            entries.append(RankedAlternative(alt_id, value, next_rank))
        next_rank += len(group)
    return Ranking(tuple(entries))
