"""ASIL determination from severity, exposure and controllability.

The risk-graph table collapses to an additive rule: with S in 0..3,
E in 1..4 and C in 0..3, any row with S0 or C0 is QM; otherwise the sum
S+E+C maps 7, 8, 9, 10 to A, B, C, D and everything below to QM.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import AsilLevel, HaraEntry, Project, Rating, SafetyGoal

SUMMARY_LABELS = ("NA", "QM", "A", "B", "C", "D")


class OutOfRangeError(ValueError):
    """A rating component lies outside its table range."""


class NoRatedEntriesError(ValueError):
    """ASIL aggregation was asked for a goal with no applicable ratings."""


@dataclass(frozen=True)
class RatingSummary:
    """Distribution of rating rows over the outcome labels."""

    counts: dict[str, int]
    total: int


def asil_of(s: int, e: int, c: int) -> AsilLevel:
    """Determine the ASIL for one severity/exposure/controllability triple."""
    if not 0 <= s <= 3:
        raise OutOfRangeError(f"s={s} outside 0..3")
    if not 1 <= e <= 4:
        raise OutOfRangeError(f"e={e} outside 1..4")
    if not 0 <= c <= 3:
        raise OutOfRangeError(f"c={c} outside 0..3")
    if s == 0 or c == 0:
        return AsilLevel.QM
    total = s + e + c
    if total <= 6:
        return AsilLevel.QM
    return AsilLevel(total - 6)


def rating_asil(rating: Rating) -> AsilLevel:
    return asil_of(rating.s, rating.e, rating.c)


def entry_asil(entry: HaraEntry) -> AsilLevel | None:
    """ASIL of one rating row; None for a not-applicable row."""
    if entry.rating is None:
        return None
    return rating_asil(entry.rating)


def goal_asil(goal: SafetyGoal, project: Project) -> AsilLevel:
    """Aggregate ASIL of a goal: the maximum over its rated entries."""
    levels = [
        rating_asil(h.rating)
        for h in project.hara_entries.values()
        if h.goal == goal.id and h.rating is not None
    ]
    if not levels:
        raise NoRatedEntriesError(
            f"goal {goal.id!r} has no applicable rated entries")
    return max(levels)


def rating_summary(project: Project) -> RatingSummary:
    """Count rating rows per outcome label: NA, QM and each ASIL letter.

    Every label appears in the counts, zero or not, in severity order.
    """
    counts = {label: 0 for label in SUMMARY_LABELS}
    for h in project.hara_entries.values():
        level = entry_asil(h)
        counts["NA" if level is None else level.name] += 1
    return RatingSummary(counts=counts, total=len(project.hara_entries))
