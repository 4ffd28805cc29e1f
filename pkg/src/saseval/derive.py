"""Derivation of attack candidates from safety goals and the threat library.

Every (goal, threat, reachable attack type) triple yields one candidate, so
the candidate count is the product structure of the inputs, not a heuristic
selection. Candidates carry no attack text yet; adopting one supplies the
texts and turns it into a numbered attack description.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .model import AttackDescription, AttackStatus, AttackType, Project
from .stride import attack_types_for

ATTACK_ID_RE = re.compile(r"^AD(\d+)$")


class EmptyLibraryError(ValueError):
    """Derivation was asked for a project with no threat scenarios."""


class MissingFieldError(ValueError):
    """Adoption was attempted without all required attack texts."""

    def __init__(self, fields: list[str]) -> None:
        self.fields = fields
        super().__init__("missing required fields: " + ", ".join(fields))


@dataclass(frozen=True)
class AttackCandidate:
    """A derived, not yet elaborated attack against one goal."""

    id: str
    goal: str
    attack_type: AttackType
    threat: str
    interface: str
    status: AttackStatus = AttackStatus.PROPOSED


def derive_candidates(
    project: Project, goal_ids: Iterable[str] | None = None,
) -> list[AttackCandidate]:
    """Enumerate attack candidates for the selected goals.

    Order is deterministic: goals by id, threats by id, attack types in
    mapping row order. Candidate ids number repeats of the same
    (goal, attack type) pair, which occur when two threats share a
    reachable attack type.
    """
    if goal_ids is None:
        selected = list(project.goals)
    else:
        selected = list(goal_ids)
        unknown = [g for g in selected if g not in project.goals]
        if unknown:
            raise ValueError(f"unknown goal ids: {', '.join(sorted(unknown))}")
        selected.sort()
    if not project.threats:
        raise EmptyLibraryError("project has no threat scenarios to derive from")

    candidates: list[AttackCandidate] = []
    counters: dict[tuple[str, AttackType], int] = {}
    for goal_id in selected:
        for threat in project.threats.values():
            for attack_type in attack_types_for(threat.stride):
                key = (goal_id, attack_type)
                counters[key] = counters.get(key, 0) + 1
                candidates.append(AttackCandidate(
                    id=f"CAND-{goal_id}-{attack_type.value}-{counters[key]}",
                    goal=goal_id,
                    attack_type=attack_type,
                    threat=threat.id,
                    interface=threat.asset,
                ))
    return candidates


def next_attack_id(project: Project) -> str:
    """Smallest unused ADnn id following the highest existing one."""
    highest = 0
    for attack_id in project.attacks:
        match = ATTACK_ID_RE.match(attack_id)
        if match:
            highest = max(highest, int(match.group(1)))
    return f"AD{highest + 1:02d}"


def adopt_candidate(
    candidate: AttackCandidate,
    project: Project,
    *,
    title: str,
    precondition: str,
    expected_measures: str,
    success: str,
    fail: str,
    impl_notes: str | None = None,
) -> AttackDescription:
    """Elaborate a candidate into an attack description with a fresh id.

    All text fields are required; every missing one is reported together.
    The returned attack is not inserted into the project.
    """
    missing = [
        name for name, value in (
            ("title", title),
            ("precondition", precondition),
            ("expected_measures", expected_measures),
            ("success", success),
            ("fail", fail),
        )
        if not value.strip()
    ]
    if missing:
        raise MissingFieldError(missing)
    return AttackDescription(
        id=next_attack_id(project),
        title=title,
        goals=(candidate.goal,),
        interface=candidate.interface,
        threat=candidate.threat,
        attack_type=candidate.attack_type,
        precondition=precondition,
        expected_measures=expected_measures,
        success=success,
        fail=fail,
        impl_notes=impl_notes,
        status=AttackStatus.ADOPTED,
    )
