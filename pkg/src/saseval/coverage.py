"""Coverage checking in both directions, plus the traceability matrix.

The deductive direction asks whether every safety goal at or above an ASIL
threshold is exercised by at least one attack; the inductive direction asks
whether every library threat is either attacked or explicitly justified as
not applicable. Only adopted attacks count as coverage: proposed ones are
not yet agreed and rejected ones were ruled out.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .asil import goal_asil, NoRatedEntriesError
from .diagnostics import Diagnostic, WARNING
from .model import AsilLevel, AttackDescription, AttackStatus, Project


@dataclass(frozen=True)
class CoverageReport:
    """Result of one coverage analysis run over a validated project."""

    asil_threshold: AsilLevel
    uncovered_goals: tuple[tuple[str, AsilLevel], ...]
    uncovered_threats: tuple[str, ...]
    justified_threats: tuple[tuple[str, str], ...]
    matrix: dict[tuple[str, str], tuple[str, ...]] = field(default_factory=dict)
    warnings: tuple[Diagnostic, ...] = ()

    @property
    def has_gaps(self) -> bool:
        return bool(self.uncovered_goals or self.uncovered_threats)


def counted_attacks(project: Project) -> list[AttackDescription]:
    """The attacks that contribute to coverage, in id order."""
    return [a for a in project.attacks.values()
            if a.status is AttackStatus.ADOPTED]


def deductive_check(
    project: Project, threshold: AsilLevel = AsilLevel.A,
) -> list[tuple[str, AsilLevel]]:
    """Goals at or above the threshold that no adopted attack exercises.

    Goals without any applicable rated entry have no ASIL yet and are not
    checked against the threshold.
    """
    attacked: set[str] = set()
    for attack in counted_attacks(project):
        attacked.update(attack.goals)
    gaps: list[tuple[str, AsilLevel]] = []
    for goal in project.goals.values():
        try:
            level = goal_asil(goal, project)
        except NoRatedEntriesError:
            continue
        if level >= threshold and goal.id not in attacked:
            gaps.append((goal.id, level))
    return gaps


def inductive_check(
    project: Project,
) -> tuple[list[str], list[tuple[str, str]], list[Diagnostic]]:
    """Partition threats into uncovered and justified.

    Attacked threats are the remainder. A threat that is both attacked and
    justified counts as attacked and is flagged with a warning, because
    the justification claims the threat needs no attack while one exists.
    """
    attacked: set[str] = set()
    for attack in counted_attacks(project):
        attacked.add(attack.threat)

    justified: list[tuple[str, str]] = []
    uncovered: list[str] = []
    warnings: list[Diagnostic] = []
    for threat_id in project.threats:
        justification = project.justifications.get(threat_id)
        if threat_id in attacked:
            if justification is not None:
                warnings.append(Diagnostic(
                    code="JustifiedAndAttacked",
                    message=(f"threat {threat_id!r} is justified as not applicable "
                             f"but also has adopted attacks"),
                    severity=WARNING,
                    entity_kind="justify",
                    entity_id=threat_id,
                ))
        elif justification is not None:
            justified.append((threat_id, justification.reason))
        else:
            uncovered.append(threat_id)
    return uncovered, justified, warnings


def traceability_matrix(project: Project) -> dict[tuple[str, str], tuple[str, ...]]:
    """Map (goal id, threat id) to the ids of adopted attacks linking them.

    Only populated cells appear; attack ids within a cell are sorted.
    """
    cells: dict[tuple[str, str], list[str]] = {}
    for attack in counted_attacks(project):
        for goal_id in attack.goals:
            cells.setdefault((goal_id, attack.threat), []).append(attack.id)
    return {key: tuple(sorted(ids)) for key, ids in sorted(cells.items())}


def analyze(
    project: Project, threshold: AsilLevel = AsilLevel.A,
) -> CoverageReport:
    """Run both coverage directions and build the traceability matrix."""
    goal_gaps = deductive_check(project, threshold)
    uncovered, justified, warnings = inductive_check(project)
    return CoverageReport(
        asil_threshold=threshold,
        uncovered_goals=tuple(goal_gaps),
        uncovered_threats=tuple(uncovered),
        justified_threats=tuple(justified),
        matrix=traceability_matrix(project),
        warnings=tuple(warnings),
    )


def matrix_csv(project: Project) -> str:
    """Render the traceability matrix as CSV.

    Columns are threat ids, rows are goal ids, both sorted; a cell joins
    its attack ids with semicolons and stays empty when no attack links
    the pair.
    """
    matrix = traceability_matrix(project)
    goal_ids = sorted(project.goals)
    threat_ids = sorted(project.threats)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([""] + threat_ids)
    for goal_id in goal_ids:
        row = [goal_id]
        for threat_id in threat_ids:
            row.append(";".join(matrix.get((goal_id, threat_id), ())))
        writer.writerow(row)
    return out.getvalue()
