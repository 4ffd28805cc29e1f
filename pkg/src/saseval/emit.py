"""Human-facing outputs: summary report and test-case skeletons.

Rendering is pure and deterministic; identical inputs produce identical
bytes, which keeps the outputs golden-file testable and diff-friendly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .asil import NoRatedEntriesError, RatingSummary, goal_asil
from .coverage import CoverageReport
from .model import AsilLevel, AttackDescription, AttackStatus, Project

SUMMARY_DISPLAY = {
    "NA": "N/A",
    "QM": "No ASIL",
    "A": "ASIL A",
    "B": "ASIL B",
    "C": "ASIL C",
    "D": "ASIL D",
}


@dataclass(frozen=True)
class TestSkeleton:
    """Given/When/Then outline derived from one attack description.

    The pass branch is the attack failing (the system withstands), the
    fail branch is the attack succeeding (the safety goal is violated).
    """

    attack: str
    given: str
    when: str
    then_pass: str
    then_fail: str
    tags: tuple[str, ...]
    notes: str | None = None


def make_skeleton(attack: AttackDescription) -> TestSkeleton:
    return TestSkeleton(
        attack=attack.id,
        given=attack.precondition,
        when=attack.title,
        then_pass=attack.fail,
        then_fail=attack.success,
        tags=tuple(attack.goals) + (attack.attack_type.value,),
        notes=attack.impl_notes,
    )


def emit_skeletons(project: Project) -> list[TestSkeleton]:
    """One skeleton per adopted attack, ordered by attack id."""
    return [make_skeleton(a) for a in project.attacks.values()
            if a.status is AttackStatus.ADOPTED]


def skeleton_markdown(skeleton: TestSkeleton) -> str:
    lines = [
        f"# {skeleton.attack}",
        "",
        "Tags: " + ", ".join(skeleton.tags),
        "",
        "## Given",
        "",
        skeleton.given,
        "",
        "## When",
        "",
        skeleton.when,
        "",
        "## Then (pass)",
        "",
        skeleton.then_pass,
        "",
        "## Then (fail)",
        "",
        skeleton.then_fail,
    ]
    if skeleton.notes is not None:
        lines += ["", "## Notes", "", skeleton.notes]
    return "\n".join(lines) + "\n"


def write_skeletons(project: Project, directory: str | Path) -> list[Path]:
    """Write one markdown skeleton file per adopted attack."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for skeleton in emit_skeletons(project):
        path = directory / f"{skeleton.attack}.md"
        path.write_text(skeleton_markdown(skeleton), encoding="utf-8")
        written.append(path)
    return written


def _goal_asil_label(project: Project, goal_id: str) -> str:
    try:
        level = goal_asil(project.goals[goal_id], project)
    except NoRatedEntriesError:
        return "-"
    return "No ASIL" if level is AsilLevel.QM else level.name


def emit_report(project: Project, coverage: CoverageReport,
                summary: RatingSummary) -> str:
    """Render the project summary report as markdown."""
    lines: list[str] = ["# Project report", ""]

    lines += ["## Rating Summary", ""]
    lines += ["| Rating | Count |", "| --- | --- |"]
    for label, count in summary.counts.items():
        lines.append(f"| {SUMMARY_DISPLAY[label]} | {count} |")
    lines += ["", f"Total ratings: {summary.total}", ""]

    lines += ["## Safety Goals", ""]
    if project.goals:
        lines += ["| Id | Title | ASIL |", "| --- | --- | --- |"]
        for goal in project.goals.values():
            lines.append(f"| {goal.id} | {goal.title} | "
                         f"{_goal_asil_label(project, goal.id)} |")
    else:
        lines.append("(none)")
    lines.append("")

    lines += ["## Coverage Gaps", ""]
    if coverage.has_gaps:
        for goal_id, level in coverage.uncovered_goals:
            lines.append(f"- goal {goal_id} (ASIL {level.name}, threshold "
                         f"{coverage.asil_threshold.name}) has no attack")
        for threat_id in coverage.uncovered_threats:
            lines.append(f"- threat {threat_id} is neither attacked nor justified")
    else:
        lines.append("(none)")
    lines.append("")

    lines += ["## Attack Inventory", ""]
    if project.attacks:
        lines += ["| Id | Status | Attack type | Threat | Goals | Title |",
                  "| --- | --- | --- | --- | --- | --- |"]
        for attack in project.attacks.values():
            lines.append(
                f"| {attack.id} | {attack.status.value} | "
                f"{attack.attack_type.value} | {attack.threat} | "
                f"{', '.join(attack.goals)} | {attack.title} |")
    else:
        lines.append("(none)")

    return "\n".join(lines) + "\n"
