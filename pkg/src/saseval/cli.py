"""Command-line front end with CI-stable exit codes.

Exit codes: 0 success or no gaps, 1 parse or validation errors, 2 coverage
gaps (check and coverage commands), 3 I/O or usage errors. Diagnostics go
to standard error as ``file:line:col: severity: message``; generated
artifacts go under the output directory.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from . import asil as asil_mod
from . import coverage as coverage_mod
from . import derive as derive_mod
from . import emit as emit_mod
from .diagnostics import Diagnostic, DiagnosticsError, ERROR
from .dsl import format_entities, load_project_with_spans
from .dsl.lower import SpanIndex
from .model import AsilLevel, AttackDescription, Project, RawEntities, ThreatType
from .stride import attack_types_for

OK = 0
INVALID = 1
GAPS = 2
USAGE = 3

COMMANDS = ("check", "asil", "stride", "derive", "coverage", "report",
            "emit-tests", "fmt")


@dataclass(frozen=True)
class CliConfig:
    command: str
    project_dir: Path | None
    output_dir: Path
    asil_threshold: AsilLevel
    strict: bool


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with the I/O-error code."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="saseval",
                     description="Safety and security co-engineering toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="DIR", default="out",
                        help="output directory (default: ./out)")
    common.add_argument("--threshold", metavar="LEVEL", default="A",
                        choices=[level.name for level in AsilLevel],
                        help="deductive coverage threshold (default: A)")
    common.add_argument("--strict", action="store_true",
                        help="treat warnings as errors")
    project = argparse.ArgumentParser(add_help=False)
    project.add_argument("--project", metavar="DIR", required=True,
                         help="directory containing .saseval files")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    helps = {
        "check": "validate the project and gate on coverage gaps",
        "asil": "print the rating summary and per-goal ASILs",
        "stride": "print the threat-type to attack-type table",
        "derive": "write attack candidates for all goals",
        "coverage": "print deductive and inductive coverage results",
        "report": "write report.md and matrix.csv",
        "emit-tests": "write one test skeleton per adopted attack",
        "fmt": "rewrite project files in canonical form",
    }
    for name in COMMANDS:
        parents = [common] if name == "stride" else [project, common]
        subparser = sub.add_parser(name, parents=parents, help=helps[name])
        subparser.error = parser.error  # type: ignore[method-assign]
    return parser


def parse_config(argv: list[str]) -> CliConfig:
    args = build_parser().parse_args(argv)
    project_dir = getattr(args, "project", None)
    return CliConfig(
        command=args.command,
        project_dir=Path(project_dir) if project_dir is not None else None,
        output_dir=Path(args.out),
        asil_threshold=AsilLevel[args.threshold],
        strict=args.strict,
    )


def _report_diagnostics(diagnostics, strict: bool = False) -> None:
    for diagnostic in diagnostics:
        if strict and diagnostic.severity != ERROR:
            diagnostic = replace(diagnostic, severity=ERROR)
        print(diagnostic.render(), file=sys.stderr)


def _load(config: CliConfig) -> tuple[Project, SpanIndex]:
    directory = config.project_dir
    if not directory.is_dir():
        raise OSError(f"project directory not found: {directory}")
    files = sorted(directory.glob("*.saseval"))
    return load_project_with_spans(files)


def run(config: CliConfig) -> int:
    """Execute one command; returns the process exit code."""
    try:
        if config.command == "stride":
            return _cmd_stride()
        project, index = _load(config)
    except DiagnosticsError as failure:
        _report_diagnostics(failure.diagnostics)
        return INVALID
    except OSError as failure:
        print(f"saseval: {failure}", file=sys.stderr)
        return USAGE
    try:
        if config.command == "check":
            return _cmd_check(project, config)
        if config.command == "asil":
            return _cmd_asil(project)
        if config.command == "derive":
            return _cmd_derive(project, config)
        if config.command == "coverage":
            return _cmd_coverage(project, config)
        if config.command == "report":
            return _cmd_report(project, config)
        if config.command == "emit-tests":
            return _cmd_emit_tests(project, config)
        return _cmd_fmt(project, index, config)
    except OSError as failure:
        print(f"saseval: {failure}", file=sys.stderr)
        return USAGE


def _warnings_fail(warnings, config: CliConfig) -> bool:
    _report_diagnostics(warnings, strict=config.strict)
    return config.strict and bool(warnings)


def _cmd_check(project: Project, config: CliConfig) -> int:
    report = coverage_mod.analyze(project, config.asil_threshold)
    failed = _warnings_fail(report.warnings, config)
    for goal_id, level in report.uncovered_goals:
        print(f"coverage: goal {goal_id} (ASIL {level.name}) has no attack",
              file=sys.stderr)
    for threat_id in report.uncovered_threats:
        print(f"coverage: threat {threat_id} is neither attacked nor justified",
              file=sys.stderr)
    if failed:
        return INVALID
    return GAPS if report.has_gaps else OK


def _cmd_asil(project: Project) -> int:
    summary = asil_mod.rating_summary(project)
    for label in asil_mod.SUMMARY_LABELS:
        print(f"{emit_mod.SUMMARY_DISPLAY[label]}: {summary.counts[label]}")
    print(f"total: {summary.total}")
    if project.goals:
        print()
    for goal in project.goals.values():
        try:
            level = asil_mod.goal_asil(goal, project)
        except asil_mod.NoRatedEntriesError:
            print(f"{goal.id}: -")
        else:
            print(f"{goal.id}: {level.name}")
    return OK


def _cmd_stride() -> int:
    for threat in ThreatType:
        attacks = ", ".join(a.display for a in attack_types_for(threat))
        print(f"{threat.display}: {attacks}")
    return OK


def _cmd_derive(project: Project, config: CliConfig) -> int:
    try:
        candidates = derive_mod.derive_candidates(project)
    except derive_mod.EmptyLibraryError as failure:
        print(Diagnostic(code="EmptyLibrary", message=str(failure)).render(),
              file=sys.stderr)
        return INVALID
    stubs = tuple(
        AttackDescription(
            id=c.id, title="", goals=(c.goal,), interface=c.interface,
            threat=c.threat, attack_type=c.attack_type, precondition="",
            expected_measures="", success="", fail="", impl_notes=None,
            status=c.status,
        )
        for c in candidates
    )
    config.output_dir.mkdir(parents=True, exist_ok=True)
    path = config.output_dir / "candidates.saseval"
    path.write_text(format_entities(RawEntities(attacks=stubs)),
                    encoding="utf-8")
    print(f"{len(candidates)} candidates written to {path}")
    return OK


def _cmd_coverage(project: Project, config: CliConfig) -> int:
    report = coverage_mod.analyze(project, config.asil_threshold)
    failed = _warnings_fail(report.warnings, config)
    lines = ["## Deductive gaps", ""]
    if report.uncovered_goals:
        lines += [f"- goal {g} (ASIL {level.name}) has no attack"
                  for g, level in report.uncovered_goals]
    else:
        lines.append("(none)")
    lines += ["", "## Inductive gaps", ""]
    if report.uncovered_threats:
        lines += [f"- threat {t} is neither attacked nor justified"
                  for t in report.uncovered_threats]
    else:
        lines.append("(none)")
    attacked = (len(project.threats) - len(report.uncovered_threats)
                - len(report.justified_threats))
    lines += [
        "", "## Summary", "",
        f"threshold: {report.asil_threshold.name}",
        f"goals: {len(project.goals)}",
        f"uncovered goals: {len(report.uncovered_goals)}",
        f"threats: {len(project.threats)}",
        f"attacked threats: {attacked}",
        f"justified threats: {len(report.justified_threats)}",
        f"uncovered threats: {len(report.uncovered_threats)}",
    ]
    print("\n".join(lines))
    if failed:
        return INVALID
    return GAPS if report.has_gaps else OK


def _cmd_report(project: Project, config: CliConfig) -> int:
    report = coverage_mod.analyze(project, config.asil_threshold)
    summary = asil_mod.rating_summary(project)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    (config.output_dir / "report.md").write_text(
        emit_mod.emit_report(project, report, summary), encoding="utf-8")
    (config.output_dir / "matrix.csv").write_text(
        coverage_mod.matrix_csv(project), encoding="utf-8")
    return OK


def _cmd_emit_tests(project: Project, config: CliConfig) -> int:
    emit_mod.write_skeletons(project, config.output_dir / "tests")
    return OK


def _cmd_fmt(project: Project, index: SpanIndex, config: CliConfig) -> int:
    files: dict[str, set[tuple[str, str]]] = {}
    for path in sorted(config.project_dir.glob("*.saseval")):
        files.setdefault(str(path), set())
    for (kind, entity_id), spans in index.items():
        if kind == "subscenario":
            continue
        files.setdefault(spans.header.file, set()).add((kind, entity_id))
    for filename, members in files.items():
        entities = _entities_subset(project, members)
        canonical = format_entities(entities)
        path = Path(filename)
        if path.read_text(encoding="utf-8") != canonical:
            path.write_text(canonical, encoding="utf-8")
    return OK


def _entities_subset(project: Project,
                     members: set[tuple[str, str]]) -> RawEntities:
    def pick(kind: str, mapping: dict):
        return tuple(v for k, v in mapping.items() if (kind, k) in members)

    return RawEntities(
        scenarios=pick("scenario", project.scenarios),
        assets=pick("asset", project.assets),
        threats=pick("threat", project.threats),
        functions=pick("function", project.functions),
        hara_entries=pick("hara", project.hara_entries),
        goals=pick("goal", project.goals),
        attacks=pick("attack", project.attacks),
        justifications=pick("justify", project.justifications),
    )


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_config(argv)
    except SystemExit as failure:
        return failure.code if isinstance(failure.code, int) else USAGE
    return run(config)


def entry_point() -> None:
    sys.exit(main())
