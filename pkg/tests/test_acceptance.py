"""Acceptance gate: nine checks, one printed pass/fail line each.

The pass/fail lines are collected here and printed by a terminal-summary
hook in conftest.py, so they stay visible under pytest's output capture.
Oracles live next to the tests: a hand-encoded rating lookup table, a
hand-typed threat-to-attack expectation, and fixture aggregates counted
by hand.
"""

import dataclasses
import random
from contextlib import contextmanager

import pytest

from saseval import (
    AsilLevel,
    AttackStatus,
    RawEntities,
    analyze,
    asil_of,
    attack_types_for,
    derive_candidates,
    format_project,
    goal_asil,
    load_project,
    rating_summary,
    validate_project,
)
from saseval.cli import main
from saseval.dsl import ParseFailure, lower_documents, parse_source
from saseval.dsl.printer import format_entities
from saseval.emit import make_skeleton
from saseval.stride import THREAT_TO_ATTACKS

from conftest import UC1_FILES, UC2_FILES, copy_project
from genproject import corrupt_source, random_entities, random_project
from iso_table import all_combinations, oracle_asil
from test_stride import EXPECTED as EXPECTED_MAPPING


RESULTS: list[str] = []


@contextmanager
def criterion(number: int, label: str):
    try:
        yield
    except BaseException:
        RESULTS.append(f"criterion {number}: FAIL - {label}")
        raise
    RESULTS.append(f"criterion {number}: PASS - {label}")


def test_01_asil_rule_matches_lookup_table():
    with criterion(1, "rating rule matches the hand-encoded lookup on every cell"):
        for s, e, c in all_combinations():
            assert asil_of(s, e, c).name == oracle_asil(s, e, c), (s, e, c)
        assert asil_of(3, 3, 3) is AsilLevel.C


def test_02_threat_attack_mapping_exact():
    with criterion(2, "threat-to-attack table exact, round trip over 22 labels"):
        got = {t.value: [a.value for a in row] for t, row in THREAT_TO_ATTACKS.items()}
        assert got == EXPECTED_MAPPING
        from saseval import AttackType, threat_types_for

        assert len(AttackType) == 22
        for attack in AttackType:
            threats = threat_types_for(attack)
            assert threats, attack
            for threat in threats:
                assert attack in attack_types_for(threat)


def test_03_first_project_aggregates(uc1):
    with criterion(3, "29-row fixture: counts {5,5,7,3,7,2} and goal levels C C D C B A"):
        summary = rating_summary(uc1)
        assert summary.counts == {"NA": 5, "QM": 5, "A": 7, "B": 3, "C": 7, "D": 2}
        assert summary.total == 29
        levels = {gid: goal_asil(g, uc1).name for gid, g in uc1.goals.items()}
        assert levels == {"SG01": "C", "SG02": "C", "SG03": "D",
                          "SG04": "C", "SG05": "B", "SG06": "A"}


def test_04_second_project_aggregates(uc2):
    with criterion(4, "20-row fixture: counts {7,5,2,4,1,1} and goal levels D B A A"):
        summary = rating_summary(uc2)
        assert summary.counts == {"NA": 7, "QM": 5, "A": 2, "B": 4, "C": 1, "D": 1}
        assert summary.total == 20
        levels = [goal_asil(g, uc2).name for g in uc2.goals.values()]
        assert levels == ["D", "B", "A", "A"]


def test_05_attack_fixtures_round_trip_to_skeletons(uc1, uc2):
    with criterion(5, "catalog attacks validate and their skeleton texts are verbatim"):
        flooding = uc1.attacks["AD20"]
        assert flooding.attack_type in attack_types_for(uc1.threats[flooding.threat].stride)
        skeleton = make_skeleton(flooding)
        assert skeleton.given == "Vehicle is approaching the construction side"
        assert skeleton.then_fail == "Shutdown of service"
        assert skeleton.then_pass == ("Security control identifies unwanted sender "
                                      "enforce change of frequency")

        keys = uc2.attacks["AD08"]
        assert keys.attack_type in attack_types_for(uc2.threats[keys.threat].stride)
        skeleton = make_skeleton(keys)
        assert skeleton.given == ("Vehicle is closed. Attacker has an authenticated "
                                  "communication link")
        assert skeleton.then_fail == "Open the vehicle"
        assert skeleton.then_pass == "Opening is rejected"


def test_06_coverage_gate_flips_on_missing_attack(uc2, tmp_path, capsys):
    with criterion(6, "removing any uniquely covering attack flips check from 0 to 2"):
        baseline = copy_project(UC2_FILES, tmp_path / "baseline")
        assert main(["check", "--project", str(baseline)]) == 0
        capsys.readouterr()

        for attack_id in uc2.attacks:
            remaining = {k: v for k, v in uc2.attacks.items() if k != attack_id}
            mutated = dataclasses.replace(uc2, attacks=remaining)
            report = analyze(mutated)
            assert report.has_gaps, f"{attack_id} does not uniquely cover anything"

            mutant_dir = copy_project(UC2_FILES, tmp_path / f"drop-{attack_id}")
            (mutant_dir / "attacks.saseval").write_text(format_entities(RawEntities(
                attacks=tuple(remaining.values()),
                justifications=tuple(uc2.justifications.values()),
            )))
            assert main(["check", "--project", str(mutant_dir)]) == 2, attack_id
            err = capsys.readouterr().err
            named = [g for g, _ in report.uncovered_goals] + list(report.uncovered_threats)
            for gap in named:
                assert gap in err, (attack_id, gap)


def test_07_parser_round_trip_and_corruption_robustness():
    with criterion(7, "1000 print/parse/lower round trips and 1000 corruption recoveries"):
        for seed in range(1000):
            project = random_project(random.Random(seed))
            text = format_project(project)
            document = parse_source(text, f"gen-{seed}.saseval")
            entities, _ = lower_documents([document])
            assert validate_project(entities) == project, seed

        base_text = None
        for seed in range(1000):
            rng = random.Random(10_000 + seed)
            if seed % 20 == 0 or base_text is None:
                base_text = format_project(random_project(rng))
                if not base_text:
                    base_text = None
                    continue
            corrupted = corrupt_source(base_text, rng)
            try:
                parse_source(corrupted, "corrupt.saseval")
            except ParseFailure as failure:
                assert failure.diagnostics, seed
                lines = corrupted.split("\n")
                for diag in failure.diagnostics:
                    span = diag.span
                    assert span is not None, (seed, diag)
                    assert 1 <= span.line <= len(lines), (seed, diag)
                    assert 1 <= span.column <= len(lines[span.line - 1]) + 1, (seed, diag)
            else:
                pytest.fail(f"corruption {seed} parsed cleanly:\n{corrupted}")


def test_08_candidate_count_matches_brute_force():
    with criterion(8, "candidate count equals the brute-force triple loop on 100 projects"):
        compared = 0
        seed = 0
        while compared < 100:
            seed += 1
            entities = random_entities(random.Random(50_000 + seed),
                                       max_goals=10, max_threats=20)
            if not entities.threats:
                continue
            project = validate_project(entities)
            expected = 0
            for _goal in project.goals:
                for threat in project.threats.values():
                    expected += len(attack_types_for(threat.stride))
            assert len(derive_candidates(project)) == expected, seed
            compared += 1


def test_09_report_output_is_deterministic(tmp_path):
    with criterion(9, "two report runs produce byte-identical report.md and matrix.csv"):
        project_dir = copy_project(UC1_FILES, tmp_path / "proj")
        first = tmp_path / "first"
        second = tmp_path / "second"
        assert main(["report", "--project", str(project_dir), "--out", str(first)]) == 0
        assert main(["report", "--project", str(project_dir), "--out", str(second)]) == 0
        for name in ("report.md", "matrix.csv"):
            assert (first / name).read_bytes() == (second / name).read_bytes()
