"""Command-line behavior: exit codes, diagnostics format, artifacts."""

import pytest

from saseval.cli import main

from conftest import UC1_FILES, UC2_FILES, copy_project


@pytest.fixture()
def uc1_dir(tmp_path):
    return copy_project(UC1_FILES, tmp_path / "uc1")


@pytest.fixture()
def uc2_dir(tmp_path):
    return copy_project(UC2_FILES, tmp_path / "uc2")


def test_check_passes_on_covered_project(uc1_dir, capsys):
    assert main(["check", "--project", str(uc1_dir)]) == 0
    assert capsys.readouterr().err == ""


def test_check_reports_gaps_with_exit_two(uc2_dir, capsys):
    attacks = uc2_dir / "attacks.saseval"
    text = attacks.read_text()
    start = text.index("attack AD08")
    end = text.index("attack AD09")
    attacks.write_text(text[:start] + text[end:])
    assert main(["check", "--project", str(uc2_dir)]) == 2
    err = capsys.readouterr().err
    assert "coverage: goal SG01 (ASIL D) has no attack" in err
    assert "coverage: threat T3.1.4 is neither attacked nor justified" in err


def test_check_threshold_filters_gaps(uc1_dir, capsys):
    project = uc1_dir / "project.saseval"
    text = project.read_text()
    start = text.index("attack AD23")
    end = text.index("attack AD24")
    project.write_text(text[:start] + text[end:])
    # SG06 is ASIL A, threat T2.1.5 stays uncovered independent of threshold.
    assert main(["check", "--project", str(uc1_dir)]) == 2
    assert "goal SG06" in capsys.readouterr().err
    assert main(["check", "--project", str(uc1_dir), "--threshold", "B"]) == 2
    assert "goal SG06" not in capsys.readouterr().err


def test_parse_errors_exit_one_with_positions(uc1_dir, capsys):
    (uc1_dir / "broken.saseval").write_text('goal G9 {\n  title "no colon"\n}\n')
    assert main(["check", "--project", str(uc1_dir)]) == 1
    err = capsys.readouterr().err
    assert "broken.saseval:2:" in err
    assert "error:" in err


def test_validation_errors_exit_one(uc1_dir, capsys):
    (uc1_dir / "extra.saseval").write_text(
        'threat T9 {\n  asset: GHOST\n  description: "d"\n  stride: Spoofing\n}\n'
        'justify T9 {\n  reason: "covered elsewhere"\n}\n')
    assert main(["check", "--project", str(uc1_dir)]) == 1
    assert "GHOST" in capsys.readouterr().err


def test_missing_project_directory_exits_three(tmp_path, capsys):
    assert main(["check", "--project", str(tmp_path / "nope")]) == 3
    assert "not found" in capsys.readouterr().err


def test_usage_error_exits_three(capsys):
    assert main(["check"]) == 3
    assert main(["frobnicate"]) == 3


def test_strict_turns_warnings_into_failure(uc2_dir, capsys):
    (uc2_dir / "extra.saseval").write_text(
        'justify T3.1.4 {\n  reason: "also handled by gateway hardening"\n}\n')
    assert main(["check", "--project", str(uc2_dir)]) == 0
    assert "warning:" in capsys.readouterr().err
    assert main(["check", "--project", str(uc2_dir), "--strict"]) == 1
    assert "error:" in capsys.readouterr().err


def test_asil_prints_summary_and_goals(uc1_dir, capsys):
    assert main(["asil", "--project", str(uc1_dir)]) == 0
    out = capsys.readouterr().out
    assert "N/A: 5" in out
    assert "No ASIL: 5" in out
    assert "ASIL C: 7" in out
    assert "total: 29" in out
    assert "SG03: D" in out


def test_stride_needs_no_project(capsys):
    assert main(["stride"]) == 0
    out = capsys.readouterr().out
    assert "Spoofing: Fake messages, Spoofing" in out
    assert "Elevation of privilege:" in out
    assert len(out.strip().splitlines()) == 6


def test_derive_writes_candidates(uc2_dir, tmp_path, capsys):
    out_dir = tmp_path / "out"
    assert main(["derive", "--project", str(uc2_dir), "--out", str(out_dir)]) == 0
    message = capsys.readouterr().out
    candidates = out_dir / "candidates.saseval"
    assert str(candidates) in message
    text = candidates.read_text()
    assert "status: Proposed" in text
    assert "CAND-SG01-IllegalAcquisition-2" in text


def test_derive_without_threats_exits_one(tmp_path, capsys):
    project = tmp_path / "empty"
    project.mkdir()
    (project / "goals.saseval").write_text(
        'function F1 {\n  name: "Open"\n}\n'
        'hara H1 {\n  function: F1\n  failure_mode: No\n'
        '  e: 4\n  s: 3\n  c: 3\n  hazard: "stuck"\n  goal: SG1\n}\n'
        'goal SG1 {\n  title: "Keep working"\n}\n')
    assert main(["derive", "--project", str(project)]) == 1
    captured = capsys.readouterr()
    assert "no threat scenarios" in captured.err
    assert captured.out == ""


def test_coverage_prints_summary(uc2_dir, capsys):
    assert main(["coverage", "--project", str(uc2_dir)]) == 0
    out = capsys.readouterr().out
    assert "## Deductive gaps" in out
    assert "## Inductive gaps" in out
    assert "justified threats: 2" in out
    assert "attacked threats: 3" in out


def test_report_writes_files(uc1_dir, tmp_path):
    out_dir = tmp_path / "out"
    assert main(["report", "--project", str(uc1_dir), "--out", str(out_dir)]) == 0
    assert (out_dir / "report.md").read_text().startswith("# Project report")
    assert (out_dir / "matrix.csv").read_text().startswith(",T2.1.1,")


def test_emit_tests_writes_skeletons(uc2_dir, tmp_path):
    out_dir = tmp_path / "out"
    assert main(["emit-tests", "--project", str(uc2_dir), "--out", str(out_dir)]) == 0
    names = sorted(p.name for p in (out_dir / "tests").iterdir())
    assert names == ["AD08.md", "AD09.md", "AD10.md", "AD11.md"]


def test_fmt_rewrites_to_canonical_form(uc1_dir):
    project = uc1_dir / "project.saseval"
    canonical = project.read_text()
    # Scramble whitespace and add a comment; content is unchanged.
    project.write_text("# temporary note\n" + canonical.replace("\n  ", "\n      "))
    assert main(["fmt", "--project", str(uc1_dir)]) == 0
    assert project.read_text() == canonical


def test_fmt_keeps_entities_in_their_files(uc2_dir):
    before = {p.name: p.read_text() for p in uc2_dir.iterdir()}
    assert main(["fmt", "--project", str(uc2_dir)]) == 0
    after = {p.name: p.read_text() for p in uc2_dir.iterdir()}
    assert set(after) == set(before)
    assert "attack AD08" in after["attacks.saseval"]
    assert "\nattack AD" not in after["library.saseval"]
    assert not after["library.saseval"].startswith("attack")


def test_fmt_on_canonical_files_is_a_no_op(uc1_dir):
    project = uc1_dir / "project.saseval"
    canonical = project.read_text()
    mtime = project.stat().st_mtime_ns
    assert main(["fmt", "--project", str(uc1_dir)]) == 0
    assert project.read_text() == canonical
    assert project.stat().st_mtime_ns == mtime


def test_invalid_project_blocks_all_commands(uc1_dir, capsys):
    (uc1_dir / "broken.saseval").write_text("goal G9 {\n")
    for command in ("asil", "derive", "coverage", "report", "emit-tests", "fmt"):
        assert main([command, "--project", str(uc1_dir)]) == 1, command
        capsys.readouterr()
