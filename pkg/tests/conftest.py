"""Shared fixtures: the two example projects used across the test suite."""

from pathlib import Path

import pytest

from saseval import Project
from saseval.dsl import load_project

FIXTURES = Path(__file__).parent / "fixtures"

UC1_FILES = [FIXTURES / "uc1" / "project.saseval"]
UC2_FILES = [FIXTURES / "uc2" / "library.saseval", FIXTURES / "uc2" / "attacks.saseval"]


@pytest.fixture(scope="session")
def uc1() -> Project:
    return load_project(UC1_FILES)


@pytest.fixture(scope="session")
def uc2() -> Project:
    return load_project(UC2_FILES)


def copy_project(files: list[Path], target: Path) -> Path:
    """Copy fixture files into target so tests can mutate them freely."""
    target.mkdir(parents=True, exist_ok=True)
    for src in files:
        (target / src.name).write_text(src.read_text())
    return target


def pytest_terminal_summary(terminalreporter):
    """Print one pass/fail line per acceptance check after the test run."""
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
