"""Rating arithmetic against an independently keyed risk-graph table."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from saseval import AsilLevel, Project, SafetyGoal, asil_of, goal_asil, rating_summary
from saseval.asil import NoRatedEntriesError, OutOfRangeError

from iso_table import all_combinations, oracle_asil


def test_matches_oracle_on_every_combination():
    for s, e, c in all_combinations():
        assert asil_of(s, e, c).name == oracle_asil(s, e, c), (s, e, c)


def test_highest_and_lowest_cells():
    assert asil_of(3, 4, 3) is AsilLevel.D
    assert asil_of(1, 1, 1) is AsilLevel.QM


def test_zero_severity_or_controllability_is_qm():
    # S0 and C0 rows sit below the table and never reach a letter.
    assert asil_of(0, 4, 3) is AsilLevel.QM
    assert asil_of(3, 4, 0) is AsilLevel.QM


@pytest.mark.parametrize(
    "s, e, c",
    [(-1, 1, 1), (4, 1, 1), (1, 0, 1), (1, 5, 1), (1, 1, -1), (1, 1, 4)],
)
def test_out_of_range_components_raise(s, e, c):
    with pytest.raises(OutOfRangeError):
        asil_of(s, e, c)


@given(
    s=st.integers(0, 3),
    e=st.integers(1, 4),
    c=st.integers(0, 3),
    ds=st.integers(0, 3),
    de=st.integers(0, 3),
    dc=st.integers(0, 3),
)
def test_raising_any_component_never_lowers_the_level(s, e, c, ds, de, dc):
    s2, e2, c2 = min(s + ds, 3), min(e + de, 4), min(c + dc, 3)
    assert asil_of(s2, e2, c2) >= asil_of(s, e, c)


def test_levels_order_as_integers():
    assert AsilLevel.QM < AsilLevel.A < AsilLevel.B < AsilLevel.C < AsilLevel.D


def test_goal_asil_is_maximum_over_rated_entries(uc1: Project):
    assert goal_asil(uc1.goals["SG03"], uc1) is AsilLevel.D
    # SG06 collects only low-exposure rows, so it stays at A.
    assert goal_asil(uc1.goals["SG06"], uc1) is AsilLevel.A


def test_goal_without_rated_entries_raises(uc1: Project):
    orphan = SafetyGoal(id="SG99", title="Unrated goal")
    with pytest.raises(NoRatedEntriesError):
        goal_asil(orphan, uc1)


def test_rating_summary_counts_every_row_once(uc1: Project):
    summary = rating_summary(uc1)
    assert summary.total == len(uc1.hara_entries)
    assert sum(summary.counts.values()) == summary.total
    assert list(summary.counts) == ["NA", "QM", "A", "B", "C", "D"]


def test_rating_summary_distinguishes_na_from_qm(uc2: Project):
    summary = rating_summary(uc2)
    assert summary.counts["NA"] == 7
    assert summary.counts["QM"] == 5
