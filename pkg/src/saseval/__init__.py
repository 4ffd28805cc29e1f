"""Safety and security co-engineering toolkit.

Projects describe driving scenarios, assets, a threat library, HARA
ratings, safety goals and attack descriptions in a small text format.
The library computes ASILs, derives attack candidates through the
threat-type to attack-type mapping, checks coverage in both directions
and renders reports and test skeletons.
"""

from .asil import RatingSummary, asil_of, entry_asil, goal_asil, rating_summary
from .coverage import (
    CoverageReport,
    analyze,
    deductive_check,
    inductive_check,
    matrix_csv,
    traceability_matrix,
)
from .derive import AttackCandidate, adopt_candidate, derive_candidates
from .diagnostics import Diagnostic, DiagnosticsError, SourceSpan
from .dsl import format_project, load_project
from .emit import TestSkeleton, emit_report, emit_skeletons
from .model import (
    AsilLevel,
    Asset,
    AssetGroup,
    AssetType,
    AttackDescription,
    AttackStatus,
    AttackType,
    FailureMode,
    Function,
    HaraEntry,
    Justification,
    Project,
    Rating,
    RawEntities,
    SafetyGoal,
    Scenario,
    SubScenario,
    ThreatScenario,
    ThreatType,
    ValidationFailure,
    validate_project,
)
from .stride import attack_types_for, threat_types_for

__version__ = "0.1.0"

__all__ = [
    "AsilLevel",
    "Asset",
    "AssetGroup",
    "AssetType",
    "AttackCandidate",
    "AttackDescription",
    "AttackStatus",
    "AttackType",
    "CoverageReport",
    "Diagnostic",
    "DiagnosticsError",
    "FailureMode",
    "Function",
    "HaraEntry",
    "Justification",
    "Project",
    "Rating",
    "RatingSummary",
    "RawEntities",
    "SafetyGoal",
    "Scenario",
    "SourceSpan",
    "SubScenario",
    "TestSkeleton",
    "ThreatScenario",
    "ThreatType",
    "ValidationFailure",
    "adopt_candidate",
    "analyze",
    "asil_of",
    "attack_types_for",
    "deductive_check",
    "derive_candidates",
    "emit_report",
    "emit_skeletons",
    "entry_asil",
    "format_project",
    "goal_asil",
    "inductive_check",
    "load_project",
    "matrix_csv",
    "rating_summary",
    "threat_types_for",
    "traceability_matrix",
    "validate_project",
]
