"""Domain vocabulary and the validated project aggregate.

The closed enumerations (threat types, attack types, guidewords, asset
groups) are the fixed methodology vocabulary; everything else is project
data. :func:`validate_project` turns raw entity lists into an immutable
:class:`Project` after checking referential integrity and the per-entity
invariants, reporting every violation rather than stopping at the first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum, IntEnum

from .diagnostics import Diagnostic, DiagnosticsError, sort_diagnostics

IDENTIFIER_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_.\-]*$")


class AsilLevel(IntEnum):
    """Automotive safety integrity level, ordered QM < A < B < C < D."""

    QM = 0
    A = 1
    B = 2
    C = 3
    D = 4


class ThreatType(Enum):
    """The six STRIDE threat categories, in fixed reporting order."""

    SPOOFING = "Spoofing"
    TAMPERING = "Tampering"
    REPUDIATION = "Repudiation"
    INFORMATION_DISCLOSURE = "InformationDisclosure"
    DENIAL_OF_SERVICE = "DenialOfService"
    ELEVATION_OF_PRIVILEGE = "ElevationOfPrivilege"

    @property
    def display(self) -> str:
        return _THREAT_DISPLAY[self]


_THREAT_DISPLAY = {
    ThreatType.SPOOFING: "Spoofing",
    ThreatType.TAMPERING: "Tampering",
    ThreatType.REPUDIATION: "Repudiation",
    ThreatType.INFORMATION_DISCLOSURE: "Information disclosure",
    ThreatType.DENIAL_OF_SERVICE: "Denial of service",
    ThreatType.ELEVATION_OF_PRIVILEGE: "Elevation of privilege",
}


class AttackType(Enum):
    """Concrete attack manifestations reachable from the STRIDE categories."""

    FAKE_MESSAGES = "FakeMessages"
    SPOOFING = "Spoofing"
    CORRUPT_DATA_OR_CODE = "CorruptDataOrCode"
    DELIVER_MALWARE = "DeliverMalware"
    ALTER = "Alter"
    INJECT = "Inject"
    CORRUPT_MESSAGES = "CorruptMessages"
    MANIPULATE = "Manipulate"
    CONFIG_CHANGE = "ConfigChange"
    REPLAY = "Replay"
    REPUDIATION_OF_MESSAGE_TRANSMISSION = "RepudiationOfMessageTransmission"
    DELAY = "Delay"
    LISTEN = "Listen"
    INTERCEPT = "Intercept"
    EAVESDROPPING = "Eavesdropping"
    ILLEGAL_ACQUISITION = "IllegalAcquisition"
    COVERT_CHANNEL = "CovertChannel"
    DISABLE = "Disable"
    DENIAL_OF_SERVICE = "DenialOfService"
    JAMMING = "Jamming"
    GAIN_ELEVATED_ACCESS = "GainElevatedAccess"
    GAIN_UNAUTHORIZED_ACCESS = "GainUnauthorizedAccess"

    @property
    def display(self) -> str:
        return _ATTACK_DISPLAY[self]


_ATTACK_DISPLAY = {
    AttackType.FAKE_MESSAGES: "Fake messages",
    AttackType.SPOOFING: "Spoofing",
    AttackType.CORRUPT_DATA_OR_CODE: "Corrupt data or code",
    AttackType.DELIVER_MALWARE: "Deliver malware",
    AttackType.ALTER: "Alter",
    AttackType.INJECT: "Inject",
    AttackType.CORRUPT_MESSAGES: "Corrupt messages",
    AttackType.MANIPULATE: "Manipulate",
    AttackType.CONFIG_CHANGE: "Config. change",
    AttackType.REPLAY: "Replay",
    AttackType.REPUDIATION_OF_MESSAGE_TRANSMISSION: "Repudiation of message transmission",
    AttackType.DELAY: "Delay",
    AttackType.LISTEN: "Listen",
    AttackType.INTERCEPT: "Intercept",
    AttackType.EAVESDROPPING: "Eavesdropping",
    AttackType.ILLEGAL_ACQUISITION: "Illegal acquisition",
    AttackType.COVERT_CHANNEL: "Covert channel",
    AttackType.DISABLE: "Disable",
    AttackType.DENIAL_OF_SERVICE: "Denial of service",
    AttackType.JAMMING: "Jamming",
    AttackType.GAIN_ELEVATED_ACCESS: "Gain elevated access",
    AttackType.GAIN_UNAUTHORIZED_ACCESS: "Gain unauthorized access",
}


class FailureMode(Enum):
    """HARA guidewords applied to each analyzed function."""

    NO = "No"
    UNINTENDED = "Unintended"
    TOO_EARLY = "TooEarly"
    TOO_LATE = "TooLate"
    LESS = "Less"
    MORE = "More"
    INVERTED = "Inverted"
    INTERMITTENT = "Intermittent"


class AssetGroup(Enum):
    HARDWARE = "Hardware"
    SOFTWARE = "Software"
    INFORMATION = "Information"
    PERSON = "Person"
    CLOUD_SERVICE = "CloudService"
    DEVICE = "Device"
    SERVER = "Server"
    SERVICE = "Service"


class AssetType(Enum):
    GENERIC = "Generic"
    USE_CASE_SPECIFIC = "UseCaseSpecific"
    GENERIC_CURRENT_VEHICLE = "GenericCurrentVehicle"
    GENERIC_ADAS_AD = "GenericAdasAd"
    GENERIC_CONNECTED = "GenericConnected"


class AttackStatus(Enum):
    PROPOSED = "Proposed"
    ADOPTED = "Adopted"
    REJECTED = "Rejected"


@dataclass(frozen=True)
class SubScenario:
    id: str
    title: str


@dataclass(frozen=True)
class Scenario:
    id: str
    title: str
    subscenarios: tuple[SubScenario, ...] = ()


@dataclass(frozen=True)
class Asset:
    """An attackable element, classified into one or more groups."""

    id: str
    name: str
    groups: frozenset[AssetGroup]
    asset_types: frozenset[AssetType] = frozenset()
    scenario: str | None = None


@dataclass(frozen=True)
class ThreatScenario:
    """A library threat against one asset, classified by STRIDE category."""

    id: str
    asset: str
    description: str
    stride: ThreatType


@dataclass(frozen=True)
class Function:
    id: str
    name: str


@dataclass(frozen=True)
class Rating:
    """An exposure/severity/controllability triple from the risk table."""

    e: int
    s: int
    c: int


@dataclass(frozen=True)
class HaraEntry:
    """One guideword rating row. ``rating`` is None for not-applicable rows."""

    id: str
    function: str
    failure_mode: FailureMode
    hazard: str
    rating: Rating | None
    goal: str | None = None


@dataclass(frozen=True)
class SafetyGoal:
    id: str
    title: str
    declared_asil: AsilLevel | None = None
    ftti_ms: int | None = None


@dataclass(frozen=True)
class AttackDescription:
    """A concept-level attack linking safety goals to a library threat."""

    id: str
    title: str
    goals: tuple[str, ...]
    interface: str
    threat: str
    attack_type: AttackType
    precondition: str
    expected_measures: str
    success: str
    fail: str
    impl_notes: str | None = None
    status: AttackStatus = AttackStatus.ADOPTED


@dataclass(frozen=True)
class Justification:
    """Records why a library threat is deliberately not attacked."""

    threat: str
    reason: str


@dataclass(frozen=True)
class RawEntities:
    """Parsed but unchecked entity lists, the input to validation."""

    scenarios: tuple[Scenario, ...] = ()
    assets: tuple[Asset, ...] = ()
    threats: tuple[ThreatScenario, ...] = ()
    functions: tuple[Function, ...] = ()
    hara_entries: tuple[HaraEntry, ...] = ()
    goals: tuple[SafetyGoal, ...] = ()
    attacks: tuple[AttackDescription, ...] = ()
    justifications: tuple[Justification, ...] = ()


@dataclass(frozen=True)
class Project:
    """Validated aggregate. Maps are keyed (and iterated) by sorted id."""

    scenarios: dict[str, Scenario] = field(default_factory=dict)
    assets: dict[str, Asset] = field(default_factory=dict)
    threats: dict[str, ThreatScenario] = field(default_factory=dict)
    functions: dict[str, Function] = field(default_factory=dict)
    hara_entries: dict[str, HaraEntry] = field(default_factory=dict)
    goals: dict[str, SafetyGoal] = field(default_factory=dict)
    attacks: dict[str, AttackDescription] = field(default_factory=dict)
    justifications: dict[str, Justification] = field(default_factory=dict)


class ValidationFailure(DiagnosticsError):
    """Raised by :func:`validate_project` with the complete violation list."""


def project_entities(project: Project) -> RawEntities:
    """Flatten a project back into raw entity lists (for re-validation)."""
    return RawEntities(
        scenarios=tuple(project.scenarios.values()),
        assets=tuple(project.assets.values()),
        threats=tuple(project.threats.values()),
        functions=tuple(project.functions.values()),
        hara_entries=tuple(project.hara_entries.values()),
        goals=tuple(project.goals.values()),
        attacks=tuple(project.attacks.values()),
        justifications=tuple(project.justifications.values()),
    )


def _sorted_map(items, key_of) -> dict:
    return {k: v for k, v in sorted((key_of(i), i) for i in items)}


class _Checker:
    def __init__(self) -> None:
        self.diagnostics: list[Diagnostic] = []

    def add(self, code: str, kind: str, entity_id: str, message: str,
            key: str | None = None, detail: str | None = None) -> None:
        self.diagnostics.append(Diagnostic(
            code=code, message=message, entity_kind=kind,
            entity_id=entity_id, key=key, detail=detail,
        ))

    def dedupe(self, kind: str, items, key_of):
        """Report duplicate ids within one entity kind; keep first occurrences."""
        seen: dict[str, object] = {}
        for item in items:
            item_id = key_of(item)
            if item_id in seen:
                self.add("DuplicateId", kind, item_id,
                         f"duplicate {kind} id {item_id!r}")
            else:
                seen[item_id] = item
        return seen


def validate_project(entities: RawEntities) -> Project:
    """Check all invariants and build the immutable project aggregate.

    Raises :class:`ValidationFailure` carrying one diagnostic per violation;
    a valid input yields a project whose maps iterate in sorted-id order.
    Validating the entities of an already valid project returns an equal
    project.
    """
    ck = _Checker()

    scenarios = ck.dedupe("scenario", entities.scenarios, lambda s: s.id)
    assets = ck.dedupe("asset", entities.assets, lambda a: a.id)
    threats = ck.dedupe("threat", entities.threats, lambda t: t.id)
    functions = ck.dedupe("function", entities.functions, lambda f: f.id)
    haras = ck.dedupe("hara", entities.hara_entries, lambda h: h.id)
    goals = ck.dedupe("goal", entities.goals, lambda g: g.id)
    attacks = ck.dedupe("attack", entities.attacks, lambda a: a.id)
    justs = ck.dedupe("justify", entities.justifications, lambda j: j.threat)

    for s in scenarios.values():
        if not s.title.strip():
            ck.add("EmptyText", "scenario", s.id,
                   f"scenario {s.id!r} has an empty title", key="title")
        sub_seen: set[str] = set()
        for sub in s.subscenarios:
            if sub.id in sub_seen:
                ck.add("DuplicateId", "scenario", s.id,
                       f"duplicate subscenario id {sub.id!r} in scenario {s.id!r}",
                       detail=sub.id)
            sub_seen.add(sub.id)

    for a in assets.values():
        if not a.groups:
            ck.add("EmptyGroup", "asset", a.id,
                   f"asset {a.id!r} must belong to at least one group", key="group")
        if a.scenario is not None and a.scenario not in scenarios:
            ck.add("DanglingReference", "asset", a.id,
                   f"asset {a.id!r} references unknown scenario {a.scenario!r}",
                   key="scenario", detail=a.scenario)

    for t in threats.values():
        if t.asset not in assets:
            ck.add("DanglingReference", "threat", t.id,
                   f"threat {t.id!r} references unknown asset {t.asset!r}",
                   key="asset", detail=t.asset)
        if not t.description.strip():
            ck.add("EmptyText", "threat", t.id,
                   f"threat {t.id!r} has an empty description", key="description")

    for h in haras.values():
        if h.function not in functions:
            ck.add("DanglingReference", "hara", h.id,
                   f"hara entry {h.id!r} references unknown function {h.function!r}",
                   key="function", detail=h.function)
        if h.rating is None:
            if h.goal is not None:
                ck.add("NaEntryHasGoal", "hara", h.id,
                       f"hara entry {h.id!r} is not applicable and must not name a goal",
                       key="goal")
        else:
            for field_name, value, lo, hi in (
                ("e", h.rating.e, 1, 4),
                ("s", h.rating.s, 0, 3),
                ("c", h.rating.c, 0, 3),
            ):
                if not lo <= value <= hi:
                    ck.add("OutOfRange", "hara", h.id,
                           f"hara entry {h.id!r}: {field_name}={value} outside {lo}..{hi}",
                           key=field_name)
        if h.goal is not None and h.goal not in goals:
            ck.add("DanglingReference", "hara", h.id,
                   f"hara entry {h.id!r} references unknown goal {h.goal!r}",
                   key="goal", detail=h.goal)

    for g in goals.values():
        if g.ftti_ms is not None and g.ftti_ms <= 0:
            ck.add("OutOfRange", "goal", g.id,
                   f"goal {g.id!r}: ftti_ms must be positive", key="ftti_ms")

    # Enum sets are closed, so the forward map import cannot fail at runtime;
    # imported here to keep the module graph acyclic (stride imports model).
    from .stride import attack_types_for

    for att in attacks.values():
        if not att.goals:
            ck.add("EmptyGoals", "attack", att.id,
                   f"attack {att.id!r} must name at least one goal", key="goals")
        for goal_id in att.goals:
            if goal_id not in goals:
                ck.add("DanglingReference", "attack", att.id,
                       f"attack {att.id!r} references unknown goal {goal_id!r}",
                       key="goals", detail=goal_id)
        if att.interface not in assets:
            ck.add("DanglingReference", "attack", att.id,
                   f"attack {att.id!r} references unknown asset {att.interface!r}",
                   key="interface", detail=att.interface)
        if att.threat not in threats:
            ck.add("DanglingReference", "attack", att.id,
                   f"attack {att.id!r} references unknown threat {att.threat!r}",
                   key="threat", detail=att.threat)
        else:
            stride_label = threats[att.threat].stride
            if att.attack_type not in attack_types_for(stride_label):
                ck.add("AttackTypeMismatch", "attack", att.id,
                       f"attack {att.id!r}: attack type {att.attack_type.value!r} is not "
                       f"reachable from threat type {stride_label.value!r}",
                       key="attack_type")

    for j in justs.values():
        if j.threat not in threats:
            ck.add("DanglingReference", "justify", j.threat,
                   f"justification references unknown threat {j.threat!r}",
                   key="threat", detail=j.threat)
        if not j.reason.strip():
            ck.add("EmptyText", "justify", j.threat,
                   f"justification for {j.threat!r} has an empty reason", key="reason")

    _check_declared_asils(ck, goals, haras)

    if ck.diagnostics:
        raise ValidationFailure(sort_diagnostics(ck.diagnostics))

    return Project(
        scenarios=_sorted_map(scenarios.values(), lambda s: s.id),
        assets=_sorted_map(assets.values(), lambda a: a.id),
        threats=_sorted_map(threats.values(), lambda t: t.id),
        functions=_sorted_map(functions.values(), lambda f: f.id),
        hara_entries=_sorted_map(haras.values(), lambda h: h.id),
        goals=_sorted_map(goals.values(), lambda g: g.id),
        attacks=_sorted_map(attacks.values(), lambda a: a.id),
        justifications=_sorted_map(justs.values(), lambda j: j.threat),
    )


def _check_declared_asils(ck: _Checker, goals: dict, haras: dict) -> None:
    # Deferred import: asil builds on the model types defined above.
    from .asil import asil_of

    for g in goals.values():
        if g.declared_asil is None:
            continue
        computed: AsilLevel | None = None
        usable = True
        for h in haras.values():
            if h.goal != g.id or h.rating is None:
                continue
            r = h.rating
            if not (1 <= r.e <= 4 and 0 <= r.s <= 3 and 0 <= r.c <= 3):
                usable = False  # range violation reported separately
                break
            level = asil_of(r.s, r.e, r.c)
            computed = level if computed is None else max(computed, level)
        if not usable:
            continue
        if computed is None:
            ck.add("DeclaredAsilMismatch", "goal", g.id,
                   f"goal {g.id!r} declares ASIL {g.declared_asil.name} but no rated "
                   f"hara entry references it", key="asil")
        elif computed != g.declared_asil:
            ck.add("DeclaredAsilMismatch", "goal", g.id,
                   f"goal {g.id!r} declares ASIL {g.declared_asil.name} but the rated "
                   f"entries yield ASIL {computed.name}", key="asil")
