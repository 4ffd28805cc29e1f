"""Lowering of parsed blocks into validated domain entities.

This layer owns the per-kind key schemas: required keys, value types, enum
labels and integer ranges. Schema violations are reported with the span of
the offending key or value, the faulty entity is dropped, and lowering
continues so every problem in a file shows up in one run. Domain-level
validation then runs on the surviving entities, and its diagnostics are
mapped back to source spans through the collected span index.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Iterable

from ..diagnostics import Diagnostic, DiagnosticsError, SourceSpan, sort_diagnostics
from ..model import (
    Asset,
    AssetGroup,
    AssetType,
    AsilLevel,
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
from .parser import Block, Document, ListValue, ParseFailure, Scalar, parse_path


class LoweringFailure(DiagnosticsError):
    """Raised when blocks violate the key schemas."""


@dataclass
class BlockSpans:
    """Source locations for one block: header, per-key values, list items."""

    header: SourceSpan
    keys: dict[str, SourceSpan] = dataclass_field(default_factory=dict)
    items: dict[str, list[tuple[str, SourceSpan]]] = dataclass_field(
        default_factory=dict)


SpanIndex = dict[tuple[str, str], BlockSpans]


class _BlockReader:
    """Typed key access over one block's entries, with diagnostics."""

    def __init__(self, block: Block, diagnostics: list[Diagnostic],
                 spans: BlockSpans) -> None:
        self.block = block
        self.diagnostics = diagnostics
        self.spans = spans
        self.entries = {e.key: e for e in block.entries}
        self.taken: set[str] = set()
        self.failed = False

    def error(self, code: str, message: str, span: SourceSpan) -> None:
        self.diagnostics.append(Diagnostic(code=code, message=message, span=span))
        self.failed = True

    def _take(self, key: str, required: bool):
        self.taken.add(key)
        entry = self.entries.get(key)
        if entry is None:
            if required:
                self.error("MissingKey",
                           f"{self.block.kind} block {self.block.name!r} "
                           f"is missing required key {key!r}",
                           self.block.span)
            return None
        return entry

    def has(self, key: str) -> bool:
        return key in self.entries

    def string(self, key: str, required: bool = True) -> str | None:
        entry = self._take(key, required)
        if entry is None:
            return None
        value = entry.value
        if not isinstance(value, Scalar) or value.kind != "string":
            self.error("WrongValueType",
                       f"key {key!r} expects a string", _value_span(value))
            return None
        self.spans.keys[key] = value.span
        return value.text

    def ident(self, key: str, required: bool = True) -> str | None:
        entry = self._take(key, required)
        if entry is None:
            return None
        value = entry.value
        if not isinstance(value, Scalar) or value.kind != "ident":
            self.error("WrongValueType",
                       f"key {key!r} expects an identifier", _value_span(value))
            return None
        self.spans.keys[key] = value.span
        return value.text

    def enum(self, key: str, enum_cls, what: str, required: bool = True):
        entry = self._take(key, required)
        if entry is None:
            return None
        value = entry.value
        if not isinstance(value, Scalar) or value.kind != "ident":
            self.error("WrongValueType",
                       f"key {key!r} expects an identifier", _value_span(value))
            return None
        self.spans.keys[key] = value.span
        try:
            return enum_cls(value.text)
        except ValueError:
            self.error("BadEnumValue",
                       f"unknown {what} {value.text!r} (expected one of "
                       f"{_labels(enum_cls)})", value.span)
            return None

    def integer(self, key: str, lo: int, hi: int | None,
                required: bool = True) -> int | None:
        entry = self._take(key, required)
        if entry is None:
            return None
        value = entry.value
        if not isinstance(value, Scalar) or value.kind != "int":
            self.error("WrongValueType",
                       f"key {key!r} expects an integer", _value_span(value))
            return None
        self.spans.keys[key] = value.span
        number = value.int_value
        if number < lo or (hi is not None and number > hi):
            bound = f"at least {lo}" if hi is None else f"between {lo} and {hi}"
            self.error("BadIntRange",
                       f"key {key!r} must be {bound}, got {number}", value.span)
            return None
        return number

    def ident_list(self, key: str, enum_cls=None, what: str = "identifier",
                   required: bool = True):
        entry = self._take(key, required)
        if entry is None:
            return None
        value = entry.value
        if not isinstance(value, ListValue):
            self.error("WrongValueType",
                       f"key {key!r} expects a list", _value_span(value))
            return None
        self.spans.keys[key] = value.span
        recorded = self.spans.items.setdefault(key, [])
        result = []
        ok = True
        for item in value.items:
            if not isinstance(item, Scalar) or item.kind != "ident":
                self.error("WrongValueType",
                           f"list {key!r} expects identifiers", _value_span(item))
                ok = False
                continue
            recorded.append((item.text, item.span))
            if enum_cls is None:
                result.append(item.text)
                continue
            try:
                result.append(enum_cls(item.text))
            except ValueError:
                self.error("BadEnumValue",
                           f"unknown {what} {item.text!r} (expected one of "
                           f"{_labels(enum_cls)})", item.span)
                ok = False
        if not ok:
            return None
        return tuple(result)

    def finish(self) -> None:
        """Report keys the schema does not know about."""
        for entry in self.block.entries:
            if entry.key not in self.taken:
                self.diagnostics.append(Diagnostic(
                    code="UnknownKey",
                    message=(f"unknown key {entry.key!r} in "
                             f"{self.block.kind} block"),
                    span=entry.key_span))
                self.failed = True


def _value_span(value) -> SourceSpan:
    if isinstance(value, (Scalar, ListValue)):
        return value.span
    return SourceSpan("", 1, 1)


def _labels(enum_cls) -> str:
    return ", ".join(member.value for member in enum_cls)


def _lower_scenario(block: Block, diags: list[Diagnostic],
                    index: SpanIndex) -> Scenario | None:
    spans = BlockSpans(header=block.span)
    reader = _BlockReader(block, diags, spans)
    title = reader.string("title")
    reader.finish()
    children: list[SubScenario] = []
    ok = not reader.failed
    for child in block.children:
        child_spans = BlockSpans(header=child.span)
        child_reader = _BlockReader(child, diags, child_spans)
        child_title = child_reader.string("title")
        child_reader.finish()
        if child_reader.failed:
            ok = False
            continue
        index[("subscenario", child.name)] = child_spans
        children.append(SubScenario(id=child.name, title=child_title))
    if not ok or title is None:
        return None
    index[("scenario", block.name)] = spans
    return Scenario(id=block.name, title=title, subscenarios=tuple(children))


def _lower_asset(block: Block, diags: list[Diagnostic],
                 index: SpanIndex) -> Asset | None:
    spans = BlockSpans(header=block.span)
    reader = _BlockReader(block, diags, spans)
    name = reader.string("name")
    groups = reader.ident_list("group", AssetGroup, "asset group")
    types = reader.ident_list("types", AssetType, "asset type")
    scenario = reader.ident("scenario", required=False)
    reader.finish()
    if reader.failed:
        return None
    index[("asset", block.name)] = spans
    return Asset(
        id=block.name, name=name, groups=frozenset(groups),
        asset_types=frozenset(types), scenario=scenario)


def _lower_threat(block: Block, diags: list[Diagnostic],
                  index: SpanIndex) -> ThreatScenario | None:
    spans = BlockSpans(header=block.span)
    reader = _BlockReader(block, diags, spans)
    asset = reader.ident("asset")
    description = reader.string("description")
    stride = reader.enum("stride", ThreatType, "threat category")
    reader.finish()
    if reader.failed:
        return None
    index[("threat", block.name)] = spans
    return ThreatScenario(
        id=block.name, asset=asset, description=description, stride=stride)


def _lower_function(block: Block, diags: list[Diagnostic],
                    index: SpanIndex) -> Function | None:
    spans = BlockSpans(header=block.span)
    reader = _BlockReader(block, diags, spans)
    name = reader.string("name")
    reader.finish()
    if reader.failed:
        return None
    index[("function", block.name)] = spans
    return Function(id=block.name, name=name)


def _lower_hara(block: Block, diags: list[Diagnostic],
                index: SpanIndex) -> HaraEntry | None:
    spans = BlockSpans(header=block.span)
    reader = _BlockReader(block, diags, spans)
    function = reader.ident("function")
    failure_mode = reader.enum("failure_mode", FailureMode, "failure mode")
    hazard = reader.string("hazard")
    goal = reader.ident("goal", required=False)

    rating: Rating | None = None
    if reader.has("rating"):
        label = reader.ident("rating")
        if label is not None and label != "NA":
            reader.error("BadEnumValue",
                         f"key 'rating' accepts only 'NA', got {label!r}",
                         spans.keys.get("rating", block.span))
        components = [k for k in ("e", "s", "c") if reader.has(k)]
        if components:
            reader.error(
                "ConflictingKeys",
                "a not-applicable entry must not also give "
                + ", ".join(repr(k) for k in components),
                spans.keys.get("rating", block.span))
        for key in components:
            reader.integer(key, 0, 9, required=False)
    else:
        e = reader.integer("e", 1, 4)
        s = reader.integer("s", 0, 3)
        c = reader.integer("c", 0, 3)
        if None not in (e, s, c):
            rating = Rating(e=e, s=s, c=c)
    reader.finish()
    if reader.failed:
        return None
    index[("hara", block.name)] = spans
    return HaraEntry(
        id=block.name, function=function, failure_mode=failure_mode,
        hazard=hazard, rating=rating, goal=goal)


def _lower_goal(block: Block, diags: list[Diagnostic],
                index: SpanIndex) -> SafetyGoal | None:
    spans = BlockSpans(header=block.span)
    reader = _BlockReader(block, diags, spans)
    title = reader.string("title")
    declared = None
    if reader.has("asil"):
        label = reader.ident("asil")
        if label is not None:
            if label in AsilLevel.__members__:
                declared = AsilLevel[label]
            else:
                reader.error("BadEnumValue",
                             f"unknown ASIL {label!r} (expected one of QM, A, "
                             f"B, C, D)", spans.keys.get("asil", block.span))
    ftti = reader.integer("ftti_ms", 1, None, required=False)
    reader.finish()
    if reader.failed:
        return None
    index[("goal", block.name)] = spans
    return SafetyGoal(id=block.name, title=title, declared_asil=declared,
                      ftti_ms=ftti)


def _lower_attack(block: Block, diags: list[Diagnostic],
                  index: SpanIndex) -> AttackDescription | None:
    spans = BlockSpans(header=block.span)
    reader = _BlockReader(block, diags, spans)
    title = reader.string("title")
    goals = reader.ident_list("goals")
    interface = reader.ident("interface")
    threat = reader.ident("threat")
    attack_type = reader.enum("attack_type", AttackType, "attack type")
    precondition = reader.string("precondition")
    expected_measures = reader.string("expected_measures")
    success = reader.string("success")
    fail = reader.string("fail")
    impl_notes = reader.string("impl_notes", required=False)
    status = reader.enum("status", AttackStatus, "attack status",
                         required=False)
    reader.finish()
    if reader.failed:
        return None
    index[("attack", block.name)] = spans
    return AttackDescription(
        id=block.name, title=title, goals=goals, interface=interface,
        threat=threat, attack_type=attack_type, precondition=precondition,
        expected_measures=expected_measures, success=success, fail=fail,
        impl_notes=impl_notes,
        status=status if status is not None else AttackStatus.ADOPTED)


def _lower_justify(block: Block, diags: list[Diagnostic],
                   index: SpanIndex) -> Justification | None:
    spans = BlockSpans(header=block.span)
    reader = _BlockReader(block, diags, spans)
    reason = reader.string("reason")
    reader.finish()
    if reader.failed:
        return None
    index[("justify", block.name)] = spans
    return Justification(threat=block.name, reason=reason)


_LOWERERS = {
    "scenario": _lower_scenario,
    "asset": _lower_asset,
    "threat": _lower_threat,
    "function": _lower_function,
    "hara": _lower_hara,
    "goal": _lower_goal,
    "attack": _lower_attack,
    "justify": _lower_justify,
}

_KIND_FIELDS = {
    "scenario": "scenarios",
    "asset": "assets",
    "threat": "threats",
    "function": "functions",
    "hara": "hara_entries",
    "goal": "goals",
    "attack": "attacks",
    "justify": "justifications",
}


def lower_documents(
    documents: Iterable[Document],
) -> tuple[RawEntities, SpanIndex]:
    """Lower parsed documents to raw entities plus their span index.

    Duplicate ids across documents keep the first occurrence. Raises
    :class:`LoweringFailure` when any block violates its schema.
    """
    diagnostics: list[Diagnostic] = []
    index: SpanIndex = {}
    collected: dict[str, list] = {f: [] for f in _KIND_FIELDS.values()}
    seen: set[tuple[str, str]] = set()
    for document in documents:
        for block in document.blocks:
            key = (block.kind, block.name)
            if key in seen:
                diagnostics.append(Diagnostic(
                    code="DuplicateId",
                    message=f"duplicate {block.kind} id {block.name!r}",
                    span=block.span))
                continue
            seen.add(key)
            entity = _LOWERERS[block.kind](block, diagnostics, index)
            if entity is not None:
                collected[_KIND_FIELDS[block.kind]].append(entity)
    if diagnostics:
        raise LoweringFailure(sort_diagnostics(diagnostics))
    return RawEntities(**{f: tuple(v) for f, v in collected.items()}), index


def _enrich(diagnostics, index: SpanIndex) -> list[Diagnostic]:
    """Attach source spans to domain diagnostics via the span index."""
    enriched = []
    for diag in diagnostics:
        if diag.span is not None or diag.entity_kind is None:
            enriched.append(diag)
            continue
        spans = index.get((diag.entity_kind, diag.entity_id))
        if spans is None:
            enriched.append(diag)
            continue
        span = spans.header
        if diag.key is not None:
            if diag.detail is not None and diag.key in spans.items:
                for text, item_span in spans.items[diag.key]:
                    if text == diag.detail:
                        span = item_span
                        break
                else:
                    span = spans.keys.get(diag.key, spans.header)
            else:
                span = spans.keys.get(diag.key, spans.header)
        enriched.append(Diagnostic(
            code=diag.code, message=diag.message, severity=diag.severity,
            span=span, entity_kind=diag.entity_kind, entity_id=diag.entity_id,
            key=diag.key, detail=diag.detail))
    return sort_diagnostics(enriched)


def load_project_with_spans(
    paths: Iterable[str | Path],
) -> tuple[Project, SpanIndex]:
    """Parse, lower and validate a set of project files.

    All files are parsed before any failure is raised, so one broken file
    does not hide errors in another. Parse errors raise
    :class:`ParseFailure`, schema errors :class:`LoweringFailure` and
    domain errors :class:`ValidationFailure`, each with source positions.
    """
    parse_diags: list[Diagnostic] = []
    blocks: list[Block] = []
    for path in paths:
        try:
            document = parse_path(path)
        except ParseFailure as failure:
            parse_diags.extend(failure.diagnostics)
            blocks.extend(failure.document.blocks)
        else:
            blocks.extend(document.blocks)
    if parse_diags:
        raise ParseFailure(sort_diagnostics(parse_diags),
                           Document(tuple(blocks)))
    entities, index = lower_documents([Document(tuple(blocks))])
    try:
        project = validate_project(entities)
    except ValidationFailure as failure:
        raise ValidationFailure(_enrich(failure.diagnostics, index)) from None
    return project, index


def load_project(paths: Iterable[str | Path]) -> Project:
    """Load and validate a project from one or more files."""
    project, _ = load_project_with_spans(paths)
    return project
