"""Canonical rendering of projects back to source form.

The output is a normal form: block kinds in a fixed order, blocks sorted
by id, keys in a fixed per-kind order, two-space indentation. Formatting
already canonical text changes nothing, and reloading formatted output
reproduces the same project.
"""

from __future__ import annotations

from ..model import (
    Asset,
    AssetGroup,
    AssetType,
    AttackDescription,
    Function,
    HaraEntry,
    Justification,
    Project,
    RawEntities,
    SafetyGoal,
    Scenario,
    ThreatScenario,
    project_entities,
)

_KIND_ORDER = ("scenario", "asset", "threat", "function", "hara", "goal",
               "attack", "justify")


def _quote(text: str) -> str:
    escaped = (text.replace("\\", "\\\\")
                   .replace('"', '\\"')
                   .replace("\n", "\\n"))
    return f'"{escaped}"'


def _enum_set(values, enum_cls) -> str:
    ordered = [member.value for member in enum_cls if member in values]
    return "[" + ", ".join(ordered) + "]"


def _ident_list(values) -> str:
    return "[" + ", ".join(values) + "]"


class _Writer:
    def __init__(self) -> None:
        self.lines: list[str] = []

    def line(self, depth: int, text: str) -> None:
        self.lines.append("  " * depth + text)

    def blank(self) -> None:
        self.lines.append("")

    def entry(self, depth: int, key: str, rendered: str) -> None:
        self.line(depth, f"{key}: {rendered}")

    def text(self) -> str:
        if not self.lines:
            return ""
        return "\n".join(self.lines) + "\n"


def _write_scenario(w: _Writer, s: Scenario) -> None:
    w.line(0, f"scenario {s.id} {{")
    w.entry(1, "title", _quote(s.title))
    for sub in s.subscenarios:
        w.blank()
        w.line(1, f"subscenario {sub.id} {{")
        w.entry(2, "title", _quote(sub.title))
        w.line(1, "}")
    w.line(0, "}")


def _write_asset(w: _Writer, a: Asset) -> None:
    w.line(0, f"asset {a.id} {{")
    w.entry(1, "name", _quote(a.name))
    w.entry(1, "group", _enum_set(a.groups, AssetGroup))
    w.entry(1, "types", _enum_set(a.asset_types, AssetType))
    if a.scenario is not None:
        w.entry(1, "scenario", a.scenario)
    w.line(0, "}")


def _write_threat(w: _Writer, t: ThreatScenario) -> None:
    w.line(0, f"threat {t.id} {{")
    w.entry(1, "asset", t.asset)
    w.entry(1, "description", _quote(t.description))
    w.entry(1, "stride", t.stride.value)
    w.line(0, "}")


def _write_function(w: _Writer, f: Function) -> None:
    w.line(0, f"function {f.id} {{")
    w.entry(1, "name", _quote(f.name))
    w.line(0, "}")


def _write_hara(w: _Writer, h: HaraEntry) -> None:
    w.line(0, f"hara {h.id} {{")
    w.entry(1, "function", h.function)
    w.entry(1, "failure_mode", h.failure_mode.value)
    if h.rating is None:
        w.entry(1, "rating", "NA")
    else:
        w.entry(1, "e", str(h.rating.e))
        w.entry(1, "s", str(h.rating.s))
        w.entry(1, "c", str(h.rating.c))
    w.entry(1, "hazard", _quote(h.hazard))
    if h.goal is not None:
        w.entry(1, "goal", h.goal)
    w.line(0, "}")


def _write_goal(w: _Writer, g: SafetyGoal) -> None:
    w.line(0, f"goal {g.id} {{")
    w.entry(1, "title", _quote(g.title))
    if g.declared_asil is not None:
        w.entry(1, "asil", g.declared_asil.name)
    if g.ftti_ms is not None:
        w.entry(1, "ftti_ms", str(g.ftti_ms))
    w.line(0, "}")


def _write_attack(w: _Writer, a: AttackDescription) -> None:
    w.line(0, f"attack {a.id} {{")
    w.entry(1, "title", _quote(a.title))
    w.entry(1, "goals", _ident_list(a.goals))
    w.entry(1, "interface", a.interface)
    w.entry(1, "threat", a.threat)
    w.entry(1, "attack_type", a.attack_type.value)
    w.entry(1, "precondition", _quote(a.precondition))
    w.entry(1, "expected_measures", _quote(a.expected_measures))
    w.entry(1, "success", _quote(a.success))
    w.entry(1, "fail", _quote(a.fail))
    if a.impl_notes is not None:
        w.entry(1, "impl_notes", _quote(a.impl_notes))
    w.entry(1, "status", a.status.value)
    w.line(0, "}")


def _write_justify(w: _Writer, j: Justification) -> None:
    w.line(0, f"justify {j.threat} {{")
    w.entry(1, "reason", _quote(j.reason))
    w.line(0, "}")


_WRITERS = {
    "scenario": (_write_scenario, lambda e: e.scenarios, lambda x: x.id),
    "asset": (_write_asset, lambda e: e.assets, lambda x: x.id),
    "threat": (_write_threat, lambda e: e.threats, lambda x: x.id),
    "function": (_write_function, lambda e: e.functions, lambda x: x.id),
    "hara": (_write_hara, lambda e: e.hara_entries, lambda x: x.id),
    "goal": (_write_goal, lambda e: e.goals, lambda x: x.id),
    "attack": (_write_attack, lambda e: e.attacks, lambda x: x.id),
    "justify": (_write_justify, lambda e: e.justifications, lambda x: x.threat),
}


def format_entities(entities: RawEntities) -> str:
    """Render entity lists in canonical order; empty input yields ''."""
    writer = _Writer()
    first = True
    for kind in _KIND_ORDER:
        write, select, key_of = _WRITERS[kind]
        for item in sorted(select(entities), key=key_of):
            if not first:
                writer.blank()
            first = False
            write(writer, item)
    return writer.text()


def format_project(project: Project) -> str:
    """Render a validated project in canonical form."""
    return format_entities(project_entities(project))
