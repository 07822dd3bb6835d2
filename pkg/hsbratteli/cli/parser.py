"""
Spec files: a flat keyed text format.

    # class-C diagram with a_n = 2 * 2**n
    [diagram]
    support = -1..1
    rules = constant(1), geometric(2,2), constant(1)

    [order l2r]
    kind = left-to-right

    [odometer vertical]
    offsets = 0

    [window pair]
    width = constant(2)

    [kernel uniform]
    kind = uniform

A top-level ``diagram = builtin:triadic`` or
``diagram = builtin:classc(RULE)`` replaces the ``[diagram]`` section.
"""

import logging
import re
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TypeVar

from hsbratteli.analysis.measures import ConstantVec, FiniteVec, MeasureVector
from hsbratteli.core.errors import BratteliError, SpecSemanticError, SpecSyntaxError
from hsbratteli.core.settings import get_settings
from hsbratteli.models.band import Band
from hsbratteli.models.diagram import (
    DiagramSpec,
    ExplicitLevels,
    RuleDiagram,
    TriadicLevels,
    class_c,
)
from hsbratteli.models.kernel import MarkovKernel
from hsbratteli.models.order import OrderKind, OrderSpec
from hsbratteli.models.path import Edge, FinitePath, Slot
from hsbratteli.models.rules import (
    Affine,
    Constant,
    ExplicitThenPeriodic,
    Geometric,
    OffsetSchedule,
    SequenceRule,
)
from hsbratteli.models.subdiagram import OdometerSpec, WindowFamily

logger = logging.getLogger(__name__)

T = TypeVar("T")

SECTION = re.compile(r"^\[\s*([A-Za-z][\w-]*)(?:\s+([A-Za-z0-9][\w-]*))?\s*\]$")
ENTRY = re.compile(r"^([A-Za-z][\w.]*)\s*=\s*(.*)$")
RULE = re.compile(r"^(constant|affine|geometric|explicit)\s*\((.*)\)$")
SUPPORT = re.compile(r"^(-?\d+)\s*\.\.\s*(-?\d+)$")
CLASSC = re.compile(r"^builtin:classc\s*\((.*)\)$")

NAMED_SECTIONS = ("order", "odometer", "window", "kernel")


@dataclass(frozen=True)
class SpecDocument:
    diagram: DiagramSpec
    orders: dict[str, OrderSpec] = field(default_factory=dict)
    odometers: dict[str, OdometerSpec] = field(default_factory=dict)
    windows: dict[str, WindowFamily] = field(default_factory=dict)
    kernels: dict[str, MarkovKernel] = field(default_factory=dict)

    def order(self, name: str) -> OrderSpec:
        return _lookup(self.orders, "order", name)

    def odometer(self, name: str) -> OdometerSpec:
        return _lookup(self.odometers, "odometer", name)

    def window(self, name: str) -> WindowFamily:
        return _lookup(self.windows, "window", name)

    def kernel(self, name: str) -> MarkovKernel:
        return _lookup(self.kernels, "kernel", name)


def _lookup(table: dict[str, T], kind: str, name: str) -> T:
    if name not in table:
        raise SpecSemanticError(
            f"no {kind} named {name!r}; defined: {', '.join(sorted(table)) or 'none'}"
        )
    return table[name]


@dataclass
class _Entry:
    key: str
    value: str
    line: int
    column: int


@dataclass
class _Section:
    kind: str
    name: str | None
    line: int
    entries: list[_Entry] = field(default_factory=list)

    def get(self, key: str) -> _Entry | None:
        found = [e for e in self.entries if e.key == key]
        if len(found) > 1:
            raise SpecSemanticError(f"key {key!r} given twice in [{self.kind}]", found[1].line)
        return found[0] if found else None

    def require(self, key: str) -> _Entry:
        entry = self.get(key)
        if entry is None:
            raise SpecSemanticError(f"[{self.kind}] needs a {key!r} entry", self.line)
        return entry

    def all(self, key: str) -> list[_Entry]:
        return [e for e in self.entries if e.key == key]

    def check_keys(self, allowed: set[str]) -> None:
        for entry in self.entries:
            if entry.key not in allowed:
                raise SpecSyntaxError(f"unknown key {entry.key!r} in [{self.kind}]", entry.line)


# Token-level helpers


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    parts.append("".join(current).strip())
    return parts


def _number(token: str, entry: _Entry) -> Fraction:
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError):
        column = entry.column + max(entry.value.find(token.strip()), 0)
        raise SpecSyntaxError(f"not a rational number: {token.strip()!r}", entry.line, column) from None


def _integer(token: str, entry: _Entry) -> int:
    value = _number(token, entry)
    if value.denominator != 1:
        raise SpecSyntaxError(f"not an integer: {token.strip()!r}", entry.line, entry.column)
    return value.numerator


def _numbers(text: str, entry: _Entry) -> list[Fraction]:
    return [_number(token, entry) for token in text.split(",") if token.strip()]


def _semantic(build: Callable[[], T], line: int) -> T:
    try:
        return build()
    except (SpecSyntaxError, SpecSemanticError):
        raise
    except BratteliError as exc:
        raise SpecSemanticError(exc.message, line) from exc


def parse_rule(text: str, entry: _Entry) -> SequenceRule:
    match = RULE.match(text.strip())
    if match is None:
        raise SpecSyntaxError(f"not a sequence rule: {text.strip()!r}", entry.line, entry.column)
    name, body = match.groups()
    if name == "explicit":
        prefix_text, _, cycle_text = body.rpartition("|") if "|" in body else ("", "", body)
        prefix, cycle = _numbers(prefix_text, entry), _numbers(cycle_text, entry)
        return _semantic(lambda: ExplicitThenPeriodic(tuple(prefix), tuple(cycle)), entry.line)
    args = _numbers(body, entry)
    expected = {"constant": 1, "affine": 2, "geometric": 2}[name]
    if len(args) != expected:
        raise SpecSyntaxError(
            f"{name} takes {expected} argument(s), got {len(args)}", entry.line, entry.column
        )
    builders = {"constant": Constant, "affine": Affine, "geometric": Geometric}
    return _semantic(lambda: builders[name](*args), entry.line)


def parse_schedule(text: str, entry: _Entry) -> OffsetSchedule:
    prefix_text, _, cycle_text = text.rpartition("|") if "|" in text else ("", "", text)
    prefix = [_integer(t, entry) for t in prefix_text.split(",") if t.strip()]
    cycle = [_integer(t, entry) for t in cycle_text.split(",") if t.strip()]
    return _semantic(lambda: OffsetSchedule(tuple(prefix), tuple(cycle)), entry.line)


def _band(text: str, entry: _Entry) -> Band:
    lo_text, sep, body = text.partition(":")
    if not sep:
        raise SpecSyntaxError("band must read 'lo: c, c, ...'", entry.line, entry.column)
    lo = _integer(lo_text, entry)
    values = _numbers(body, entry)
    return _semantic(lambda: Band.of(lo, values), entry.line)


def _support(entry: _Entry) -> tuple[int, int]:
    match = SUPPORT.match(entry.value.strip())
    if match is None:
        raise SpecSyntaxError("support must read 'lo..hi'", entry.line, entry.column)
    lo, hi = int(match.group(1)), int(match.group(2))
    if hi <= lo:
        raise SpecSemanticError("support must span at least two offsets", entry.line)
    return lo, hi


def _rule_diagram(support: _Entry, rules: _Entry) -> RuleDiagram:
    lo, hi = _support(support)
    parsed = [parse_rule(text, rules) for text in split_top_level(rules.value)]
    if len(parsed) != hi - lo + 1:
        raise SpecSemanticError(
            f"support {lo}..{hi} needs {hi - lo + 1} rules, got {len(parsed)}", rules.line
        )
    return _semantic(lambda: RuleDiagram(lo, tuple(parsed)), rules.line)


# Sections


def _builtin(entry: _Entry) -> DiagramSpec:
    value = entry.value.strip()
    if value == "builtin:triadic":
        return TriadicLevels()
    match = CLASSC.match(value)
    if match is not None:
        return class_c(parse_rule(match.group(1), entry))
    raise SpecSyntaxError(f"unknown diagram {value!r}", entry.line, entry.column)


def _diagram_section(section: _Section) -> DiagramSpec:
    section.check_keys({"support", "rules", "level", "tail.support", "tail.rules", "builtin"})
    builtin = section.get("builtin")
    if builtin is not None:
        return _builtin(_Entry(builtin.key, "builtin:" + builtin.value.strip(), builtin.line, builtin.column))
    levels = section.all("level")
    if levels:
        bands = tuple(_band(e.value, e) for e in levels)
        tail = None
        tail_rules = section.get("tail.rules")
        if tail_rules is not None:
            tail = _rule_diagram(section.require("tail.support"), tail_rules)
        return _semantic(lambda: ExplicitLevels(bands, tail), section.line)
    return _rule_diagram(section.require("support"), section.require("rules"))


def _slot(token: str, entry: _Entry) -> Slot:
    offset_text, _, copy_text = token.partition(":")
    return Slot(_integer(offset_text, entry), _integer(copy_text, entry) if copy_text else 0)


def _order_section(section: _Section) -> OrderSpec:
    section.check_keys({"kind", "level"})
    kind_entry = section.get("kind")
    kind_text = kind_entry.value.strip() if kind_entry else OrderKind.LEFT_TO_RIGHT.value
    try:
        kind = OrderKind(kind_text)
    except ValueError:
        line = kind_entry.line if kind_entry else section.line
        raise SpecSyntaxError(f"unknown order kind {kind_text!r}", line) from None
    rankings = tuple(
        tuple(_slot(t, e) for t in e.value.split(",") if t.strip()) for e in section.all("level")
    )
    return _semantic(lambda: OrderSpec(kind, rankings), section.line)


def _odometer_section(section: _Section) -> OdometerSpec:
    section.check_keys({"offsets", "base"})
    offsets = section.require("offsets")
    base = section.get("base")
    return OdometerSpec(
        parse_schedule(offsets.value, offsets),
        _integer(base.value, base) if base else 0,
    )


def _window_section(section: _Section) -> WindowFamily:
    section.check_keys({"base", "shifts", "width"})
    base, shifts, width = section.get("base"), section.get("shifts"), section.require("width")
    return WindowFamily(
        _integer(base.value, base) if base else 0,
        parse_schedule(shifts.value, shifts) if shifts else OffsetSchedule.constant(0),
        parse_rule(width.value, width),
    )


def _kernel_section(section: _Section) -> MarkovKernel:
    section.check_keys({"kind", "initial", "level"})
    initial = section.get("initial")
    initial_value = _number(initial.value, initial) if initial else Fraction(1)
    kind = section.get("kind")
    levels = section.all("level")
    if kind is not None and kind.value.strip() not in ("uniform", "explicit"):
        raise SpecSyntaxError(f"unknown kernel kind {kind.value.strip()!r}", kind.line, kind.column)
    if (kind is not None and kind.value.strip() == "uniform") or not levels:
        return _semantic(lambda: MarkovKernel(initial_value), section.line)
    weights = tuple(tuple(_numbers(e.value, e)) for e in levels)
    return _semantic(lambda: MarkovKernel(initial_value, weights), section.line)


def _scan(text: str) -> tuple[list[_Entry], list[_Section]]:
    top: list[_Entry] = []
    sections: list[_Section] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if stripped.startswith("["):
            match = SECTION.match(stripped)
            if match is None:
                raise SpecSyntaxError("malformed section header", number, indent + 1)
            kind, name = match.groups()
            if kind != "diagram" and kind not in NAMED_SECTIONS:
                raise SpecSyntaxError(f"unknown section [{kind}]", number, indent + 2)
            if kind in NAMED_SECTIONS and name is None:
                raise SpecSyntaxError(f"[{kind}] needs a name", number, indent + 1)
            if kind == "diagram" and name is not None:
                raise SpecSyntaxError("[diagram] takes no name", number, indent + 1)
            sections.append(_Section(kind, name, number))
            continue
        match = ENTRY.match(stripped)
        if match is None:
            raise SpecSyntaxError("expected 'key = value'", number, indent + 1)
        key, value = match.groups()
        entry = _Entry(key, value, number, indent + match.start(2) + 1)
        if sections:
            sections[-1].entries.append(entry)
        else:
            top.append(entry)
    return top, sections


def _validation_levels(diagram: DiagramSpec) -> int:
    if isinstance(diagram, TriadicLevels):
        return 6
    explicit = diagram.explicit_levels
    horizon = get_settings().TELESCOPE_HORIZON
    return horizon if explicit is None else min(explicit, horizon)


def _validate(document: SpecDocument, lines: dict[tuple[str, str], int]) -> None:
    diagram = document.diagram
    levels = _validation_levels(diagram)
    for n in range(levels):
        _semantic(lambda n=n: diagram.band_at(n), lines.get(("diagram", ""), 1))
    for name, order in document.orders.items():
        for n in range(min(levels, max(len(order.levels), 1))):
            _semantic(lambda o=order, n=n: o.ranked(diagram, n), lines[("order", name)])
    for name, odo in document.odometers.items():
        for n in range(levels):
            _semantic(lambda o=odo, n=n: o.coefficient(diagram, n), lines[("odometer", name)])
    for name, kernel in document.kernels.items():
        for n in range(levels):
            _semantic(
                lambda k=kernel, n=n: k.level_probabilities(diagram, n), lines[("kernel", name)]
            )


def parse_spec(text: str) -> SpecDocument:
    top, sections = _scan(text)
    diagram: DiagramSpec | None = None
    lines: dict[tuple[str, str], int] = {}
    for entry in top:
        if entry.key != "diagram":
            raise SpecSyntaxError(f"unknown top-level key {entry.key!r}", entry.line)
        if diagram is not None:
            raise SpecSemanticError("diagram defined twice", entry.line)
        diagram = _builtin(entry)
        lines[("diagram", "")] = entry.line

    tables: dict[str, dict] = {kind: {} for kind in NAMED_SECTIONS}
    builders = {
        "order": _order_section,
        "odometer": _odometer_section,
        "window": _window_section,
        "kernel": _kernel_section,
    }
    for section in sections:
        if section.kind == "diagram":
            if diagram is not None:
                raise SpecSemanticError("diagram defined twice", section.line)
            diagram = _diagram_section(section)
            lines[("diagram", "")] = section.line
            continue
        assert section.name is not None
        table = tables[section.kind]
        if section.name in table:
            raise SpecSemanticError(
                f"{section.kind} name {section.name!r} is not unique", section.line
            )
        table[section.name] = builders[section.kind](section)
        lines[(section.kind, section.name)] = section.line

    if diagram is None:
        raise SpecSemanticError("no diagram defined")
    document = SpecDocument(
        diagram=diagram,
        orders=tables["order"],
        odometers=tables["odometer"],
        windows=tables["window"],
        kernels=tables["kernel"],
    )
    _validate(document, lines)
    logger.debug(
        "parsed spec: %d orders, %d odometers, %d windows, %d kernels",
        len(document.orders),
        len(document.odometers),
        len(document.windows),
        len(document.kernels),
    )
    return document


# Serialization


def _band_text(band: Band) -> str:
    return f"{band.lo}: " + ", ".join(str(c) for c in band.coefficients)


def _rule_lines(prefix: str, diagram: RuleDiagram) -> list[str]:
    return [
        f"{prefix}support = {diagram.lo}..{diagram.hi}",
        f"{prefix}rules = " + ", ".join(rule.to_text() for rule in diagram.rules),
    ]


def serialize_spec(document: SpecDocument) -> str:
    out: list[str] = []
    diagram = document.diagram
    if isinstance(diagram, TriadicLevels):
        out.append("diagram = builtin:triadic")
    elif isinstance(diagram, RuleDiagram):
        out += ["[diagram]", *_rule_lines("", diagram)]
    elif isinstance(diagram, ExplicitLevels):
        out.append("[diagram]")
        out += [f"level = {_band_text(band)}" for band in diagram.levels]
        if diagram.tail is not None:
            out += _rule_lines("tail.", diagram.tail)
    else:
        raise SpecSemanticError(f"cannot serialize {type(diagram).__name__}")

    for name, order in document.orders.items():
        out += ["", f"[order {name}]", f"kind = {order.kind.value}"]
        out += ["level = " + ", ".join(str(s) for s in ranking) for ranking in order.levels]
    for name, odo in document.odometers.items():
        out += ["", f"[odometer {name}]", f"offsets = {odo.offsets}", f"base = {odo.base_vertex}"]
    for name, window in document.windows.items():
        out += [
            "",
            f"[window {name}]",
            f"base = {window.base}",
            f"shifts = {window.shifts}",
            f"width = {window.width.to_text()}",
        ]
    for name, kernel in document.kernels.items():
        out += ["", f"[kernel {name}]", f"initial = {kernel.initial}"]
        if kernel.weights is None:
            out.append("kind = uniform")
        else:
            out += ["level = " + ", ".join(str(p) for p in level) for level in kernel.weights]
    return "\n".join(out) + "\n"


# Vectors files


def parse_vectors(text: str) -> list[MeasureVector]:
    """One level per line: ``constant p/q`` or ``finite lo: p/q, ...``."""
    vectors: list[MeasureVector] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, _, body = line.partition(" ")
        entry = _Entry(kind, body, number, len(kind) + 2)
        if kind == "constant":
            value = _number(body, entry)
            vectors.append(_semantic(lambda v=value: ConstantVec(v), number))
        elif kind == "finite":
            band = _band(body, entry)
            vectors.append(FiniteVec(band))
        else:
            raise SpecSyntaxError(f"unknown vector kind {kind!r}", number)
    return vectors


def serialize_vectors(vectors: list[MeasureVector]) -> str:
    return "".join(f"{vec}\n" for vec in vectors)


# Paths

PATH = re.compile(r"^\s*(-?\d+)\s*\[([^\]]*)\]\s*$")


def parse_path(text: str) -> FinitePath:
    """``BASE[k:c k:c ...]`` from level 0, as printed by ``FinitePath``."""
    match = PATH.match(text)
    if match is None:
        raise SpecSyntaxError("path must read 'BASE[k:c k:c ...]'", 1)
    entry = _Entry("path", text, 1, 1)
    edges = tuple(
        Edge(level, slot.offset, slot.copy)
        for level, slot in enumerate(_slot(token, entry) for token in match.group(2).split())
    )
    return _semantic(lambda: FinitePath(int(match.group(1)), edges), 1)
