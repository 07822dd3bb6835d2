"""
Vershik successor map on finite path prefixes and the continuity check
for horizontally stationary orders.

All continuity computations run on a generic vertex: the diagram and the
order look the same from every vertex of a level, so only offsets matter.
"""

import enum
import logging
from dataclasses import dataclass, field

from hsbratteli.core.errors import InvalidArgument
from hsbratteli.models.diagram import DiagramSpec
from hsbratteli.models.order import OrderSpec
from hsbratteli.models.path import Edge, FinitePath, Slot

logger = logging.getLogger(__name__)


def max_min_edges(spec: DiagramSpec, order: OrderSpec, n: int) -> tuple[Slot, Slot]:
    """Maximal and minimal slot of level ``n``."""
    ranked = order.ranked(spec, n)
    return ranked[-1], ranked[0]


def _extremal_prefix(
    spec: DiagramSpec,
    order: OrderSpec,
    vertex: int,
    depth: int,
    start_level: int,
    maximal: bool,
) -> FinitePath:
    edges: list[Edge] = []
    current = vertex
    for level in reversed(range(start_level, start_level + depth)):
        top, bottom = max_min_edges(spec, order, level)
        slot = top if maximal else bottom
        edges.append(Edge(level, slot.offset, slot.copy))
        current += slot.offset
    return FinitePath(current, tuple(reversed(edges)), start_level)


def minimal_prefix(
    spec: DiagramSpec, order: OrderSpec, vertex: int, depth: int, start_level: int = 0
) -> FinitePath:
    """The minimal path from level ``start_level`` into ``vertex``."""
    return _extremal_prefix(spec, order, vertex, depth, start_level, maximal=False)


def maximal_prefix(
    spec: DiagramSpec, order: OrderSpec, vertex: int, depth: int, start_level: int = 0
) -> FinitePath:
    return _extremal_prefix(spec, order, vertex, depth, start_level, maximal=True)


@dataclass(frozen=True)
class MaximalPrefix:
    """Every edge of ``path`` is maximal; a longer prefix may still move."""

    path: FinitePath


def vershik_successor(
    spec: DiagramSpec, order: OrderSpec, x: FinitePath
) -> FinitePath | MaximalPrefix:
    x.validate(spec)
    vertices = x.vertices()
    for position, edge in enumerate(x.edges):
        ranked = order.ranked(spec, edge.level)
        rank = ranked.index(edge.slot)
        if rank == len(ranked) - 1:
            continue
        successor = ranked[rank + 1]
        source = vertices[position + 1] + successor.offset
        head = minimal_prefix(spec, order, source, position, x.start_level)
        edges = (
            *head.edges,
            Edge(edge.level, successor.offset, successor.copy),
            *x.edges[position + 1 :],
        )
        return FinitePath(head.base_vertex, edges, x.start_level)
    return MaximalPrefix(x)


@dataclass(frozen=True)
class Orbit:
    paths: list[FinitePath]
    reached_maximal: bool
    terminal: int
    range_invariant: bool


def orbit(spec: DiagramSpec, order: OrderSpec, x: FinitePath, steps: int) -> Orbit:
    """
    Iterate the successor ``steps`` times, stopping at a maximal prefix.

    ``paths`` starts with ``x``; ``range_invariant`` certifies that every
    visited prefix ends at the terminal vertex of ``x``.
    """
    if steps < 1:
        raise InvalidArgument(f"steps must be at least 1, got {steps}")
    paths = [x]
    reached_maximal = False
    for _ in range(steps):
        step = vershik_successor(spec, order, paths[-1])
        if isinstance(step, MaximalPrefix):
            reached_maximal = True
            break
        paths.append(step)
    terminal = x.terminal
    return Orbit(
        paths=paths,
        reached_maximal=reached_maximal,
        terminal=terminal,
        range_invariant=all(p.terminal == terminal for p in paths),
    )


def tower(spec: DiagramSpec, order: OrderSpec, vertex: int, depth: int) -> Orbit:
    """Full orbit of the depth-``depth`` minimal prefix into ``vertex``."""
    start = minimal_prefix(spec, order, vertex, depth)
    if depth == 0:
        return Orbit([start], True, vertex, True)
    steps = 1
    for level in range(depth):
        steps *= len(order.ranked(spec, level))
    return orbit(spec, order, start, steps)


class Continuity(str, enum.Enum):
    CONTINUOUS = "ContinuousUpTo"
    DISCONTINUOUS = "DiscontinuousAt"


@dataclass(frozen=True)
class ContinuityRecord:
    """
    Level ``n`` data along the maximal path: its vertex ``w``, the sources
    of the successors of the non-maximal edges leaving ``w``, the common
    source ``v`` when there is one, and whether the minimal edge from
    ``v_n`` reaches ``v_{n+1}``.
    """

    level: int
    w: int
    sources: tuple[int, ...]
    v: int | None
    link: bool | None = None

    @property
    def v_minus_w(self) -> int | None:
        return None if self.v is None else self.v - self.w


@dataclass(frozen=True)
class ContinuityReport:
    verdict: Continuity
    horizon: int
    records: list[ContinuityRecord]
    failed_level: int | None = None
    witness: dict = field(default_factory=dict)
    all_levels: bool = False

    @property
    def label(self) -> str:
        if self.verdict is Continuity.CONTINUOUS:
            scope = "all" if self.all_levels else str(self.horizon)
            return f"{self.verdict.value}({scope})"
        return f"{self.verdict.value}({self.failed_level})"


def _record(spec: DiagramSpec, order: OrderSpec, level: int, w: int) -> tuple[ContinuityRecord, dict]:
    ranked = order.ranked(spec, level)
    successors = list(zip(ranked, ranked[1:], strict=False))
    sources: dict[int, tuple[Slot, Slot]] = {}
    for slot, successor in successors:
        sources.setdefault(w - slot.offset + successor.offset, (slot, successor))
    values = tuple(sorted(sources))
    v = values[0] if len(values) == 1 else None
    witness = {
        str(source): [str(pair[0]), str(pair[1])] for source, pair in sorted(sources.items())
    }
    return ContinuityRecord(level, w, values, v), witness


def continuity_check(
    spec: DiagramSpec, order: OrderSpec, horizon: int, start_vertex: int = 0
) -> ContinuityReport:
    """
    Check levels ``1 .. horizon`` along the maximal path from
    ``start_vertex``: the successors of all non-maximal edges leaving the
    path must share one source ``v_n``, and the minimal edge from ``v_n``
    must end at ``v_{n+1}``.

    The verdict covers the prefix up to ``horizon`` only. A failure at an
    early level is reported as ``DiscontinuousAt`` even if every later
    level would pass, while continuity of the map itself depends only on
    large levels.
    """
    if horizon < 2:
        raise InvalidArgument(f"horizon must be at least 2, got {horizon}")
    w = start_vertex
    walk = []
    for level in range(horizon + 1):
        walk.append(w)
        top, _ = max_min_edges(spec, order, level)
        w -= top.offset

    records: list[ContinuityRecord] = []
    for level in range(1, horizon + 1):
        record, witness = _record(spec, order, level, walk[level])
        if record.v is None:
            records.append(record)
            reason = "no non-maximal edge" if not record.sources else "several successor sources"
            logger.info(f"discontinuity at level {level}: {reason}")
            return ContinuityReport(
                Continuity.DISCONTINUOUS,
                horizon,
                records,
                failed_level=level,
                witness={"reason": reason, "sources": witness},
            )
        if records:
            previous = records[-1]
            _, bottom = max_min_edges(spec, order, previous.level)
            link = previous.v - bottom.offset == record.v
            records[-1] = ContinuityRecord(
                previous.level, previous.w, previous.sources, previous.v, link
            )
            if not link:
                records.append(record)
                logger.info(f"missing minimal edge between levels {level - 1} and {level}")
                return ContinuityReport(
                    Continuity.DISCONTINUOUS,
                    horizon,
                    records,
                    failed_level=previous.level,
                    witness={
                        "reason": "missing minimal edge",
                        "from": previous.v,
                        "to": record.v,
                        "minimal_edge_reaches": previous.v - bottom.offset,
                    },
                )
        records.append(record)

    stationary = spec.is_level_independent() and order.is_level_independent()
    return ContinuityReport(Continuity.CONTINUOUS, horizon, records, all_levels=stationary)
