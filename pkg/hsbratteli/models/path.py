"""
Edge slots and finite paths.

Between levels ``n`` and ``n + 1`` every range vertex ``i`` has one
incoming edge per slot ``(offset k, copy c)`` with ``c < b_k``; the edge
starts at source ``i + k``. By horizontal stationarity the same slots also
describe the outgoing edges of every source.
"""

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from math import prod
from typing import NamedTuple

from hsbratteli.core.errors import Intractable, InvalidPath, MissingEdge
from hsbratteli.core.settings import get_settings
from hsbratteli.models.band import Band
from hsbratteli.models.diagram import DiagramSpec


class Slot(NamedTuple):
    offset: int
    copy: int = 0

    def __str__(self) -> str:
        return f"{self.offset}:{self.copy}"


def slots(band: Band) -> tuple[Slot, ...]:
    """All slots of a band, ascending by offset then copy."""
    return tuple(Slot(k, c) for k, count in band.items() for c in range(int(count)))


class Edge(NamedTuple):
    level: int
    offset: int
    copy: int = 0

    @property
    def slot(self) -> Slot:
        return Slot(self.offset, self.copy)


@dataclass(frozen=True)
class FinitePath:
    """Path starting at ``base_vertex`` of level ``start_level``."""

    base_vertex: int
    edges: tuple[Edge, ...] = ()
    start_level: int = 0

    def __post_init__(self):
        edges = tuple(Edge(*e) for e in self.edges)
        for position, edge in enumerate(edges):
            if edge.level != self.start_level + position:
                raise InvalidPath(
                    f"edge {position} sits on level {edge.level}, "
                    f"expected {self.start_level + position}",
                )
            if edge.copy < 0:
                raise InvalidPath(f"negative copy index on level {edge.level}")
        object.__setattr__(self, "edges", edges)

    @property
    def depth(self) -> int:
        return len(self.edges)

    @property
    def end_level(self) -> int:
        return self.start_level + len(self.edges)

    def vertices(self) -> list[int]:
        out = [self.base_vertex]
        for edge in self.edges:
            out.append(out[-1] - edge.offset)
        return out

    def vertex(self, level: int) -> int:
        return self.vertices()[level - self.start_level]

    @property
    def terminal(self) -> int:
        return self.vertices()[-1]

    def shifted(self, k: int) -> "FinitePath":
        return FinitePath(self.base_vertex + k, self.edges, self.start_level)

    def validate(self, spec: DiagramSpec) -> None:
        for edge in self.edges:
            if edge.copy >= spec.band_at(edge.level).coefficient(edge.offset):
                raise MissingEdge(
                    f"no edge {edge.offset}:{edge.copy} on level {edge.level}",
                    details={"level": edge.level, "offset": edge.offset, "copy": edge.copy},
                )

    def __str__(self) -> str:
        body = " ".join(f"{e.offset}:{e.copy}" for e in self.edges)
        return f"{self.base_vertex}[{body}]"


def paths_into(spec: DiagramSpec, vertex: int, depth: int) -> Iterator[FinitePath]:
    """All paths from level 0 into ``vertex`` of level ``depth``."""
    level_slots = [slots(spec.band_at(level)) for level in range(depth)]
    total = prod(len(s) for s in level_slots)
    limit = get_settings().MAX_ENUMERATION
    if total > limit:
        raise Intractable(
            f"{total} paths exceed the enumeration guard {limit}",
            details={"paths": total, "limit": limit},
        )
    for choice in itertools.product(*level_slots):
        base = vertex + sum(slot.offset for slot in choice)
        yield FinitePath(
            base,
            tuple(Edge(level, s.offset, s.copy) for level, s in enumerate(choice)),
        )
