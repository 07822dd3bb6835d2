"""
Vertex subdiagrams: odometers (one vertex per level) and finite windows.

Both follow the offset convention of the bands: moving from level ``n``
to level ``n + 1`` along offset ``k`` takes vertex ``i`` to ``i - k``.
"""

from dataclasses import dataclass

from hsbratteli.core.errors import MissingEdge, RuleOverflow
from hsbratteli.models.diagram import DiagramSpec
from hsbratteli.models.rules import Constant, OffsetSchedule, SequenceRule


@dataclass(frozen=True)
class OdometerSpec:
    """Vertex sequence ``i_n`` with ``k_n = i_n - i_{n+1}`` given by ``offsets``."""

    offsets: OffsetSchedule
    base_vertex: int = 0

    def offset(self, n: int) -> int:
        return self.offsets.value(n)

    def vertex(self, n: int) -> int:
        return self.base_vertex - sum(self.offsets.value(level) for level in range(n))

    def vertices(self, stop: int) -> list[int]:
        out = [self.base_vertex]
        for level in range(stop - 1):
            out.append(out[-1] - self.offsets.value(level))
        return out[:stop]

    def shifted(self, k: int) -> "OdometerSpec":
        return OdometerSpec(self.offsets, self.base_vertex + k)

    def coefficient(self, spec: DiagramSpec, n: int) -> int:
        """Number of edges between ``i_n`` and ``i_{n+1}``."""
        value = spec.band_at(n).coefficient(self.offset(n))
        if value == 0:
            raise MissingEdge(
                f"no edge at offset {self.offset(n)} on level {n}",
                details={"level": n, "offset": self.offset(n)},
            )
        return int(value)


@dataclass(frozen=True)
class WindowFamily:
    """
    Intervals ``W_n = [l_n, l_n + w_n - 1]``.

    ``l_0 = base`` and ``l_{n+1} = l_n - shifts(n)``; the widths come from
    a sequence rule with positive integer values.
    """

    base: int
    shifts: OffsetSchedule
    width: SequenceRule

    @classmethod
    def from_odometer(cls, odo: OdometerSpec) -> "WindowFamily":
        return cls(odo.base_vertex, odo.offsets, Constant(1))

    def lower(self, n: int) -> int:
        return self.base - sum(self.shifts.value(level) for level in range(n))

    def width_at(self, n: int) -> int:
        w = self.width.integer_value(n)
        if w < 1:
            raise RuleOverflow(
                f"window width must be positive, got {w} at level {n}",
                details={"level": n, "width": w},
            )
        return w

    def interval(self, n: int) -> range:
        lo = self.lower(n)
        return range(lo, lo + self.width_at(n))

    def chosen_offsets(self, n: int, column: int = 0) -> frozenset[int]:
        """
        Offsets ``j - i`` from column ``j = l_n + column`` into ``W_{n+1}``.
        """
        shift = self.shifts.value(n)
        return frozenset(column + shift - t for t in range(self.width_at(n + 1)))
