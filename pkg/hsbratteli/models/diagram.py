"""
Horizontally stationary diagrams as level-indexed families of bands.
"""

import itertools
import logging
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from hsbratteli.core.errors import (
    FiniteHorizon,
    Intractable,
    InvalidArgument,
    InvalidBand,
    RuleOverflow,
)
from hsbratteli.core.settings import get_settings
from hsbratteli.models.band import Band, convolve_all, row_sum, stochasticize
from hsbratteli.models.rules import Constant, SequenceRule

logger = logging.getLogger(__name__)


class DiagramSpec(ABC):
    """Generator of the incidence band ``F_n`` for every level ``n``."""

    @abstractmethod
    def band_at(self, n: int) -> Band: ...

    @property
    def explicit_levels(self) -> int | None:
        """Number of levels available, or ``None`` when unbounded."""
        return None

    def is_level_independent(self) -> bool:
        return False

    def row_sum_at(self, n: int) -> int:
        return int(row_sum(self.band_at(n)))


def _check_level(n: int) -> None:
    if n < 0:
        raise InvalidArgument(f"level must be non-negative, got {n}")


@dataclass(frozen=True)
class RuleDiagram(DiagramSpec):
    """One sequence rule per offset of the support ``lo .. lo + len(rules) - 1``."""

    lo: int
    rules: tuple[SequenceRule, ...]

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if len(self.rules) < 2:
            raise InvalidBand("support must span at least two offsets")

    @property
    def hi(self) -> int:
        return self.lo + len(self.rules) - 1

    def rule_at(self, offset: int) -> SequenceRule:
        return self.rules[offset - self.lo]

    def band_at(self, n: int) -> Band:
        _check_level(n)
        values = [rule.integer_value(n) for rule in self.rules]
        if values[0] == 0 or values[-1] == 0:
            raise RuleOverflow(
                f"band at level {n} has a zero endpoint coefficient",
                details={"level": n, "values": values},
            )
        return Band(self.lo, tuple(Fraction(v) for v in values))

    def is_level_independent(self) -> bool:
        return all(isinstance(rule, Constant) for rule in self.rules)


@dataclass(frozen=True)
class ExplicitLevels(DiagramSpec):
    """
    Explicit bands for the first levels, then an optional rule tail.

    The tail is indexed by absolute level, so ``band_at(n)`` for
    ``n >= len(levels)`` is ``tail.band_at(n)``.
    """

    levels: tuple[Band, ...]
    tail: RuleDiagram | None = None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        for n, band in enumerate(self.levels):
            if not band.is_integral:
                raise InvalidBand(f"band at level {n} must have integer coefficients")

    @property
    def explicit_levels(self) -> int | None:
        return None if self.tail is not None else len(self.levels)

    def band_at(self, n: int) -> Band:
        _check_level(n)
        if n < len(self.levels):
            return self.levels[n]
        if self.tail is None:
            raise FiniteHorizon(
                f"level {n} is beyond the {len(self.levels)} explicit levels",
                details={"level": n, "available": len(self.levels)},
            )
        return self.tail.band_at(n)


@dataclass(frozen=True)
class TriadicLevels(DiagramSpec):
    """Sources at offsets ``-2*3**n``, ``-3**n`` and ``0``, one edge each."""

    def band_at(self, n: int) -> Band:
        _check_level(n)
        step = 3**n
        return Band.from_mapping({-2 * step: 1, -step: 1, 0: 1})


def class_c(a_rule: SequenceRule) -> RuleDiagram:
    """Tridiagonal diagram with diagonal ``a_n`` and unit off-diagonals."""
    return RuleDiagram(-1, (Constant(1), a_rule, Constant(1)))


def class_c_rule(spec: DiagramSpec) -> SequenceRule | None:
    """The diagonal rule of a class-C diagram, ``None`` for other diagrams."""
    if (
        isinstance(spec, RuleDiagram)
        and spec.lo == -1
        and len(spec.rules) == 3
        and spec.rules[0] == Constant(1)
        and spec.rules[2] == Constant(1)
    ):
        return spec.rules[1]
    return None


def height(spec: DiagramSpec, n: int) -> int:
    """Number of paths from level 0 into any single vertex of level ``n``."""
    _check_level(n)
    return prod((spec.row_sum_at(level) for level in range(n)), start=1)


def heights(spec: DiagramSpec, stop: int) -> list[int]:
    out = [1]
    for level in range(stop - 1):
        out.append(out[-1] * spec.row_sum_at(level))
    return out[:stop]


def telescope(spec: DiagramSpec, cuts: list[int]) -> ExplicitLevels:
    """Collapse the levels between consecutive cuts into single bands."""
    if len(cuts) < 2 or cuts[0] != 0 or any(b <= a for a, b in itertools.pairwise(cuts)):
        raise InvalidArgument(
            "cuts must start at 0 and be strictly increasing",
            details={"cuts": list(cuts)},
        )
    levels = tuple(
        convolve_all(spec.band_at(level) for level in reversed(range(a, b)))
        for a, b in itertools.pairwise(cuts)
    )
    logger.debug(f"telescoped {cuts[-1]} levels into {len(levels)}")
    return ExplicitLevels(levels)


def telescope_every(spec: DiagramSpec, step: int, horizon: int | None = None) -> ExplicitLevels:
    if step < 1:
        raise InvalidArgument(f"telescoping step must be positive, got {step}")
    count = horizon if horizon is not None else get_settings().TELESCOPE_HORIZON
    return telescope(spec, [step * k for k in range(count + 1)])


@dataclass(frozen=True)
class BoundedSize:
    level: int
    t: int
    L: int
    symmetric: bool
    full: bool


def bounded_size_params(spec: DiagramSpec, n: int) -> BoundedSize:
    band = spec.band_at(n)
    t = max(abs(band.lo), abs(band.hi))
    symmetric = -band.lo == band.hi
    full = symmetric and all(c > 0 for c in band.coefficients)
    return BoundedSize(
        level=n,
        t=t,
        L=int(row_sum(band)),
        symmetric=symmetric,
        full=full,
    )


def path_count_band(spec: DiagramSpec, n: int, m: int) -> Band:
    """
    Profile of ``G'(n, m) = F_{n+m-1} ... F_n``.

    The coefficient at offset ``k`` counts the paths from vertex ``i + k``
    of level ``n`` to vertex ``i`` of level ``n + m``.
    """
    if m < 1:
        raise InvalidArgument(f"span must be at least 1, got {m}")
    return convolve_all(spec.band_at(level) for level in reversed(range(n, n + m)))


def stochastic_path_band(spec: DiagramSpec, n: int, m: int) -> Band:
    return stochasticize(path_count_band(spec, n, m))


def _expanded_offsets(band: Band) -> list[int]:
    return [k for k, c in band.items() for _ in range(int(c))]


def path_count_bruteforce_profile(spec: DiagramSpec, n: int, m: int) -> Band:
    """Enumerate every edge sequence from level ``n + m`` down to level ``n``."""
    if m < 1:
        raise InvalidArgument(f"span must be at least 1, got {m}")
    bands = [spec.band_at(level) for level in range(n, n + m)]
    total = prod(int(row_sum(b)) for b in bands)
    limit = get_settings().MAX_ENUMERATION
    if total > limit:
        raise Intractable(
            f"{total} edge sequences exceed the enumeration guard {limit}",
            details={"paths": total, "limit": limit},
        )
    endpoints: Counter[int] = Counter()
    for choice in itertools.product(*(_expanded_offsets(b) for b in reversed(bands))):
        endpoints[sum(choice)] += 1
    logger.debug(f"enumerated {total} paths between levels {n} and {n + m}")
    return Band.from_mapping(dict(endpoints))


def path_count_bruteforce(spec: DiagramSpec, n: int, m: int, offset: int) -> int:
    return int(path_count_bruteforce_profile(spec, n, m).coefficient(offset))
