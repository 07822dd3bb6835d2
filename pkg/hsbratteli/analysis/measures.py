"""
Tail-invariant measures: level vectors, odometer and window extensions,
tail-parallel odometers and horizontally invariant Markov measures.

The level vectors satisfy ``p(n) = F_nᵀ p(n + 1)``. In column-minus-row
offsets, ``(F_nᵀ p)_j = sum_k b_k p_{j-k}``, so a pull-back is the
convolution of the band with the vector.
"""

import enum
import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod

from hsbratteli.analysis.series import Verdict, series_verdict
from hsbratteli.core.errors import (
    IdentityViolation,
    Intractable,
    InvalidArgument,
    MissingEdge,
    MixedKinds,
    NotECS,
)
from hsbratteli.core.settings import get_settings
from hsbratteli.models.band import Band, LaurentPoly, convolve, laurent_multiply, row_sum
from hsbratteli.models.diagram import DiagramSpec, height
from hsbratteli.models.kernel import MarkovKernel
from hsbratteli.models.path import FinitePath, paths_into
from hsbratteli.models.subdiagram import OdometerSpec, WindowFamily

logger = logging.getLogger(__name__)


# Level vectors


@dataclass(frozen=True)
class ConstantVec:
    """``p_j = value`` for every vertex ``j``."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value < 0:
            raise InvalidArgument("measure values must be non-negative")

    def __str__(self) -> str:
        return f"constant {self.value}"


@dataclass(frozen=True)
class FiniteVec:
    """Finitely supported vector, stored as a canonical band."""

    profile: Band

    @classmethod
    def of(cls, lo: int, values: Sequence[Fraction | int | str]) -> "FiniteVec":
        return cls(Band.of(lo, values))

    def value(self, j: int) -> Fraction:
        return self.profile.coefficient(j)

    def __str__(self) -> str:
        body = ", ".join(str(c) for c in self.profile.coefficients)
        return f"finite {self.profile.lo}: {body}"


MeasureVector = ConstantVec | FiniteVec


def pull_back(band: Band, vec: MeasureVector) -> MeasureVector:
    """``F_nᵀ`` applied to a level-``n + 1`` vector."""
    if isinstance(vec, ConstantVec):
        return ConstantVec(vec.value * row_sum(band))
    return FiniteVec(convolve(band, vec.profile))


def pull_back_family(spec: DiagramSpec, top: MeasureVector, levels: int) -> list[MeasureVector]:
    """Vectors for levels ``0 .. levels`` ending in ``top`` at level ``levels``."""
    family = [top]
    for n in reversed(range(levels)):
        family.append(pull_back(spec.band_at(n), family[-1]))
    return family[::-1]


def uniform_family(spec: DiagramSpec, levels: int) -> list[ConstantVec]:
    """``p(n) = 1 / H(n)`` for ``n = 0 .. levels``."""
    family = [ConstantVec(Fraction(1))]
    for n in range(levels):
        family.append(ConstantVec(family[-1].value / spec.row_sum_at(n)))
    return family


@dataclass(frozen=True)
class TailCheck:
    passed: bool
    checked: int
    failing_level: int | None = None
    expected: MeasureVector | None = None
    actual: MeasureVector | None = None


def verify_tail_invariant(
    spec: DiagramSpec, vectors: Sequence[MeasureVector], horizon: int
) -> TailCheck:
    """Check ``F_nᵀ p(n + 1) = p(n)`` for every ``n < horizon``."""
    if horizon < 1:
        raise InvalidArgument(f"horizon must be at least 1, got {horizon}")
    if len(vectors) <= horizon:
        raise InvalidArgument(
            f"{len(vectors)} vectors cannot cover {horizon} levels",
            details={"vectors": len(vectors), "horizon": horizon},
        )
    for n in range(horizon):
        current, following = vectors[n], vectors[n + 1]
        if type(current) is not type(following):
            raise MixedKinds(
                f"levels {n} and {n + 1} mix constant and finite vectors",
                details={"level": n},
            )
        expected = pull_back(spec.band_at(n), following)
        if expected != current:
            logger.info(f"tail invariance fails at level {n}")
            return TailCheck(False, n + 1, n, expected, current)
    return TailCheck(True, horizon)


def fourier_check(spec: DiagramSpec, p_next: FiniteVec, p_prev: FiniteVec, n: int) -> bool:
    """Compare the Laurent product of ``F_n``'s symbol and ``p(n + 1)`` with ``p(n)``."""
    symbol = LaurentPoly.from_band(spec.band_at(n))
    product = laurent_multiply(symbol, LaurentPoly.from_band(p_next.profile))
    return product == LaurentPoly.from_band(p_prev.profile)


# Odometers and windows


def odometer_cylinder(spec: DiagramSpec, odo: OdometerSpec, n: int) -> Fraction:
    """Mass of a depth-``n`` cylinder ending on the odometer."""
    return Fraction(1, prod((odo.coefficient(spec, level) for level in range(n)), start=1))


@dataclass(frozen=True)
class ExtensionReport:
    vertices: list[int]
    coefficients: list[int]
    sigmas: list[int]
    alphas: list[Fraction]
    partial_value: Fraction
    direct_value: Fraction
    verdict: Verdict
    horizon: int
    dominating: bool


def _odometer_verdict(spec: DiagramSpec, odo: OdometerSpec) -> Verdict:
    return series_verdict(
        spec,
        lambda n: frozenset({odo.offset(n)}),
        odo.offsets.settles_at,
        odo.offsets.period,
    )


def extension_report(spec: DiagramSpec, odo: OdometerSpec, horizon: int) -> ExtensionReport:
    """Partial sums of the extended odometer measure up to ``horizon`` levels."""
    if horizon < 1:
        raise InvalidArgument(f"horizon must be at least 1, got {horizon}")
    coefficients = [odo.coefficient(spec, n) for n in range(horizon)]
    row_sums = [spec.row_sum_at(n) for n in range(horizon)]
    sigmas = [r - f for r, f in zip(row_sums, coefficients, strict=True)]

    alphas: list[Fraction] = []
    running = Fraction(1)
    for r, f in zip(row_sums, coefficients, strict=True):
        running *= Fraction(r, f)
        alphas.append(running)

    direct = Fraction(1)
    heights_so_far = 1
    coefficient_product = 1
    for r, f, sigma in zip(row_sums, coefficients, sigmas, strict=True):
        coefficient_product *= f
        direct += Fraction(heights_so_far * sigma, coefficient_product)
        heights_so_far *= r

    if direct != alphas[-1]:
        raise IdentityViolation(
            "direct and telescoped extension values disagree",
            details={"direct": str(direct), "telescoped": str(alphas[-1])},
        )
    verdict = _odometer_verdict(spec, odo)
    logger.info(f"extension over {horizon} levels: {alphas[-1]} ({verdict.value})")
    return ExtensionReport(
        vertices=odo.vertices(horizon + 1),
        coefficients=coefficients,
        sigmas=sigmas,
        alphas=alphas,
        partial_value=alphas[-1],
        direct_value=direct,
        verdict=verdict,
        horizon=horizon,
        dominating=is_dominating(spec, odo, horizon),
    )


class TailRelation(str, enum.Enum):
    EQUAL = "Equal"
    PARALLEL = "Parallel"
    NOT_PARALLEL = "NotParallel"


@dataclass(frozen=True)
class TailParallel:
    relation: TailRelation
    shift: int | None = None
    witnesses: tuple[int, ...] = ()


def tail_parallel(first: OdometerSpec, second: OdometerSpec) -> TailParallel:
    """
    Decide whether ``second`` eventually runs at a constant horizontal
    distance from ``first``.

    Offset schedules are eventually periodic, so one period past the
    longer prefix settles the question.
    """
    start = max(first.offsets.settles_at, second.offsets.settles_at)
    period = lcm(first.offsets.period, second.offsets.period)
    disagree = [
        n for n in range(start, start + period) if first.offset(n) != second.offset(n)
    ]
    if disagree:
        witnesses = tuple(
            itertools.islice(
                (n for n in itertools.count() if first.offset(n) != second.offset(n)),
                2,
            )
        )
        return TailParallel(TailRelation.NOT_PARALLEL, witnesses=witnesses)
    shift = second.vertex(start) - first.vertex(start)
    if shift == 0:
        return TailParallel(TailRelation.EQUAL, 0)
    return TailParallel(TailRelation.PARALLEL, shift)


def dominating_offsets(spec: DiagramSpec, n: int) -> frozenset[int]:
    band = spec.band_at(n)
    top = max(band.coefficients)
    return frozenset(k for k, c in band.items() if c == top)


def is_dominating(spec: DiagramSpec, odo: OdometerSpec, horizon: int) -> bool:
    return all(odo.offset(n) in dominating_offsets(spec, n) for n in range(horizon))


@dataclass(frozen=True)
class EcsReport:
    widths: list[int]
    column_sums: list[int]
    alphas: list[Fraction]
    partial_value: Fraction
    direct_value: Fraction
    normalized_value: Fraction
    component_products: list[Fraction] | None
    verdict: Verdict
    horizon: int


def _column_sum(spec: DiagramSpec, windows: WindowFamily, n: int, column: int) -> int:
    band = spec.band_at(n)
    return int(sum((band.coefficient(k) for k in windows.chosen_offsets(n, column)), Fraction(0)))


def ecs_column_sum(spec: DiagramSpec, windows: WindowFamily, n: int) -> int:
    """Common column sum of the window's incidence block, or ``NotECS``."""
    sums = [_column_sum(spec, windows, n, column) for column in range(windows.width_at(n))]
    for column, value in enumerate(sums):
        if value != sums[0]:
            first, second = windows.lower(n), windows.lower(n) + column
            raise NotECS(
                f"columns {first} and {second} of level {n} have sums {sums[0]} and {value}",
                witness=(n, first, second),
            )
    if sums[0] == 0:
        raise MissingEdge(
            f"window of level {n} has no edges into the next window",
            details={"level": n},
        )
    return sums[0]


def _window_verdict(spec: DiagramSpec, windows: WindowFamily) -> Verdict:
    if not windows.width.is_bounded():
        return Verdict.INFINITE
    settles_at = max(windows.shifts.settles_at, windows.width.settles_at)
    period = lcm(windows.shifts.period, windows.width.period)
    return series_verdict(spec, windows.chosen_offsets, settles_at, period)


def _is_vertical_constant(windows: WindowFamily, horizon: int) -> bool:
    width = windows.width_at(0)
    return all(
        windows.shifts.value(n) == 0 and windows.width_at(n) == width for n in range(horizon + 1)
    )


def ecs_subdiagram_extension(
    spec: DiagramSpec, windows: WindowFamily, horizon: int
) -> EcsReport:
    """
    Extension of the uniform measure of an ECS window subdiagram.

    ``alphas[n] = prod_{l <= n} (r_l / c_l) * |W_{n+1}|`` is the extended
    mass when the window measure gives every vertex of ``W_0`` mass one.
    """
    if horizon < 1:
        raise InvalidArgument(f"horizon must be at least 1, got {horizon}")
    widths = [windows.width_at(n) for n in range(horizon + 1)]
    column_sums = [ecs_column_sum(spec, windows, n) for n in range(horizon)]
    row_sums = [spec.row_sum_at(n) for n in range(horizon)]

    alphas: list[Fraction] = []
    ratio = Fraction(1)
    for n in range(horizon):
        ratio *= Fraction(row_sums[n], column_sums[n])
        alphas.append(ratio * widths[n + 1])

    direct = Fraction(1)
    r_product, c_product = 1, 1
    for n in range(horizon):
        c_product *= column_sums[n]
        direct += Fraction(
            r_product * (row_sums[n] * widths[n + 1] - column_sums[n] * widths[n]),
            c_product,
        )
        r_product *= row_sums[n]

    partial = 1 + alphas[-1] - widths[0]
    if direct != partial:
        raise IdentityViolation(
            "direct and telescoped window extension values disagree",
            details={"direct": str(direct), "telescoped": str(partial)},
        )

    components = None
    if _is_vertical_constant(windows, horizon):
        components = []
        running = Fraction(1)
        for n in range(horizon):
            running *= Fraction(int(spec.band_at(n).coefficient(0)), column_sums[n])
            components.append(running)

    return EcsReport(
        widths=widths,
        column_sums=column_sums,
        alphas=alphas,
        partial_value=partial,
        direct_value=direct,
        normalized_value=alphas[-1] / widths[0],
        component_products=components,
        verdict=_window_verdict(spec, windows),
        horizon=horizon,
    )


# Markov measures


def markov_cylinder(spec: DiagramSpec, kernel: MarkovKernel, path: FinitePath) -> Fraction:
    if path.start_level != 0:
        raise InvalidArgument("cylinders start at level 0")
    path.validate(spec)
    value = kernel.initial
    for edge in path.edges:
        value *= kernel.probability(spec, edge.level, edge.slot)
    return value


@dataclass(frozen=True)
class MarkovCheck:
    passed: bool
    depth: int
    witness: tuple[FinitePath, FinitePath] | None = None
    values: tuple[Fraction, Fraction] | None = None
    paths_checked: list[int] = field(default_factory=list)


def markov_tail_invariance_check(
    spec: DiagramSpec, kernel: MarkovKernel, depth: int, vertex: int = 0
) -> MarkovCheck:
    """
    Compare the cylinders of all paths into ``vertex`` for depths
    ``1 .. depth``; the first unequal pair is the witness.
    """
    if depth < 1:
        raise InvalidArgument(f"depth must be at least 1, got {depth}")
    limit = get_settings().MAX_ENUMERATION
    counts: list[int] = []
    for d in range(1, depth + 1):
        if height(spec, d) > limit:
            raise Intractable(
                f"{height(spec, d)} paths at depth {d} exceed the enumeration guard {limit}",
                details={"depth": d, "limit": limit},
            )
        first: tuple[FinitePath, Fraction] | None = None
        count = 0
        for path in paths_into(spec, vertex, d):
            count += 1
            value = markov_cylinder(spec, kernel, path)
            if first is None:
                first = (path, value)
            elif value != first[1]:
                logger.info(f"Markov measure is not tail invariant at depth {d}")
                return MarkovCheck(
                    False, d, (first[0], path), (first[1], value), [*counts, count]
                )
        counts.append(count)
    return MarkovCheck(True, depth, paths_checked=counts)
