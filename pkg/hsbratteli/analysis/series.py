"""
Symbolic finiteness verdicts for measure extensions.

An extension along a subdiagram is finite exactly when
``sum_n (r_n - c_n) / c_n`` converges, where ``c_n`` adds the band
coefficients on the offsets the subdiagram keeps at level ``n``. For rule
diagrams and eventually periodic subdiagrams the terms along each residue
class of levels grow like ``rate**t * t**degree``, which decides the
series exactly.
"""

import enum
import logging
from collections.abc import Callable, Iterable
from math import lcm

from hsbratteli.core.errors import MissingEdge
from hsbratteli.models.diagram import DiagramSpec, ExplicitLevels, RuleDiagram, TriadicLevels
from hsbratteli.models.rules import Growth

logger = logging.getLogger(__name__)

ChosenOffsets = Callable[[int], frozenset[int]]


class Verdict(str, enum.Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"
    UNDECIDED = "Undecided"


def dominant(growths: Iterable[Growth | None]) -> Growth | None:
    present = [g for g in growths if g is not None]
    return max(present) if present else None


def _rule_verdict(
    spec: RuleDiagram,
    chosen: ChosenOffsets,
    settles_at: int,
    period: int,
) -> Verdict:
    start = max([settles_at, *(rule.settles_at for rule in spec.rules)])
    step = lcm(period, *(rule.period for rule in spec.rules))
    for residue in range(step):
        level = start + residue
        kept = chosen(level)
        kept_growth = dominant(
            spec.rule_at(k).growth(level, step) for k in kept if spec.lo <= k <= spec.hi
        )
        rest_growth = dominant(
            rule.growth(level, step)
            for k, rule in zip(range(spec.lo, spec.hi + 1), spec.rules, strict=True)
            if k not in kept
        )
        if kept_growth is None:
            raise MissingEdge(
                f"the kept offsets {sorted(kept)} carry no edges from level {level} on "
                f"in steps of {step}",
                details={"level": level, "step": step, "offsets": sorted(kept)},
            )
        logger.debug(
            "residue %d: kept growth %s, remaining growth %s", residue, kept_growth, rest_growth
        )
        if rest_growth is not None and rest_growth.rate >= kept_growth.rate:
            return Verdict.INFINITE
    return Verdict.FINITE


def _triadic_verdict(chosen: ChosenOffsets, settles_at: int, period: int) -> Verdict:
    # Eventually only the vertical offset 0 lies in a bounded kept set.
    if any(0 in chosen(settles_at + residue) for residue in range(period)):
        return Verdict.INFINITE
    raise MissingEdge("the kept offsets eventually miss every edge of the diagram")


def series_verdict(
    spec: DiagramSpec,
    chosen: ChosenOffsets,
    settles_at: int,
    period: int,
) -> Verdict:
    """
    Classify ``sum_n (r_n - c_n) / c_n``.

    ``chosen(n)`` must be periodic with ``period`` from level ``settles_at``.
    """
    if isinstance(spec, RuleDiagram):
        return _rule_verdict(spec, chosen, settles_at, period)
    if isinstance(spec, ExplicitLevels) and spec.tail is not None:
        return _rule_verdict(spec.tail, chosen, max(settles_at, len(spec.levels)), period)
    if isinstance(spec, TriadicLevels):
        return _triadic_verdict(chosen, settles_at, period)
    return Verdict.UNDECIDED
