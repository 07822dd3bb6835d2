"""
Computations on class-C diagrams (tridiagonal, diagonal ``a_n``, unit
off-diagonals).

Path counts between levels reduce to elementary symmetric polynomials of
the diagonal values, computed with the usual one-pass recurrence.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod

from hsbratteli.core.errors import Intractable, InvalidArgument, RuleOverflow
from hsbratteli.core.settings import get_settings
from hsbratteli.models.band import Band
from hsbratteli.models.diagram import class_c, path_count_band
from hsbratteli.models.rules import Affine, SequenceRule

logger = logging.getLogger(__name__)


def elementary_symmetric(values: Sequence[Fraction | int], order: int) -> list[Fraction]:
    """``[e_0, ..., e_order]`` of ``values``."""
    table = [Fraction(1)] + [Fraction(0)] * order
    for count, x in enumerate(values, start=1):
        for j in range(min(count, order), 0, -1):
            table[j] += x * table[j - 1]
    return table


def _diagonal(a_rule: SequenceRule, n: int, m: int) -> list[int]:
    limit = get_settings().MAX_SYMMETRIC_SPAN
    if m > limit:
        raise Intractable(
            f"span {m} exceeds the symmetric-polynomial guard {limit}",
            details={"span": m, "limit": limit},
        )
    values = [a_rule.integer_value(j) for j in range(n, n + m)]
    for j, a in enumerate(values, start=n):
        if a < 1:
            raise RuleOverflow(
                f"class-C diagonal must be at least 1, got {a} at level {j}",
                details={"level": j, "value": a},
            )
    return values


def classc_heights(a_rule: SequenceRule, stop: int) -> list[int]:
    """``H(n) = prod_{l < n} (a_l + 2)`` for ``n = 0 .. stop - 1``."""
    out = [1]
    for a in _diagonal(a_rule, 0, max(stop - 1, 0)):
        out.append(out[-1] * (a + 2))
    return out[:stop]


def classc_g_center(a_rule: SequenceRule, n: int, m: int) -> int:
    """
    Paths from a vertex of level ``n + m`` down to the same vertex of
    level ``n``: ``sum_k C(2k, k) e_{m-2k}(a_n, ..., a_{n+m-1})``.
    """
    if m < 1:
        raise InvalidArgument(f"span must be at least 1, got {m}")
    e = elementary_symmetric(_diagonal(a_rule, n, m), m)
    return int(sum(comb(2 * k, k) * e[m - 2 * k] for k in range(m // 2 + 1)))


def classc_center_stochastic(a_rule: SequenceRule, n: int, m: int) -> Fraction:
    """Diagonal entry of the stochastic product ``G(n, m)``."""
    diagonal = _diagonal(a_rule, n, m)
    return Fraction(classc_g_center(a_rule, n, m), prod(a + 2 for a in diagonal))


def classc_center_trace(a_rule: SequenceRule, n: int, horizon: int) -> list[Fraction]:
    return [classc_center_stochastic(a_rule, n, m) for m in range(1, horizon + 1)]


def classc_no_measure_term(a_rule: SequenceRule, n: int, size: int, m: int) -> Fraction:
    """``prod a_j / (a_j + 2) * e_size(1 / a_n, ..., 1 / a_{n+m-1})``."""
    if size < 0:
        raise InvalidArgument(f"subset size must be non-negative, got {size}")
    diagonal = _diagonal(a_rule, n, m)
    factor = Fraction(prod(diagonal), prod(a + 2 for a in diagonal))
    if size > m:
        return Fraction(0)
    e = elementary_symmetric([Fraction(1, a) for a in diagonal], size)
    return factor * e[size]


def classc_no_measure_trace(
    a_rule: SequenceRule, n: int, size: int, horizon: int
) -> list[Fraction]:
    return [classc_no_measure_term(a_rule, n, size, m) for m in range(1, horizon + 1)]


@dataclass(frozen=True)
class ClosedForm:
    """
    ``prod_{j=n}^{n+m-1} a_j / (a_j + 2)`` for ``a_j = j + b``.

    ``exact`` is the direct product, ``telescoped`` its closed form and
    ``shifted`` the closed form evaluated one level earlier.
    """

    n: int
    m: int
    exact: Fraction
    telescoped: Fraction
    shifted: Fraction

    @property
    def agrees(self) -> bool:
        return self.exact == self.telescoped


def telescoped_product(a_rule: SequenceRule, n: int, m: int) -> ClosedForm:
    if not isinstance(a_rule, Affine) or a_rule.slope != 1:
        raise InvalidArgument("closed form needs a diagonal of the form n + b")
    b = a_rule.intercept
    diagonal = _diagonal(a_rule, n, m)
    exact = Fraction(prod(diagonal), prod(a + 2 for a in diagonal))
    telescoped = (n + b) * (n + b + 1) / ((n + m + b) * (n + m + b + 1))
    shifted = (n + b - 1) * (n + b) / ((n + m + b - 1) * (n + m + b))
    return ClosedForm(n=n, m=m, exact=exact, telescoped=telescoped, shifted=shifted)


def is_unimodal(band: Band) -> bool:
    """Nondecreasing up to offset 0, nonincreasing after, maximum at 0."""
    left = [band.coefficient(k) for k in range(band.lo, 1)]
    right = [band.coefficient(k) for k in range(0, band.hi + 1)]
    rising = all(x <= y for x, y in zip(left, left[1:], strict=False))
    falling = all(x >= y for x, y in zip(right, right[1:], strict=False))
    return rising and falling and band.coefficient(0) == max(band.coefficients)


def classc_path_band(a_rule: SequenceRule, n: int, m: int) -> Band:
    return path_count_band(class_c(a_rule), n, m)


@dataclass(frozen=True)
class DePosselRow:
    m: int
    paths: int
    over_diagonal: Fraction
    over_height: Fraction
    ratio: Fraction | None
    target: Fraction


def depossel_ratio_trace(
    a_rule: SequenceRule, n: int, offset: int, horizon: int
) -> list[DePosselRow]:
    """
    For ``m = 1 .. horizon``, the path count ``g'(n, m)`` at ``offset``
    divided by ``a_0 ... a_{n+m-1}`` and by ``(a_0 + 2) ... (a_{n+m-1} + 2)``.

    Their ratio is compared with ``prod_{l < n+m} (a_l + 2) / a_l``.
    """
    rows = []
    for m in range(1, horizon + 1):
        diagonal = _diagonal(a_rule, 0, n + m)
        paths = int(classc_path_band(a_rule, n, m).coefficient(offset))
        plain, tower = prod(diagonal), prod(a + 2 for a in diagonal)
        over_diagonal = Fraction(paths, plain)
        over_height = Fraction(paths, tower)
        rows.append(
            DePosselRow(
                m=m,
                paths=paths,
                over_diagonal=over_diagonal,
                over_height=over_height,
                ratio=over_diagonal / over_height if paths else None,
                target=Fraction(tower, plain),
            )
        )
    return rows


def within_tolerance(value: Fraction, target: Fraction, percent: int | None = None) -> bool:
    tolerance = percent if percent is not None else get_settings().CONVERGENCE_TOLERANCE_PERCENT
    return abs(value - target) * 100 <= abs(target) * tolerance
