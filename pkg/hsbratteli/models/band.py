"""
Bands: finitely supported diagonal profiles of banded Toeplitz matrices.

A band with coefficient ``b_k`` at offset ``k`` stands for the infinite
matrix ``F`` with ``F[i][i + k] = b_k`` (offset is column minus row).
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any

import numpy as np
import sympy

from hsbratteli.core.errors import EmptyBand, InvalidBand, ZeroBand

Z = sympy.Symbol("z")


@dataclass(frozen=True)
class Band:
    """Canonical band: non-negative exact coefficients, nonzero at both ends."""

    lo: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        values = [Fraction(c) for c in self.coefficients]
        if any(c < 0 for c in values):
            raise InvalidBand(
                "coefficient must be non-negative",
                details={"lo": self.lo, "coefficients": [str(c) for c in values]},
            )
        start = 0
        while start < len(values) and values[start] == 0:
            start += 1
        end = len(values)
        while end > start and values[end - 1] == 0:
            end -= 1
        if start == end:
            raise EmptyBand("band has no nonzero coefficient")
        object.__setattr__(self, "lo", int(self.lo) + start)
        object.__setattr__(self, "coefficients", tuple(values[start:end]))

    @classmethod
    def of(cls, lo: int, coefficients: Iterable[Any]) -> "Band":
        return cls(lo, tuple(Fraction(c) for c in coefficients))

    @classmethod
    def from_mapping(cls, entries: dict[int, Any]) -> "Band":
        if not entries:
            raise EmptyBand("band has no nonzero coefficient")
        lo, hi = min(entries), max(entries)
        return cls(lo, tuple(Fraction(entries.get(k, 0)) for k in range(lo, hi + 1)))

    @property
    def hi(self) -> int:
        return self.lo + len(self.coefficients) - 1

    @property
    def offsets(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def coefficient(self, offset: int) -> Fraction:
        if self.lo <= offset <= self.hi:
            return self.coefficients[offset - self.lo]
        return Fraction(0)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """Yield ``(offset, coefficient)`` for the nonzero coefficients."""
        for k, c in zip(self.offsets, self.coefficients, strict=True):
            if c:
                yield k, c

    def reversed(self) -> "Band":
        return Band(-self.hi, tuple(reversed(self.coefficients)))

    def shifted(self, offset: int) -> "Band":
        return Band(self.lo + offset, self.coefficients)

    def scaled(self, factor: Any) -> "Band":
        return Band(self.lo, tuple(c * Fraction(factor) for c in self.coefficients))

    def __str__(self) -> str:
        body = ", ".join(str(c) for c in self.coefficients)
        return f"[{body}] @ {self.lo}"


def convolve(a: Band, b: Band) -> Band:
    """Profile of the Toeplitz product ``A B``."""
    out = [Fraction(0)] * (len(a.coefficients) + len(b.coefficients) - 1)
    for i, x in enumerate(a.coefficients):
        if not x:
            continue
        for j, y in enumerate(b.coefficients):
            out[i + j] += x * y
    return Band(a.lo + b.lo, tuple(out))


def convolve_all(bands: Iterable[Band]) -> Band:
    """Left-to-right product of a nonempty sequence of bands."""
    return reduce(convolve, bands)


def row_sum(b: Band) -> Fraction:
    return sum(b.coefficients, Fraction(0))


def stochasticize(b: Band) -> Band:
    total = row_sum(b)
    if total == 0:
        raise ZeroBand("row sum is zero", details={"band": str(b)})
    return Band(b.lo, tuple(c / total for c in b.coefficients))


def transpose(b: Band) -> Band:
    """Profile of ``Fᵀ``."""
    return b.reversed()


# Windowed realisations


def toeplitz_window(b: Band, size: int, origin: int = 0) -> np.ndarray:
    """Square window ``F[i][j]`` for ``origin <= i, j < origin + size``."""
    window = np.empty((size, size), dtype=object)
    for r in range(size):
        for c in range(size):
            window[r, c] = b.coefficient(c - r)
    return window


def _as_matrix(m: Any) -> np.ndarray:
    matrix = np.asarray(m, dtype=object)
    if matrix.ndim != 2:
        raise InvalidBand("window must be a rectangular matrix")
    return matrix


def is_toeplitz_window(m: Any) -> bool:
    """True iff every diagonal of the rectangular window is constant."""
    matrix = _as_matrix(m)
    rows, cols = matrix.shape
    if rows < 2 or cols < 2:
        return True
    return bool(np.all(matrix[1:, 1:] == matrix[:-1, :-1]))


def shift_commutes(m: Any) -> bool:
    """Check ``F T = T F`` for the unit shift ``T`` on the window interior."""
    matrix = _as_matrix(m)
    rows, cols = matrix.shape
    if rows < 2 or cols < 2:
        return True
    right = np.zeros((cols, cols), dtype=object)
    for j in range(1, cols):
        right[j - 1, j] = 1
    left = np.zeros((rows, rows), dtype=object)
    for i in range(rows - 1):
        left[i, i + 1] = 1
    ft = matrix.dot(right)
    tf = left.dot(matrix)
    return bool(np.all(ft[:-1, 1:] == tf[:-1, 1:]))


def trusted_rows(left: Band, size: int) -> range:
    """
    Rows of a ``size`` window product ``W(left) @ W(right)`` that equal
    the infinite product exactly.

    A row is trusted when the whole support of ``left`` on that row lies
    inside the window.
    """
    start = max(0, -left.lo)
    stop = size - max(0, left.hi)
    return range(start, max(start, stop))


def windowed_product(a: Band, b: Band, size: int) -> np.ndarray:
    return toeplitz_window(a, size).dot(toeplitz_window(b, size))


# Laurent view


@dataclass(frozen=True)
class LaurentPoly:
    """``z**shift * poly`` with ``poly`` over QQ and a nonzero constant term."""

    shift: int
    poly: sympy.Poly

    @classmethod
    def from_band(cls, b: Band) -> "LaurentPoly":
        coeffs = [sympy.Rational(c.numerator, c.denominator) for c in b.coefficients]
        poly = sympy.Poly.from_list(list(reversed(coeffs)), Z, domain=sympy.QQ)
        return cls(b.lo, poly)

    def to_band(self) -> Band:
        ascending = list(reversed(self.poly.all_coeffs()))
        return Band(
            self.shift,
            tuple(Fraction(int(c.p), int(c.q)) for c in ascending),
        )

    def as_expr(self) -> sympy.Expr:
        return sympy.expand(Z**self.shift * self.poly.as_expr())

    def __str__(self) -> str:
        return str(self.as_expr())


def laurent_multiply(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(a.shift + b.shift, a.poly * b.poly)

