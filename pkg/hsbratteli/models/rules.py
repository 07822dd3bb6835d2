"""
Closed-form sequence rules for level-indexed coefficients.

Rules form a small closed algebra so that infinite series built from them
can be classified symbolically. Every rule knows its value at a level,
its eventual period and its growth along an arithmetic progression of
levels.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple

from hsbratteli.core.errors import RuleOverflow


class Growth(NamedTuple):
    """Asymptotic size ``C * rate**t * t**degree`` along a progression."""

    rate: Fraction
    degree: int


def _fraction(value: Any) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def _text(value: Fraction) -> str:
    return str(value)


class SequenceRule(ABC):
    """Non-negative rational sequence indexed by level ``n >= 0``."""

    @abstractmethod
    def value(self, n: int) -> Fraction: ...

    @property
    @abstractmethod
    def settles_at(self) -> int:
        """First level from which the rule follows its periodic regime."""

    @property
    @abstractmethod
    def period(self) -> int: ...

    @abstractmethod
    def growth(self, start: int, step: int) -> Growth | None:
        """
        Growth of ``value(start + step * t)`` as ``t`` grows.

        ``start`` must be at least ``settles_at`` and ``step`` a multiple
        of ``period``. ``None`` means the subsequence is eventually zero.
        """

    @abstractmethod
    def is_bounded(self) -> bool: ...

    @abstractmethod
    def to_text(self) -> str: ...

    def values(self, start: int, stop: int) -> list[Fraction]:
        return [self.value(n) for n in range(start, stop)]

    def integer_value(self, n: int) -> int:
        v = self.value(n)
        if v.denominator != 1:
            raise RuleOverflow(
                f"rule {self.to_text()} yields non-integer {v} at level {n}",
                details={"level": n, "value": str(v)},
            )
        return v.numerator

    def reciprocal_series_converges(self) -> bool:
        """Whether ``sum 1 / value(n)`` over the nonzero terms is finite."""
        growth = self.growth(self.settles_at, self.period)
        return growth is not None and growth.rate > 1

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Constant(SequenceRule):
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", _fraction(self.c))
        if self.c < 0:
            raise RuleOverflow("coefficient must be non-negative", details={"rule": self.to_text()})

    def value(self, n: int) -> Fraction:
        return self.c

    @property
    def settles_at(self) -> int:
        return 0

    @property
    def period(self) -> int:
        return 1

    def growth(self, start: int, step: int) -> Growth | None:
        return Growth(Fraction(1), 0) if self.c else None

    def is_bounded(self) -> bool:
        return True

    def to_text(self) -> str:
        return f"constant({_text(self.c)})"


@dataclass(frozen=True)
class Affine(SequenceRule):
    """``slope * n + intercept``."""

    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", _fraction(self.slope))
        object.__setattr__(self, "intercept", _fraction(self.intercept))
        if self.slope < 0 or self.intercept < 0:
            raise RuleOverflow("coefficient must be non-negative", details={"rule": self.to_text()})

    def value(self, n: int) -> Fraction:
        return self.slope * n + self.intercept

    @property
    def settles_at(self) -> int:
        return 0

    @property
    def period(self) -> int:
        return 1

    def growth(self, start: int, step: int) -> Growth | None:
        if self.slope:
            return Growth(Fraction(1), 1)
        return Growth(Fraction(1), 0) if self.intercept else None

    def is_bounded(self) -> bool:
        return self.slope == 0

    def to_text(self) -> str:
        return f"affine({_text(self.slope)},{_text(self.intercept)})"


@dataclass(frozen=True)
class Geometric(SequenceRule):
    """``base * ratio**n``."""

    base: Fraction
    ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "base", _fraction(self.base))
        object.__setattr__(self, "ratio", _fraction(self.ratio))
        if self.base < 0 or self.ratio < 0:
            raise RuleOverflow("coefficient must be non-negative", details={"rule": self.to_text()})

    def value(self, n: int) -> Fraction:
        return self.base * self.ratio**n

    @property
    def settles_at(self) -> int:
        return 1 if self.ratio == 0 else 0

    @property
    def period(self) -> int:
        return 1

    def growth(self, start: int, step: int) -> Growth | None:
        if not self.base or not self.ratio:
            return None
        return Growth(self.ratio**step, 0)

    def is_bounded(self) -> bool:
        return self.base == 0 or self.ratio <= 1

    def to_text(self) -> str:
        return f"geometric({_text(self.base)},{_text(self.ratio)})"


@dataclass(frozen=True)
class ExplicitThenPeriodic(SequenceRule):
    """Finite prefix, then a nonempty cycle repeated forever."""

    prefix: tuple[Fraction, ...]
    cycle: tuple[Fraction, ...]

    def __post_init__(self):
        prefix = tuple(_fraction(v) for v in self.prefix)
        cycle = tuple(_fraction(v) for v in self.cycle)
        if not cycle:
            raise RuleOverflow("explicit rule needs a nonempty cycle")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)
        if any(v < 0 for v in prefix + cycle):
            raise RuleOverflow("coefficient must be non-negative", details={"rule": self.to_text()})

    def value(self, n: int) -> Fraction:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    @property
    def settles_at(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.cycle)

    def growth(self, start: int, step: int) -> Growth | None:
        return Growth(Fraction(1), 0) if self.value(start) else None

    def is_bounded(self) -> bool:
        return True

    def to_text(self) -> str:
        cycle = ",".join(_text(v) for v in self.cycle)
        if not self.prefix:
            return f"explicit({cycle})"
        prefix = ",".join(_text(v) for v in self.prefix)
        return f"explicit({prefix} | {cycle})"


@dataclass(frozen=True)
class OffsetSchedule:
    """Eventually periodic integer sequence, e.g. the offsets of an odometer."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        if not self.cycle:
            raise RuleOverflow("offset schedule needs a nonempty cycle")
        object.__setattr__(self, "prefix", tuple(int(v) for v in self.prefix))
        object.__setattr__(self, "cycle", tuple(int(v) for v in self.cycle))

    @classmethod
    def constant(cls, offset: int) -> "OffsetSchedule":
        return cls((), (offset,))

    def value(self, n: int) -> int:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def values(self, stop: int) -> list[int]:
        return [self.value(n) for n in range(stop)]

    @property
    def settles_at(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.cycle)

    def to_text(self) -> str:
        cycle = ", ".join(str(v) for v in self.cycle)
        if not self.prefix:
            return cycle
        return ", ".join(str(v) for v in self.prefix) + " | " + cycle

    def __str__(self) -> str:
        return self.to_text()
