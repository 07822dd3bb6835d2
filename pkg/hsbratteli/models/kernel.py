"""
Horizontally invariant Markov kernels.

Probabilities sit on the outgoing slots of a source vertex and depend only
on the level and the slot, never on the vertex. The initial distribution
is the same constant at every vertex of level 0.
"""

from dataclasses import dataclass
from fractions import Fraction

from hsbratteli.core.errors import InvalidKernel
from hsbratteli.models.diagram import DiagramSpec
from hsbratteli.models.path import Slot, slots


@dataclass(frozen=True)
class MarkovKernel:
    """
    ``weights`` holds one probability tuple per level in canonical slot
    order, repeated cyclically; ``None`` is the uniform kernel ``1 / r_n``.
    """

    initial: Fraction
    weights: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "initial", Fraction(self.initial))
        if self.initial <= 0:
            raise InvalidKernel("initial value must be positive")
        if self.weights is None:
            return
        weights = tuple(tuple(Fraction(p) for p in level) for level in self.weights)
        if not weights:
            raise InvalidKernel("explicit kernel needs at least one level")
        for n, level in enumerate(weights):
            if not level or any(p <= 0 for p in level):
                raise InvalidKernel(
                    f"probabilities on level {n} must be positive",
                    details={"level": n},
                )
            if sum(level, Fraction(0)) != 1:
                raise InvalidKernel(
                    f"probabilities on level {n} sum to {sum(level, Fraction(0))}, not 1",
                    details={"level": n},
                )
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, initial: Fraction | int = 1) -> "MarkovKernel":
        return cls(Fraction(initial))

    @property
    def is_uniform(self) -> bool:
        return self.weights is None

    def level_probabilities(self, spec: DiagramSpec, n: int) -> dict[Slot, Fraction]:
        level_slots = slots(spec.band_at(n))
        if self.weights is None:
            p = Fraction(1, len(level_slots))
            return dict.fromkeys(level_slots, p)
        level = self.weights[n % len(self.weights)]
        if len(level) != len(level_slots):
            raise InvalidKernel(
                f"level {n} has {len(level_slots)} slots but {len(level)} probabilities",
                details={"level": n},
            )
        return dict(zip(level_slots, level, strict=True))

    def probability(self, spec: DiagramSpec, n: int, slot: Slot) -> Fraction:
        return self.level_probabilities(spec, n)[slot]
