"""
Horizontally stationary orders on incoming edges.

An order ranks the slots of a level; every range vertex of that level uses
the same ranking. Ranked tuples list the minimal slot first.
"""

import enum
from dataclasses import dataclass

from hsbratteli.core.errors import InvalidOrder
from hsbratteli.models.diagram import DiagramSpec
from hsbratteli.models.path import Slot, slots


class OrderKind(str, enum.Enum):
    LEFT_TO_RIGHT = "left-to-right"
    RIGHT_TO_LEFT = "right-to-left"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class OrderSpec:
    """
    Order kind plus, for explicit orders, one ranking per level.

    Explicit rankings repeat cyclically across levels.
    """

    kind: OrderKind
    levels: tuple[tuple[Slot, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", OrderKind(self.kind))
        levels = tuple(tuple(Slot(*s) for s in ranking) for ranking in self.levels)
        object.__setattr__(self, "levels", levels)
        if self.kind is OrderKind.EXPLICIT:
            if not levels:
                raise InvalidOrder("explicit order needs at least one ranking")
            for n, ranking in enumerate(levels):
                if len(set(ranking)) != len(ranking):
                    raise InvalidOrder(
                        f"ranking {n} lists a slot twice",
                        details={"ranking": [str(s) for s in ranking]},
                    )
        elif levels:
            raise InvalidOrder(f"{self.kind.value} order takes no explicit rankings")

    @classmethod
    def left_to_right(cls) -> "OrderSpec":
        return cls(OrderKind.LEFT_TO_RIGHT)

    @classmethod
    def right_to_left(cls) -> "OrderSpec":
        return cls(OrderKind.RIGHT_TO_LEFT)

    @classmethod
    def explicit(cls, *rankings: tuple[Slot, ...]) -> "OrderSpec":
        return cls(OrderKind.EXPLICIT, tuple(rankings))

    def is_level_independent(self) -> bool:
        return self.kind is not OrderKind.EXPLICIT or len(self.levels) == 1

    def ranked(self, spec: DiagramSpec, n: int) -> tuple[Slot, ...]:
        available = slots(spec.band_at(n))
        if self.kind is OrderKind.LEFT_TO_RIGHT:
            return available
        if self.kind is OrderKind.RIGHT_TO_LEFT:
            return tuple(reversed(available))
        ranking = self.levels[n % len(self.levels)]
        if sorted(ranking) != sorted(available):
            raise InvalidOrder(
                f"ranking for level {n} is not a permutation of its slots",
                details={
                    "level": n,
                    "ranking": [str(s) for s in ranking],
                    "slots": [str(s) for s in available],
                },
            )
        return ranking

    def reversed_order(self) -> "OrderSpec":
        if self.kind is OrderKind.LEFT_TO_RIGHT:
            return OrderSpec.right_to_left()
        if self.kind is OrderKind.RIGHT_TO_LEFT:
            return OrderSpec.left_to_right()
        return OrderSpec(
            OrderKind.EXPLICIT,
            tuple(tuple(reversed(ranking)) for ranking in self.levels),
        )


def reverse_order(order: OrderSpec) -> OrderSpec:
    return order.reversed_order()
