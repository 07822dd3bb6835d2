# pyright: reportUnusedImport=false
from .band import Band, LaurentPoly  # noqa: F401
from .diagram import (  # noqa: F401
    DiagramSpec,
    ExplicitLevels,
    RuleDiagram,
    TriadicLevels,
    class_c,
)
from .kernel import MarkovKernel  # noqa: F401
from .order import OrderKind, OrderSpec  # noqa: F401
from .path import Edge, FinitePath, Slot  # noqa: F401
from .rules import (  # noqa: F401
    Affine,
    Constant,
    ExplicitThenPeriodic,
    Geometric,
    OffsetSchedule,
    SequenceRule,
)
from .subdiagram import OdometerSpec, WindowFamily  # noqa: F401
