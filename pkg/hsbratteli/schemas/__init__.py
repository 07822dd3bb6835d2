"""Schema exports for reports."""

from .base import BaseSchema, Exact, OptionalExact, exact, exact_or_none, is_exact_field
from .response import ErrorReport, Report
from .rows import (
    BoundedSizeRow,
    CenterRow,
    ContinuityRow,
    DePosselTraceRow,
    DominatingRow,
    EcsRow,
    ExtensionRow,
    GCenterRow,
    HeightRow,
    MarkovRow,
    NoMeasureRow,
    OrbitRow,
    PathCountRow,
    SelfCheckRow,
    TelescopeRow,
    UnimodalRow,
    VectorCheckRow,
)

__all__ = [
    # Base helpers
    "BaseSchema",
    "Exact",
    "OptionalExact",
    "exact",
    "exact_or_none",
    "is_exact_field",
    # Envelopes
    "ErrorReport",
    "Report",
    # Rows
    "BoundedSizeRow",
    "CenterRow",
    "ContinuityRow",
    "DePosselTraceRow",
    "DominatingRow",
    "EcsRow",
    "ExtensionRow",
    "GCenterRow",
    "HeightRow",
    "MarkovRow",
    "NoMeasureRow",
    "OrbitRow",
    "PathCountRow",
    "SelfCheckRow",
    "TelescopeRow",
    "UnimodalRow",
    "VectorCheckRow",
]
