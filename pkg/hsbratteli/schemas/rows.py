"""Row schemas, one per report kind."""

from .base import BaseSchema, Exact, OptionalExact


class HeightRow(BaseSchema):
    level: int
    height: Exact


class PathCountRow(BaseSchema):
    offset: int
    count: Exact
    oracle: OptionalExact = None
    agrees: bool | None = None


class TelescopeRow(BaseSchema):
    level: int
    band: str
    row_sum: Exact
    height: Exact


class BoundedSizeRow(BaseSchema):
    level: int
    t: int
    L: int
    symmetric: bool
    full: bool


class ExtensionRow(BaseSchema):
    level: int
    vertex: int
    f: Exact
    sigma: Exact
    alpha: Exact


class EcsRow(BaseSchema):
    level: int
    window: str
    column_sum: Exact
    alpha: Exact
    component: OptionalExact = None


class DominatingRow(BaseSchema):
    level: int
    offsets: str


class VectorCheckRow(BaseSchema):
    level: int
    vector: str
    holds: bool


class MarkovRow(BaseSchema):
    depth: int
    paths: int
    passed: bool


class GCenterRow(BaseSchema):
    m: int
    formula: Exact
    convolution: Exact
    agrees: bool


class UnimodalRow(BaseSchema):
    m: int
    band: str
    unimodal: bool


class NoMeasureRow(BaseSchema):
    m: int
    term: Exact


class CenterRow(BaseSchema):
    m: int
    g: Exact


class DePosselTraceRow(BaseSchema):
    m: int
    paths: Exact
    over_diagonal: Exact
    over_height: Exact
    ratio: OptionalExact
    target: Exact


class OrbitRow(BaseSchema):
    step: int
    path: str
    base: int
    terminal: int


class ContinuityRow(BaseSchema):
    level: int
    w: int
    sources: str
    v: int | None
    v_minus_w: int | None
    link: bool | None


class SelfCheckRow(BaseSchema):
    check: str
    trials: int
    passed: bool
