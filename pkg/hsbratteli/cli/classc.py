import logging
from fractions import Fraction

import click

from hsbratteli.analysis.classc import (
    classc_center_trace,
    classc_g_center,
    classc_no_measure_trace,
    classc_path_band,
    depossel_ratio_trace,
    is_unimodal,
    telescoped_product,
    within_tolerance,
)
from hsbratteli.cli.utils import CliContext, emit, horizon_option, pass_cli
from hsbratteli.core.errors import InvalidArgument
from hsbratteli.models.diagram import class_c_rule, path_count_band
from hsbratteli.models.rules import Affine, SequenceRule
from hsbratteli.schemas import (
    CenterRow,
    DePosselTraceRow,
    GCenterRow,
    NoMeasureRow,
    UnimodalRow,
    exact,
    exact_or_none,
)

logger = logging.getLogger(__name__)

CHECKS = ("gcenter", "unimodal", "nomeasure", "center", "depossel")


def _gcenter(cli: CliContext, rule: SequenceRule, n: int, horizon: int) -> int:
    rows = []
    for m in range(1, horizon + 1):
        formula = classc_g_center(rule, n, m)
        convolution = path_count_band(cli.document.diagram, n, m).coefficient(0)
        rows.append(
            GCenterRow(
                m=m,
                formula=exact(formula),
                convolution=exact(convolution),
                agrees=formula == convolution,
            )
        )
    passed = all(row.agrees for row in rows)
    emit(cli, "classc", rows, check="gcenter", level=n, passed=passed)
    return 0 if passed else 2


def _unimodal(cli: CliContext, rule: SequenceRule, n: int, horizon: int) -> int:
    rows = []
    for m in range(1, horizon + 1):
        band = classc_path_band(rule, n, m)
        rows.append(UnimodalRow(m=m, band=str(band), unimodal=is_unimodal(band)))
    passed = all(row.unimodal for row in rows)
    emit(cli, "classc", rows, check="unimodal", level=n, passed=passed)
    return 0 if passed else 2


def _nomeasure(
    cli: CliContext, rule: SequenceRule, n: int, horizon: int, size: int, threshold: Fraction | None
) -> int:
    terms = classc_no_measure_trace(rule, n, size, horizon)
    rows = [NoMeasureRow(m=m, term=exact(t)) for m, t in enumerate(terms, start=1)]
    summary: dict[str, object] = {
        "check": "nomeasure",
        "level": n,
        "size": size,
        "reciprocal_series_converges": rule.reciprocal_series_converges(),
    }
    if threshold is not None:
        below = [m for m, t in enumerate(terms, start=1) if t < threshold]
        summary["threshold"] = exact(threshold)
        summary["first_below"] = below[0] if below else None
    if isinstance(rule, Affine) and rule.slope == 1:
        closed = telescoped_product(rule, n, horizon)
        summary["product"] = exact(closed.exact)
        summary["closed_form"] = exact(closed.telescoped)
        summary["shifted_form"] = exact(closed.shifted)
        summary["closed_form_agrees"] = closed.agrees
    emit(cli, "classc", rows, **summary)
    return 0


def _center(cli: CliContext, rule: SequenceRule, n: int, horizon: int) -> int:
    trace = classc_center_trace(rule, n, horizon)
    rows = [CenterRow(m=m, g=exact(g)) for m, g in enumerate(trace, start=1)]
    decreasing = all(b < a for a, b in zip(trace, trace[1:], strict=False))
    emit(cli, "classc", rows, check="center", level=n, decreasing=decreasing)
    return 0


def _depossel(cli: CliContext, rule: SequenceRule, n: int, horizon: int, offset: int) -> int:
    trace = depossel_ratio_trace(rule, n, offset, horizon)
    rows = [
        DePosselTraceRow(
            m=row.m,
            paths=exact(row.paths),
            over_diagonal=exact(row.over_diagonal),
            over_height=exact(row.over_height),
            ratio=exact_or_none(row.ratio),
            target=exact(row.target),
        )
        for row in trace
    ]
    last = trace[-1]
    emit(
        cli,
        "classc",
        rows,
        check="depossel",
        level=n,
        offset=offset,
        within_tolerance=last.ratio is not None and within_tolerance(last.ratio, last.target),
    )
    return 0


@click.command("classc")
@click.option("--check", type=click.Choice(CHECKS), required=True)
@click.option("--level", "n", type=click.IntRange(min=0), default=0, show_default=True)
@horizon_option("--span")
@click.option("--size", type=click.IntRange(min=0), default=0, show_default=True,
              help="Subset size l for nomeasure.")
@click.option("--threshold", help="Report the first span whose nomeasure term drops below this.")
@click.option("--offset", type=int, default=0, show_default=True, help="Offset for depossel.")
@pass_cli
def classc_command(
    cli: CliContext,
    check: str,
    n: int,
    horizon: int,
    size: int,
    threshold: str | None,
    offset: int,
):
    """
    Class-C computations for spans m = 1 .. SPAN.

    gcenter and unimodal exit 2 when some span fails.
    """
    rule = class_c_rule(cli.document.diagram)
    if rule is None:
        raise InvalidArgument("the diagram in the spec file is not a class-C diagram")
    logger.info(f"classc {check} from level {n} over {horizon} spans")
    if check == "gcenter":
        return _gcenter(cli, rule, n, horizon)
    if check == "unimodal":
        return _unimodal(cli, rule, n, horizon)
    if check == "nomeasure":
        try:
            limit = Fraction(threshold) if threshold is not None else None
        except (ValueError, ZeroDivisionError):
            raise click.BadParameter(f"not a rational: {threshold!r}", param_hint="--threshold") from None
        return _nomeasure(cli, rule, n, horizon, size, limit)
    if check == "center":
        return _center(cli, rule, n, horizon)
    return _depossel(cli, rule, n, horizon, offset)
