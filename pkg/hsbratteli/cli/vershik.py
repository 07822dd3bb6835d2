import logging
from dataclasses import dataclass

import click

from hsbratteli.analysis.vershik import (
    ContinuityReport,
    continuity_check,
    minimal_prefix,
    orbit,
    tower,
)
from hsbratteli.cli.parser import parse_path
from hsbratteli.cli.utils import CliContext, emit, horizon_option, pass_cli
from hsbratteli.models.diagram import height
from hsbratteli.models.order import OrderSpec, reverse_order
from hsbratteli.schemas import ContinuityRow, OrbitRow

logger = logging.getLogger(__name__)


@dataclass
class VershikContext:
    cli: CliContext
    order_name: str

    @property
    def order(self) -> OrderSpec:
        return self.cli.document.order(self.order_name)


pass_vershik = click.make_pass_decorator(VershikContext)


@click.group("vershik")
@click.option("--order", "order_name", required=True, help="Order name from the spec file.")
@pass_cli
@click.pass_context
def vershik_group(ctx: click.Context, cli: CliContext, order_name: str):
    """
    Vershik map computations under a named order.
    """
    ctx.obj = VershikContext(cli, order_name)


@vershik_group.command("orbit")
@click.option("--path", "path_text", help="Start path 'BASE[k:c ...]' from level 0.")
@click.option("--vertex", type=int, default=0, show_default=True,
              help="Without --path, start at the minimal path into this vertex.")
@click.option("--depth", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--steps", type=click.IntRange(min=1), help="Successor steps; default is the full tower.")
@pass_vershik
def orbit_command(
    vershik: VershikContext, path_text: str | None, vertex: int, depth: int, steps: int | None
):
    """
    Iterate the successor map until the maximal prefix or STEPS.
    """
    cli = vershik.cli
    diagram = cli.document.diagram
    if path_text is not None:
        start = parse_path(path_text)
        result = orbit(diagram, vershik.order, start, steps or height(diagram, start.depth))
    elif steps is not None:
        start = minimal_prefix(diagram, vershik.order, vertex, depth)
        result = orbit(diagram, vershik.order, start, steps)
    else:
        result = tower(diagram, vershik.order, vertex, depth)

    rows = [
        OrbitRow(step=i, path=str(path), base=path.base_vertex, terminal=path.terminal)
        for i, path in enumerate(result.paths)
    ]
    emit(
        cli,
        "vershik orbit",
        rows,
        order=vershik.order_name,
        reached_maximal=result.reached_maximal,
        terminal=result.terminal,
        range_invariant=result.range_invariant,
        distinct=len(set(result.paths)),
    )


def _emit_continuity(cli: CliContext, command: str, name: str, report: ContinuityReport) -> None:
    rows = [
        ContinuityRow(
            level=record.level,
            w=record.w,
            sources=", ".join(str(s) for s in record.sources),
            v=record.v,
            v_minus_w=record.v_minus_w,
            link=record.link,
        )
        for record in report.records
    ]
    emit(
        cli,
        command,
        rows,
        order=name,
        verdict=report.label,
        failed_level=report.failed_level,
        witness=report.witness or None,
        all_levels=report.all_levels,
    )


@vershik_group.command("continuity")
@horizon_option()
@click.option("--vertex", type=int, default=0, show_default=True)
@pass_vershik
def continuity_command(vershik: VershikContext, horizon: int, vertex: int):
    """
    Check continuity of the Vershik map up to HORIZON levels.

    A discontinuity is a verdict and exits 0.
    """
    report = continuity_check(vershik.cli.document.diagram, vershik.order, horizon, vertex)
    _emit_continuity(vershik.cli, "vershik continuity", vershik.order_name, report)


@vershik_group.command("reverse-continuity")
@horizon_option()
@click.option("--vertex", type=int, default=0, show_default=True)
@pass_vershik
def reverse_continuity_command(vershik: VershikContext, horizon: int, vertex: int):
    """
    Continuity of the inverse map, checked on the reversed order.
    """
    order = reverse_order(vershik.order)
    report = continuity_check(vershik.cli.document.diagram, order, horizon, vertex)
    _emit_continuity(vershik.cli, "vershik reverse-continuity", vershik.order_name, report)
