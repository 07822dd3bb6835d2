import logging

import click

from hsbratteli.cli.parser import serialize_spec
from hsbratteli.cli.utils import CliContext, emit, horizon_option, pass_cli
from hsbratteli.core.errors import InvalidArgument
from hsbratteli.models.band import row_sum
from hsbratteli.models.diagram import (
    bounded_size_params,
    heights,
    path_count_band,
    path_count_bruteforce_profile,
    telescope,
    telescope_every,
)
from hsbratteli.schemas import (
    BoundedSizeRow,
    HeightRow,
    PathCountRow,
    TelescopeRow,
    exact,
    exact_or_none,
)

logger = logging.getLogger(__name__)


@click.command("heights")
@click.option("--to", "stop", type=click.IntRange(min=0), required=True, help="Last level.")
@pass_cli
def heights_command(cli: CliContext, stop: int):
    """
    Tower heights H(n) for levels 0 .. N.
    """
    values = heights(cli.document.diagram, stop + 1)
    rows = [HeightRow(level=n, height=exact(h)) for n, h in enumerate(values)]
    emit(cli, "heights", rows, levels=stop + 1)


@click.command("pathcount")
@click.option("--from", "start", type=click.IntRange(min=0), required=True, help="Level n.")
@click.option("--span", type=click.IntRange(min=1), required=True, help="Number of levels m.")
@click.option("--oracle", is_flag=True, help="Cross-check against path enumeration.")
@pass_cli
def pathcount_command(cli: CliContext, start: int, span: int, oracle: bool):
    """
    Band of path counts between level n and level n + m.

    With --oracle every offset is compared against brute-force enumeration;
    a mismatch exits 2.
    """
    diagram = cli.document.diagram
    band = path_count_band(diagram, start, span)
    brute = path_count_bruteforce_profile(diagram, start, span) if oracle else None

    offsets = band.offsets if brute is None else range(
        min(band.lo, brute.lo), max(band.hi, brute.hi) + 1
    )
    rows = []
    for k in offsets:
        count = band.coefficient(k)
        expected = brute.coefficient(k) if brute is not None else None
        rows.append(
            PathCountRow(
                offset=k,
                count=exact(count),
                oracle=exact_or_none(expected),
                agrees=None if expected is None else expected == count,
            )
        )
    agrees = None if brute is None else brute == band
    emit(
        cli,
        "pathcount",
        rows,
        band=str(band),
        total=exact(row_sum(band)),
        oracle=str(brute) if brute is not None else None,
        agrees=agrees,
    )
    if agrees is False:
        logger.warning("path-count band disagrees with enumeration")
        return 2
    return 0


@click.command("telescope")
@click.option("--cuts", help="Comma-separated levels, starting at 0.")
@click.option("--every", "step", type=click.IntRange(min=1), help="Collapse every STEP levels.")
@horizon_option("--count")
@pass_cli
def telescope_command(cli: CliContext, cuts: str | None, step: int | None, horizon: int):
    """
    Collapse levels between cuts into single bands.
    """
    diagram = cli.document.diagram
    if (cuts is None) == (step is None):
        raise click.UsageError("give exactly one of --cuts and --every")
    if cuts is not None:
        try:
            levels = [int(token) for token in cuts.split(",")]
        except ValueError:
            raise click.BadParameter(f"not a list of levels: {cuts!r}", param_hint="--cuts") from None
        collapsed = telescope(diagram, levels)
    else:
        assert step is not None
        collapsed = telescope_every(diagram, step, horizon)

    running = 1
    rows = []
    for n, band in enumerate(collapsed.levels):
        running *= int(row_sum(band))
        rows.append(
            TelescopeRow(level=n, band=str(band), row_sum=exact(row_sum(band)), height=exact(running))
        )
    emit(cli, "telescope", rows, levels=len(rows))


@click.command("bounded-size")
@click.option("--level", type=click.IntRange(min=0), help="A single level.")
@horizon_option("--levels")
@pass_cli
def bounded_size_command(cli: CliContext, level: int | None, horizon: int):
    """
    Bounded-size parameters (t, L) of each level's band.
    """
    diagram = cli.document.diagram
    levels = [level] if level is not None else range(horizon)
    params = [bounded_size_params(diagram, n) for n in levels]
    rows = [
        BoundedSizeRow(level=p.level, t=p.t, L=p.L, symmetric=p.symmetric, full=p.full)
        for p in params
    ]
    emit(
        cli,
        "bounded-size",
        rows,
        t_max=max(p.t for p in params),
        L_max=max(p.L for p in params),
    )


@click.command("show")
@pass_cli
def show_command(cli: CliContext):
    """
    Print the parsed spec in canonical form.
    """
    document = cli.document
    if cli.format != "table":
        raise InvalidArgument("show prints spec text; use the table format")
    click.echo(serialize_spec(document), nl=False)
