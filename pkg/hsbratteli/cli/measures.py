import logging
from pathlib import Path

import click

from hsbratteli.analysis.measures import (
    FiniteVec,
    MeasureVector,
    dominating_offsets,
    ecs_subdiagram_extension,
    extension_report,
    fourier_check,
    is_dominating,
    markov_tail_invariance_check,
    pull_back,
    pull_back_family,
    tail_parallel,
    uniform_family,
    verify_tail_invariant,
)
from hsbratteli.cli.parser import parse_vectors
from hsbratteli.cli.utils import CliContext, emit, horizon_option, pass_cli
from hsbratteli.core.errors import IdentityViolation, InvalidArgument
from hsbratteli.schemas import (
    DominatingRow,
    EcsRow,
    ExtensionRow,
    MarkovRow,
    VectorCheckRow,
    exact,
    exact_or_none,
)

logger = logging.getLogger(__name__)


@click.command("extension")
@click.option("--odometer", "name", required=True, help="Odometer name from the spec file.")
@horizon_option()
@pass_cli
def extension_command(cli: CliContext, name: str, horizon: int):
    """
    Extend the odometer measure and report the partial values.
    """
    document = cli.document
    report = extension_report(document.diagram, document.odometer(name), horizon)
    rows = [
        ExtensionRow(
            level=n,
            vertex=report.vertices[n],
            f=exact(report.coefficients[n]),
            sigma=exact(report.sigmas[n]),
            alpha=exact(report.alphas[n]),
        )
        for n in range(horizon)
    ]
    emit(
        cli,
        "extension",
        rows,
        odometer=name,
        partial_value=exact(report.partial_value),
        direct_value=exact(report.direct_value),
        verdict=report.verdict.value,
        dominating=report.dominating,
        horizon=horizon,
    )


@click.command("ecs-extension")
@click.option("--window", "name", required=True, help="Window family name from the spec file.")
@horizon_option()
@pass_cli
def ecs_extension_command(cli: CliContext, name: str, horizon: int):
    """
    Extend the uniform measure of an equal-column-sum window subdiagram.
    """
    document = cli.document
    windows = document.window(name)
    report = ecs_subdiagram_extension(document.diagram, windows, horizon)
    rows = []
    for n in range(horizon):
        interval = windows.interval(n)
        rows.append(
            EcsRow(
                level=n,
                window=f"[{interval.start}, {interval.stop - 1}]",
                column_sum=exact(report.column_sums[n]),
                alpha=exact(report.alphas[n]),
                component=exact_or_none(
                    report.component_products[n] if report.component_products else None
                ),
            )
        )
    emit(
        cli,
        "ecs-extension",
        rows,
        window=name,
        partial_value=exact(report.partial_value),
        direct_value=exact(report.direct_value),
        normalized_value=exact(report.normalized_value),
        verdict=report.verdict.value,
        horizon=horizon,
    )


@click.command("dominating")
@horizon_option("--levels")
@click.option("--odometer", "name", help="Also test this odometer.")
@pass_cli
def dominating_command(cli: CliContext, horizon: int, name: str | None):
    """
    Offsets carrying the maximal band coefficient on each level.
    """
    document = cli.document
    rows = [
        DominatingRow(
            level=n,
            offsets=", ".join(str(k) for k in sorted(dominating_offsets(document.diagram, n))),
        )
        for n in range(horizon)
    ]
    summary: dict[str, object] = {"levels": horizon}
    if name is not None:
        summary["odometer"] = name
        summary["dominating"] = is_dominating(document.diagram, document.odometer(name), horizon)
    emit(cli, "dominating", rows, **summary)


@click.command("tail-parallel")
@click.argument("first")
@click.argument("second")
@pass_cli
def tail_parallel_command(cli: CliContext, first: str, second: str):
    """
    Decide whether two odometers are eventually a constant shift apart.
    """
    document = cli.document
    result = tail_parallel(document.odometer(first), document.odometer(second))
    emit(
        cli,
        "tail-parallel",
        [],
        first=first,
        second=second,
        relation=result.relation.value,
        shift=result.shift,
        witnesses=list(result.witnesses),
    )


def _load_family(
    cli: CliContext, vectors: Path | None, top: str | None, horizon: int
) -> list[MeasureVector]:
    if vectors is not None and top is not None:
        raise click.UsageError("give at most one of --vectors and --top")
    diagram = cli.document.diagram
    if vectors is not None:
        return parse_vectors(vectors.read_text(encoding="utf-8"))
    if top is not None:
        parsed = parse_vectors(top)
        if len(parsed) != 1:
            raise click.BadParameter("expected exactly one vector", param_hint="--top")
        return pull_back_family(diagram, parsed[0], horizon)
    return list(uniform_family(diagram, horizon))


vectors_option = click.option(
    "--vectors",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Vectors file, one level per line.",
)
top_option = click.option("--top", help="Top-level vector to pull back, e.g. 'finite 0: 1'.")


@click.command("tail-invariant")
@vectors_option
@top_option
@horizon_option()
@pass_cli
def tail_invariant_command(
    cli: CliContext, vectors: Path | None, top: str | None, horizon: int
):
    """
    Check F_nᵀ p(n + 1) = p(n) on a family of level vectors.

    Without --vectors or --top the uniform family 1 / H(n) is checked.
    Exits 2 when the check fails.
    """
    family = _load_family(cli, vectors, top, horizon)
    check = verify_tail_invariant(cli.document.diagram, family, horizon)
    rows = [
        VectorCheckRow(
            level=n,
            vector=str(family[n]),
            holds=check.failing_level is None or n < check.failing_level,
        )
        for n in range(check.checked)
    ]
    emit(
        cli,
        "tail-invariant",
        rows,
        passed=check.passed,
        checked=check.checked,
        failing_level=check.failing_level,
        expected=str(check.expected) if check.expected is not None else None,
        actual=str(check.actual) if check.actual is not None else None,
    )
    return 0 if check.passed else 2


@click.command("fourier-check")
@vectors_option
@top_option
@horizon_option()
@pass_cli
def fourier_check_command(
    cli: CliContext, vectors: Path | None, top: str | None, horizon: int
):
    """
    Compare Laurent products with convolution on finite level vectors.

    Exits 2 when some level fails.
    """
    diagram = cli.document.diagram
    family = _load_family(cli, vectors, top, horizon)
    if len(family) <= horizon:
        raise InvalidArgument(
            f"{len(family)} vectors cannot cover {horizon} levels",
            details={"vectors": len(family), "horizon": horizon},
        )
    rows = []
    for n in range(horizon):
        p_prev, p_next = family[n], family[n + 1]
        if not isinstance(p_prev, FiniteVec) or not isinstance(p_next, FiniteVec):
            raise InvalidArgument(f"fourier check needs finite vectors, level {n} is constant")
        by_symbol = fourier_check(diagram, p_next, p_prev, n)
        by_convolution = pull_back(diagram.band_at(n), p_next) == p_prev
        if by_symbol != by_convolution:
            raise IdentityViolation(
                f"Laurent and convolution checks disagree on level {n}",
                details={"level": n},
            )
        rows.append(VectorCheckRow(level=n, vector=str(p_prev), holds=by_symbol))
    passed = all(row.holds for row in rows)
    emit(cli, "fourier-check", rows, passed=passed, levels=horizon)
    return 0 if passed else 2


@click.command("markov")
@click.option("--kernel", "name", required=True, help="Kernel name from the spec file.")
@click.option("--depth", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--vertex", type=int, default=0, show_default=True)
@pass_cli
def markov_command(cli: CliContext, name: str, depth: int, vertex: int):
    """
    Test a horizontally invariant Markov measure for tail invariance.

    A failing check is a result, not an error, and exits 0.
    """
    document = cli.document
    check = markov_tail_invariance_check(document.diagram, document.kernel(name), depth, vertex)
    rows = [
        MarkovRow(depth=d, paths=count, passed=check.passed or d < check.depth)
        for d, count in enumerate(check.paths_checked, start=1)
    ]
    summary: dict[str, object] = {"kernel": name, "passed": check.passed, "depth": check.depth}
    if check.witness is not None and check.values is not None:
        summary["witness"] = [str(path) for path in check.witness]
        summary["values"] = [exact(value) for value in check.values]
    emit(cli, "markov", rows, **summary)
