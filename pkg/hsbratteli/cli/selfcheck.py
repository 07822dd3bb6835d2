import click

from hsbratteli.analysis.selfcheck import CHECKS, run_checks
from hsbratteli.cli.utils import CliContext, emit, pass_cli
from hsbratteli.schemas import SelfCheckRow


@click.command("selfcheck")
@click.option("--trials", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--check", "names", type=click.Choice(list(CHECKS)), multiple=True,
              help="Run only these checks (repeatable).")
@pass_cli
def selfcheck_command(cli: CliContext, trials: int, names: tuple[str, ...]):
    """
    Randomised property checks on small diagrams, seeded by --seed.

    Needs no spec file. Exits 2 when any check finds a counterexample.
    """
    results = run_checks(trials, cli.seed, list(names) or None)
    rows = [SelfCheckRow(check=r.name, trials=r.trials, passed=r.passed) for r in results]
    failures = {r.name: r.counterexample for r in results if not r.passed}
    emit(cli, "selfcheck", rows, seed=cli.seed, passed=not failures, failures=failures or None)
    return 0 if not failures else 2
