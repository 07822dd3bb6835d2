import logging
import sys
from pathlib import Path

import click

from hsbratteli.cli import register
from hsbratteli.cli.render import FORMATS
from hsbratteli.cli.utils import CliContext
from hsbratteli.core.errors import BratteliError
from hsbratteli.core.settings import get_settings
from hsbratteli.schemas.response import ErrorReport

settings = get_settings()
logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


class BratteliGroup(click.Group):
    """
    Click group mapping failures to exit codes.

    Usage errors exit 1; library errors print an ``ErrorReport`` as JSON on
    stderr and exit with the error's code; an integer returned by a command
    becomes the exit status.
    """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            result = super().main(
                args, prog_name, complete_var, standalone_mode=False, **extra
            )
        except click.UsageError as exc:
            exc.show()
            sys.exit(1)
        except click.ClickException as exc:
            exc.show()
            sys.exit(exc.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(1)
        except BratteliError as exc:
            report = ErrorReport(
                error=exc.__class__.__name__,
                message=exc.message,
                exit_code=exc.exit_code,
                details=exc.details,
            )
            logger.warning(f"{report.error}: {report.message}")
            click.echo(report.model_dump_json(), err=True)
            sys.exit(exc.exit_code)
        sys.exit(result if isinstance(result, int) else 0)


@click.group(cls=BratteliGroup)
@click.version_option(settings.VERSION, prog_name=settings.APP_NAME)
@click.option(
    "--spec",
    "spec_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Spec file describing the diagram and its named objects.",
)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="table", show_default=True)
@click.option(
    "--decimals",
    type=click.IntRange(min=0),
    default=lambda: get_settings().DEFAULT_DECIMALS,
    help="Add decimal annotation columns with this many places.",
)
@click.option("--seed", type=int, help="Seed for randomised checks.")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=lambda: get_settings().LOG_LEVEL,
)
@click.pass_context
def app(
    ctx: click.Context,
    spec_path: Path | None,
    fmt: str,
    decimals: int,
    seed: int | None,
    log_level: str,
):
    """
    Exact computations on horizontally stationary generalized Bratteli
    diagrams.
    """
    configure_logging(log_level)
    logger.info(f"{settings.APP_NAME} {settings.VERSION}: {ctx.invoked_subcommand}")
    ctx.obj = CliContext(spec_path=spec_path, format=fmt, decimals=decimals, seed=seed)


register(app)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
