"""
Shared helpers for the command modules: the click context object and
report emission.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import click

from hsbratteli.cli.parser import SpecDocument, parse_spec
from hsbratteli.cli.render import render
from hsbratteli.core.settings import get_settings
from hsbratteli.schemas.response import Report

logger = logging.getLogger(__name__)


@dataclass
class CliContext:
    """Global options, with the spec document loaded on first use."""

    spec_path: Path | None
    format: str = "table"
    decimals: int = 0
    seed: int | None = None
    _document: SpecDocument | None = field(default=None, repr=False)

    @property
    def document(self) -> SpecDocument:
        if self._document is None:
            if self.spec_path is None:
                raise click.UsageError("this command needs --spec FILE")
            logger.info(f"loading spec {self.spec_path}")
            self._document = parse_spec(self.spec_path.read_text(encoding="utf-8"))
        return self._document


pass_cli = click.make_pass_decorator(CliContext)


def emit(cli: CliContext, command: str, rows: list[Any], **summary: Any) -> None:
    report = Report[Any](command=command, rows=rows, summary=summary)
    out, err = render(report, cli.format, cli.decimals)
    click.echo(out, nl=False)
    if err:
        click.echo(err, nl=False, err=True)


def horizon_option(name: str = "--horizon"):
    return click.option(
        name,
        "horizon",
        type=click.IntRange(min=1),
        default=lambda: get_settings().DEFAULT_HORIZON,
        help="Number of levels to compute [default: HSB_DEFAULT_HORIZON].",
    )
