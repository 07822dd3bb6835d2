import click

from hsbratteli.cli.classc import classc_command
from hsbratteli.cli.diagrams import (
    bounded_size_command,
    heights_command,
    pathcount_command,
    show_command,
    telescope_command,
)
from hsbratteli.cli.measures import (
    dominating_command,
    ecs_extension_command,
    extension_command,
    fourier_check_command,
    markov_command,
    tail_invariant_command,
    tail_parallel_command,
)
from hsbratteli.cli.selfcheck import selfcheck_command
from hsbratteli.cli.vershik import vershik_group

# All sub-commands of the hsbratteli group
commands: list[click.Command] = [
    heights_command,
    pathcount_command,
    telescope_command,
    bounded_size_command,
    show_command,
    extension_command,
    ecs_extension_command,
    dominating_command,
    tail_parallel_command,
    tail_invariant_command,
    fourier_check_command,
    markov_command,
    classc_command,
    vershik_group,
    selfcheck_command,
]


def register(group: click.Group) -> None:
    for command in commands:
        group.add_command(command)
