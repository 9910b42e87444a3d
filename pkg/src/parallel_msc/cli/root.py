"""Command line interface ``pmsc``."""
from __future__ import annotations

import click

from parallel_msc.common.exceptions import (
    CountOverflowError,
    CriticalPointNotFoundError,
    GradientCycleError,
    InvalidCellError,
    InvalidGridError,
    MorseSmaleError,
    ParseError,
    ValidationError,
    VolumeError,
)
from parallel_msc.common.types import ExitCode

from . import options, utils

EXIT_CODES: tuple[tuple[type[Exception], ExitCode], ...] = (
    (VolumeError, ExitCode.IO),
    (ParseError, ExitCode.IO),
    (ValidationError, ExitCode.VALIDATION),
    (GradientCycleError, ExitCode.VALIDATION),
    (CountOverflowError, ExitCode.OVERFLOW),
    (InvalidGridError, ExitCode.USAGE),
    (InvalidCellError, ExitCode.USAGE),
    (CriticalPointNotFoundError, ExitCode.USAGE),
)


def get_exit_code(exception: Exception) -> ExitCode:
    """Return the exit code for an exception raised by a command."""
    for exception_class, exit_code in EXIT_CODES:
        if isinstance(exception, exception_class):
            return exit_code
    return ExitCode.VALIDATION


class MscCommandGroup(click.Group):
    """Command group that turns package exceptions into an error message and the matching exit code.

    Usage errors exit with :attr:`ExitCode.USAGE` instead of the default of ``click``.
    """

    def parse_args(self, ctx: click.Context, args: list[str]) -> list[str]:
        try:
            return super().parse_args(ctx, args)
        except click.UsageError as exception:
            exception.exit_code = ExitCode.USAGE
            raise

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except click.UsageError as exception:
            exception.exit_code = ExitCode.USAGE
            raise
        except MorseSmaleError as exception:
            utils.echo_critical(str(exception))
            ctx.exit(get_exit_code(exception))


@click.group('pmsc', cls=MscCommandGroup, context_settings={'help_option_names': ['-h', '--help']})
@options.VERBOSITY()
def cmd_root():
    """Compute Morse-Smale complexes of scalar fields sampled on regular 3D grids."""
