"""Module for the command line interface."""
from __future__ import annotations

import sys
import typing as t

import click

from parallel_msc.common.types import ExitCode

from .generate import cmd_generate  # noqa: F401
from .query import cmd_query  # noqa: F401
from .root import cmd_root
from .run import cmd_run  # noqa: F401


def run(argv: t.Sequence[str] | None = None) -> int:
    """Invoke ``pmsc`` with the given arguments and return the exit code instead of exiting."""
    try:
        result = cmd_root.main(args=list(argv) if argv is not None else None, prog_name='pmsc', standalone_mode=False)
    except click.ClickException as exception:
        exception.show()
        return exception.exit_code
    except click.Abort:
        click.echo('Aborted!', err=True)
        return ExitCode.USAGE

    return int(result) if isinstance(result, int) else ExitCode.OK


def main() -> None:
    sys.exit(run())
