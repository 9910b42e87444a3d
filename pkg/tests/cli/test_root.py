"""Tests for CLI commands."""
from __future__ import annotations

import subprocess

import click
import pytest
from parallel_msc.cli import cmd_root, run
from parallel_msc.cli.root import get_exit_code
from parallel_msc.common.exceptions import (
    CountOverflowError,
    CriticalPointNotFoundError,
    GradientCycleError,
    MorseSmaleError,
    ParseError,
    ValidationError,
    VolumeError,
)
from parallel_msc.common.types import ExitCode


def recurse_commands(command: click.Command, parents: list[str] | None = None):
    """Recursively return all subcommands that are part of ``command``.

    :param command: The click command to start with.
    :param parents: A list of strings that represent the parent commands leading up to the current command.
    :returns: A list of strings denoting the full path to the current command.
    """
    if isinstance(command, click.Group):
        for command_name in command.commands:
            subcommand = command.get_command(None, command_name)
            if parents is not None:
                subparents = [*parents, command.name]
            else:
                subparents = [command.name]
            yield from recurse_commands(subcommand, subparents)

    if parents is not None:
        yield [*parents, command.name]
    else:
        yield [command.name]


@pytest.mark.parametrize('command', recurse_commands(cmd_root))
@pytest.mark.parametrize('help_option', ('--help', '-h'))
@pytest.mark.minimal_install
def test_commands_help_option(command, help_option):
    """Test the help options for all subcommands of the CLI.

    The usage of ``subprocess.run`` is on purpose because using :meth:`click.Context.invoke`, which is used by the
    ``run_cli_command`` fixture that should usually be used in testing CLI commands, does not behave exactly the same
    compared to a direct invocation on the command line. The invocation through ``invoke`` does not go through all the
    parent commands and so might not get all the necessary initializations.
    """
    result = subprocess.run([*command, help_option], check=False, capture_output=True, text=True)
    assert result.returncode == 0, result.stderr
    assert 'Usage:' in result.stdout


@pytest.mark.parametrize(
    ('exception', 'exit_code'),
    (
        (VolumeError('message'), ExitCode.IO),
        (ParseError('message', 3), ExitCode.IO),
        (ValidationError('message'), ExitCode.VALIDATION),
        (GradientCycleError('message'), ExitCode.VALIDATION),
        (CountOverflowError('message'), ExitCode.OVERFLOW),
        (CriticalPointNotFoundError('message'), ExitCode.USAGE),
        (MorseSmaleError('message'), ExitCode.VALIDATION),
    ),
)
def test_get_exit_code(exception, exit_code):
    assert get_exit_code(exception) == exit_code


def test_unknown_command(run_cli_command):
    run_cli_command(cmd_root, ['plot'], raises=True, exit_code=ExitCode.USAGE)


def test_run_entry_point(tmp_path):
    """The programmatic entry point returns the exit code instead of exiting."""
    output = tmp_path / 'complex.json'

    assert run(['run', '--generate', 'ramp', '--dims', '3', '3', '3', '--out', str(output)]) == ExitCode.OK
    assert output.is_file()
    assert run(['run', '--dims', '3', '3', '3', '--out', str(output)]) == ExitCode.USAGE
    assert run(['run', '--input', str(tmp_path / 'missing.raw'), '-d', '3', '3', '3', '-o', str(output)]) == ExitCode.IO
    assert run(['run', '--generate', 'ramp', '--dims', '3', '3']) == ExitCode.USAGE
