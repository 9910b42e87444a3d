"""Module with utilities for the CLI."""
from __future__ import annotations

import pathlib
import typing as t

import click
from tabulate import tabulate

from parallel_msc.common.exceptions import VolumeError

if t.TYPE_CHECKING:
    from parallel_msc.workflows import StageTimings


def echo_success(message: str) -> None:
    click.echo(click.style('Success: ', fg='green', bold=True) + message)


def echo_warning(message: str) -> None:
    click.echo(click.style('Warning: ', fg='yellow', bold=True) + message, err=True)


def echo_critical(message: str) -> None:
    """Write an error message to stderr, the caller is responsible for exiting with the right code."""
    click.echo(click.style('Critical: ', fg='red', bold=True) + message, err=True)


def echo_timings(timings: StageTimings) -> None:
    """Print the wall-clock seconds of every pipeline stage as a table on stderr."""
    rows = [*timings.rows(), ('total', timings.total)]
    click.echo(tabulate(rows, headers=['Stage', 'Time (s)'], floatfmt='.4f'), err=True)


def write_outputs(outputs: t.Sequence[tuple[str | pathlib.Path, bytes]]) -> list[pathlib.Path]:
    """Write several files so that either all of them are written or none of the targets is touched.

    Every file is first written to a hidden sibling, which is moved into place once all of them were written.

    :raises VolumeError: if a file cannot be written.
    """
    staged: list[tuple[pathlib.Path, pathlib.Path]] = []

    try:
        for target, data in outputs:
            path = pathlib.Path(target)
            if path.is_dir():
                raise VolumeError(f'`{path}` could not be written: it is a directory.')
            partial = path.with_name(f'.{path.name}.partial')
            staged.append((partial, path))
            try:
                partial.write_bytes(data)
            except OSError as exception:
                raise VolumeError(f'`{path}` could not be written: {exception}') from exception

        for partial, path in staged:
            try:
                partial.replace(path)
            except OSError as exception:
                raise VolumeError(f'`{path}` could not be written: {exception}') from exception
    finally:
        for partial, _ in staged:
            partial.unlink(missing_ok=True)

    return [path for _, path in staged]
