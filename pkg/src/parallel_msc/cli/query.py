"""Command to inspect a serialized complex."""
import pathlib

import click
from tabulate import tabulate

from parallel_msc.common.exceptions import VolumeError
from parallel_msc.workflows import deserialize

from . import options
from .root import cmd_root

INDEX_NAMES = ('minimum', '1-saddle', '2-saddle', 'maximum')


@cmd_root.command('query')
@click.argument('complex_path', metavar='COMPLEX', type=click.Path(dir_okay=False, path_type=str))
@options.POINT()
def cmd_query(complex_path, point):
    """Print the critical points of a complex written in the JSON format, or the arcs incident to one of them."""
    path = pathlib.Path(complex_path)

    try:
        data = path.read_bytes()
    except OSError as exception:
        raise VolumeError(f'`{path}` could not be read: {exception}') from exception

    complex_ = deserialize(data)

    if point is None:
        rows = [
            (entry.id, INDEX_NAMES[entry.index], entry.cell, entry.position, entry.value)
            for entry in complex_.critical_points
        ]
        click.echo(tabulate(rows, headers=['Id', 'Type', 'Cell', 'Position', 'Value']))
        return

    rows = []
    for arc in complex_.query_arcs(point):
        source, target = complex_.point(arc.src), complex_.point(arc.dst)
        rows.append(
            (arc.src, INDEX_NAMES[source.index], arc.dst, INDEX_NAMES[target.index], arc.multiplicity)
        )

    click.echo(tabulate(rows, headers=['Source', 'Type', 'Destination', 'Type', 'Multiplicity']))
