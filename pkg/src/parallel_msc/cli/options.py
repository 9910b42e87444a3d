"""Module with pre-defined options and defaults for CLI command parameters."""
import functools
import logging

import click

from parallel_msc.common.types import CountingMethod, FieldKind, OutputFormat, ScalarDtype
from parallel_msc.workflows import PipelineProtocolRegistry

LOG_LEVELS = ('debug', 'info', 'warning', 'error', 'critical')


class CliHandler(logging.Handler):
    """Handler that writes log records of the package to stderr of the running command."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            click.echo(self.format(record), err=True)
        except Exception:
            self.handleError(record)


def set_log_level(ctx, param, value):
    """Attach a :class:`CliHandler` with the requested level to the ``parallel_msc`` logger."""
    logger = logging.getLogger('parallel_msc')

    for handler in [handler for handler in logger.handlers if isinstance(handler, CliHandler)]:
        logger.removeHandler(handler)

    handler = CliHandler()
    handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
    logger.addHandler(handler)
    logger.setLevel(value.upper())

    return value


def get_protocol_names():
    """Return the names of the pipeline protocols."""
    return PipelineProtocolRegistry().get_protocol_names()


def get_choices(enumeration):
    """Return the values of an enumeration."""
    return [entry.value for entry in enumeration]


VERBOSITY = functools.partial(
    click.option,
    '-v',
    '--verbosity',
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default='warning',
    show_default=True,
    is_eager=True,
    expose_value=False,
    callback=set_log_level,
    help='Set the verbosity of the log messages written to stderr.',
)

INPUT = functools.partial(
    click.option,
    '-i',
    '--input',
    'input_path',
    type=click.Path(dir_okay=False, path_type=str),
    help='Raw volume file with the scalar samples, x fastest, without header.',
)

GENERATE = functools.partial(
    click.option,
    '-g',
    '--generate',
    type=click.Choice(get_choices(FieldKind)),
    help='Run on a synthetic field of this kind instead of an input file.',
)

KIND = functools.partial(
    click.option,
    '-k',
    '--kind',
    type=click.Choice(get_choices(FieldKind)),
    required=True,
    help='Select the kind of synthetic field.',
)

DIMS = functools.partial(
    click.option,
    '-d',
    '--dims',
    type=click.INT,
    nargs=3,
    required=True,
    metavar='NX NY NZ',
    help='Number of vertices of the grid along x, y and z.',
)

DTYPE = functools.partial(
    click.option,
    '--dtype',
    type=click.Choice(get_choices(ScalarDtype)),
    default=ScalarDtype.F32.value,
    show_default=True,
    help='Sample type of the raw volume.',
)

BIG_ENDIAN = functools.partial(
    click.option, '--big-endian', is_flag=True, default=False, help='Samples of the raw volume are big-endian.'
)

OUTPUT = functools.partial(
    click.option,
    '-o',
    '--out',
    'output_path',
    type=click.Path(dir_okay=False, path_type=str),
    required=True,
    help='Output file.',
)

FORMAT = functools.partial(
    click.option,
    '-f',
    '--format',
    'output_format',
    type=click.Choice(get_choices(OutputFormat)),
    default=OutputFormat.JSON.value,
    show_default=True,
    help='Output format of the complex. The CSV format writes `<stem>.critical_points.csv` and `<stem>.arcs.csv` next '
    'to the output path.',
)

LABELS = functools.partial(
    click.option,
    '-l',
    '--labels',
    type=click.Path(dir_okay=False, path_type=str),
    help='Write the extrema segmentation to `<LABELS>.minima.raw` and `<LABELS>.maxima.raw`.',
)

CHECK = functools.partial(
    click.option,
    '--check',
    is_flag=True,
    default=False,
    help='Validate the gradient field, the Morse-Euler relation and the mod-2 boundary of the complex. Nothing is '
    'written if a check fails.',
)

THREADS = functools.partial(
    click.option,
    '-t',
    '--threads',
    type=click.IntRange(min=1),
    help='Maximum number of worker threads, defaults to the number of available cores.',
)

SEED = functools.partial(
    click.option,
    '-s',
    '--seed',
    type=click.INT,
    default=0,
    show_default=True,
    help='Seed of the random synthetic fields.',
)

PROTOCOL = functools.partial(
    click.option,
    '-p',
    '--protocol',
    type=click.Choice(get_protocol_names()),
    default=PipelineProtocolRegistry().get_default_protocol_name(),
    show_default=True,
    help='Select the protocol with which the pipeline options are set.',
)

COUNTING = functools.partial(
    click.option,
    '--counting',
    type=click.Choice(get_choices(CountingMethod)),
    help='Override the method of the protocol used to count the saddle connections.',
)

POINT = functools.partial(
    click.option,
    '-P',
    '--point',
    type=click.IntRange(min=0),
    help='Show the arcs incident to the critical point with this id instead of the critical points.',
)
