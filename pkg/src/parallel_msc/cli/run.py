"""Command to compute the Morse-Smale complex of a volume."""
import pathlib

import click

from parallel_msc.common.types import OutputFormat, ScalarDtype
from parallel_msc.common.volume import VolumeSpec, read_volume
from parallel_msc.grid import GridDims
from parallel_msc.primitives import num_threads
from parallel_msc.workflows import ComputeOptions, export_csv, run_pipeline, segmentation_volumes, serialize

from . import options, utils
from .root import cmd_root


@cmd_root.command('run')
@options.INPUT()
@options.GENERATE()
@options.DIMS()
@options.DTYPE()
@options.BIG_ENDIAN()
@options.OUTPUT()
@options.FORMAT()
@options.LABELS()
@options.CHECK()
@options.THREADS()
@options.SEED()
@options.PROTOCOL()
@options.COUNTING()
def cmd_run(  # noqa: PLR0913
    input_path,
    generate,
    dims,
    dtype,
    big_endian,
    output_path,
    output_format,
    labels,
    check,
    threads,
    seed,
    protocol,
    counting,
):
    """Compute the Morse-Smale complex of a raw volume or of a synthetic field.

    Exactly one of `--input` and `--generate` is required. The stage timings are printed to stderr.
    """
    from parallel_msc.common.synthetic import synthetic_field

    if (input_path is None) == (generate is None):
        raise click.UsageError('specify exactly one of `--input` and `--generate`.')

    if input_path is not None and seed != 0:
        utils.echo_warning('`--seed` only applies to synthetic fields and is ignored for `--input`.')

    grid = GridDims(*dims)

    if input_path is not None:
        field = read_volume(VolumeSpec(pathlib.Path(input_path), grid, dtype, big_endian))
    else:
        field = synthetic_field(generate, grid, seed)
        dtype = ScalarDtype.F64.value

    overrides = {'dtype': dtype}
    if check:
        overrides['validate'] = True
    if labels is not None:
        overrides['segmentation'] = True
    if counting is not None:
        overrides['counting'] = counting

    compute_options = ComputeOptions.from_protocol(protocol, **overrides)

    with num_threads(threads):
        result = run_pipeline(field, compute_options)

    complex_ = result.complex

    if OutputFormat(output_format) is OutputFormat.CSV:
        output = pathlib.Path(output_path)
        points, arcs = export_csv(complex_)
        outputs = [
            (output.with_name(f'{output.stem}.critical_points.csv'), points),
            (output.with_name(f'{output.stem}.arcs.csv'), arcs),
        ]
    else:
        outputs = [(pathlib.Path(output_path), serialize(complex_))]

    if labels is not None:
        outputs.extend(segmentation_volumes(complex_, labels))

    written = utils.write_outputs(outputs)

    utils.echo_timings(result.timings)
    utils.echo_success(
        f'computed {len(complex_.critical_points)} critical points {complex_.counts} and {len(complex_.arcs)} arcs, '
        f'wrote {", ".join(str(path) for path in written)}'
    )
