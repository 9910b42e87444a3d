"""Command to write synthetic scalar fields."""
import pathlib

from parallel_msc.common.volume import VolumeSpec, write_volume
from parallel_msc.grid import GridDims

from . import options, utils
from .root import cmd_root


@cmd_root.command('generate')
@options.KIND()
@options.DIMS()
@options.DTYPE()
@options.BIG_ENDIAN()
@options.SEED()
@options.OUTPUT()
def cmd_generate(kind, dims, dtype, big_endian, seed, output_path):
    """Write a synthetic scalar field as a raw volume.

    The same kind, dimensions and seed always produce the same file.
    """
    from parallel_msc.common.synthetic import generate_field

    grid = GridDims(*dims)
    spec = VolumeSpec(pathlib.Path(output_path), grid, dtype, big_endian)
    write_volume(spec, generate_field(kind, grid, seed))

    utils.echo_success(f'wrote a {kind} field of {grid.nx}x{grid.ny}x{grid.nz} `{dtype}` samples to {spec.path}')
