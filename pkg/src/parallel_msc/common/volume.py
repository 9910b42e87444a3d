"""Reading and writing raw volumes: headerless sample arrays laid out x fastest, then y, then z."""
from __future__ import annotations

import dataclasses
import logging
import pathlib

import numpy

from parallel_msc.grid import GridDims, ScalarField

from .exceptions import VolumeError
from .types import ScalarDtype

__all__ = ('VolumeSpec', 'read_volume', 'write_volume')

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class VolumeSpec:
    """Location and layout of a raw volume file."""

    path: pathlib.Path
    dims: GridDims
    dtype: ScalarDtype = ScalarDtype.F32
    big_endian: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'path', pathlib.Path(self.path))
        if not isinstance(self.dtype, ScalarDtype):
            try:
                object.__setattr__(self, 'dtype', ScalarDtype(self.dtype))
            except ValueError as exception:
                choices = ', '.join(member.value for member in ScalarDtype)
                raise ValueError(f'`{self.dtype}` is not a valid sample type: choose from {choices}.') from exception

    @property
    def numpy_dtype(self) -> numpy.dtype:
        return self.dtype.numpy_dtype(self.big_endian)

    @property
    def expected_size(self) -> int:
        """Return the size of the file in bytes."""
        return self.dims.num_vertices * self.dtype.itemsize


def read_volume(spec: VolumeSpec) -> ScalarField:
    """Read a raw volume into a scalar field, widening the samples to ``float64``.

    :raises VolumeError: if the file does not exist, cannot be read or its size does not match the dimensions.
    """
    path = spec.path

    if not path.is_file():
        raise VolumeError(f'`{path}` is not a valid input volume: file does not exist.')

    try:
        size = path.stat().st_size
    except OSError as exception:
        raise VolumeError(f'`{path}` could not be read: {exception}') from exception

    if size != spec.expected_size:
        raise VolumeError(
            f'`{path}` has {size} bytes but a {spec.dims.nx}x{spec.dims.ny}x{spec.dims.nz} volume of '
            f'`{spec.dtype.value}` samples needs {spec.expected_size} bytes.'
        )

    try:
        samples = numpy.fromfile(path, dtype=spec.numpy_dtype)
    except OSError as exception:
        raise VolumeError(f'`{path}` could not be read: {exception}') from exception

    LOGGER.info('read %d `%s` samples from `%s`', samples.size, spec.dtype.value, path)

    return ScalarField(spec.dims, samples.astype(numpy.float64))


def write_volume(spec: VolumeSpec, values: numpy.ndarray) -> None:
    """Write samples, laid out x fastest, to a raw volume, converting them to the sample type of ``spec``.

    :raises VolumeError: if the number of samples does not match the dimensions or the file cannot be written.
    """
    values = numpy.asarray(values).ravel()

    if values.size != spec.dims.num_vertices:
        raise VolumeError(f'{values.size} samples do not fill a volume of {spec.dims.num_vertices} vertices.')

    dtype = spec.numpy_dtype
    if dtype.kind == 'u':
        limits = numpy.iinfo(dtype)
        values = numpy.clip(numpy.rint(values), limits.min, limits.max)

    try:
        spec.path.write_bytes(values.astype(dtype).tobytes())
    except OSError as exception:
        raise VolumeError(f'`{spec.path}` could not be written: {exception}') from exception

    LOGGER.info('wrote %d `%s` samples to `%s`', values.size, spec.dtype.value, spec.path)
