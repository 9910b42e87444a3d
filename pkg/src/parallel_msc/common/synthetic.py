"""Deterministic synthetic scalar fields for tests and demonstrations."""
from __future__ import annotations

import numpy
from scipy import ndimage

from parallel_msc.grid import GridDims, ScalarField

from .types import FieldKind

__all__ = ('BUMP_CENTRES', 'BUMP_HEIGHTS', 'generate_field', 'synthetic_field')

BUMP_CENTRES = ((0.3, 0.4, 0.45), (0.7, 0.55, 0.55))
BUMP_HEIGHTS = (1.0, 0.8)
SMOOTHING_SIGMA = 2.0


def _coordinates(dims: GridDims) -> tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]:
    z, y, x = numpy.meshgrid(
        numpy.arange(dims.nz, dtype=numpy.float64),
        numpy.arange(dims.ny, dtype=numpy.float64),
        numpy.arange(dims.nx, dtype=numpy.float64),
        indexing='ij',
    )
    return x, y, z


def generate_field(kind: FieldKind | str, dims: GridDims, seed: int = 0) -> numpy.ndarray:
    """Return the ``float64`` samples of a synthetic field as a volume indexed ``[z, y, x]``.

    * ``ramp``: the x coordinate, so that every vertex but the origin descends along x or by index.
    * ``two-bumps``: two Gaussian peaks of different height, a tenth of the grid wide, at fixed relative positions.
    * ``random-smooth``: seeded Gaussian noise smoothed by a Gaussian filter.
    * ``white-noise``: seeded uniform noise.

    :param kind: the kind of field.
    :param dims: the grid.
    :param seed: seed of the random generator, ignored by the deterministic kinds.
    """
    kind = FieldKind(kind)
    shape = (dims.nz, dims.ny, dims.nx)

    if kind is FieldKind.RAMP:
        return _coordinates(dims)[0]

    if kind is FieldKind.TWO_BUMPS:
        x, y, z = _coordinates(dims)
        extents = numpy.array(dims.vertex_shape, dtype=numpy.float64)
        widths = extents / 10
        values = numpy.zeros(shape)
        for centre, height in zip(BUMP_CENTRES, BUMP_HEIGHTS):
            cx, cy, cz = numpy.array(centre) * extents
            distance = ((x - cx) / widths[0]) ** 2 + ((y - cy) / widths[1]) ** 2 + ((z - cz) / widths[2]) ** 2
            values += height * numpy.exp(-distance / 2)
        return values

    generator = numpy.random.default_rng(seed)

    if kind is FieldKind.RANDOM_SMOOTH:
        return ndimage.gaussian_filter(generator.standard_normal(shape), sigma=SMOOTHING_SIGMA, mode='nearest')

    return generator.random(shape)


def synthetic_field(kind: FieldKind | str, dims: GridDims, seed: int = 0) -> ScalarField:
    """Return a synthetic field as a :class:`~parallel_msc.grid.ScalarField`."""
    return ScalarField(dims, generate_field(kind, dims, seed))
