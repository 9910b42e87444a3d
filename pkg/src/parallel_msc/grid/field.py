"""Scalar fields sampled on grid vertices and the total order they induce on cells."""
from __future__ import annotations

import dataclasses
import functools
import hashlib

import numpy

from parallel_msc.common.exceptions import InvalidGridError

from .cells import CellId, GridDims

__all__ = ('ScalarField', 'compare_cells')


@dataclasses.dataclass(frozen=True, eq=False)
class ScalarField:
    """Scalar samples on the vertices of a grid, stored as ``float64`` in x-fastest order."""

    dims: GridDims
    values: numpy.ndarray

    def __post_init__(self):
        values = numpy.array(self.values, dtype=numpy.float64).ravel()

        if values.size != self.dims.num_vertices:
            raise InvalidGridError(
                f'`{values.size}` values do not match a grid of `{self.dims.vertex_shape}` vertices: '
                f'expected {self.dims.num_vertices}.'
            )

        if not numpy.all(numpy.isfinite(values)):
            raise InvalidGridError('scalar values must be finite: found NaN or infinite samples.')

        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_volume(cls, volume: numpy.ndarray) -> ScalarField:
        """Construct a field from a volume array indexed as ``volume[z, y, x]``."""
        volume = numpy.asarray(volume)
        if volume.ndim != 3:
            raise InvalidGridError(f'volume of shape `{volume.shape}` is not three dimensional.')
        nz, ny, nx = volume.shape
        return cls(GridDims(nx, ny, nz), volume)

    @property
    def volume(self) -> numpy.ndarray:
        """Return a read-only view of the samples indexed as ``volume[z, y, x]``."""
        return self.values.reshape(self.dims.nz, self.dims.ny, self.dims.nx)

    @functools.cached_property
    def vertex_rank(self) -> numpy.ndarray:
        """Return the position of every vertex in the order by value, ties broken by linear vertex index."""
        order = numpy.lexsort((numpy.arange(self.values.size), self.values))
        rank = numpy.empty(self.values.size, dtype=numpy.int64)
        rank[order] = numpy.arange(self.values.size, dtype=numpy.int64)
        rank.setflags(write=False)
        return rank

    @functools.cached_property
    def input_hash(self) -> str:
        """Return a digest of the samples, used as provenance of derived complexes."""
        return 'sha256:' + hashlib.sha256(self.values.astype('<f8').tobytes()).hexdigest()

    def order_key(self, cell: CellId) -> tuple[int, ...]:
        """Return the ranks of the corners of a cell, sorted descending."""
        return tuple(sorted((int(self.vertex_rank[vertex]) for vertex in self.dims.vertices(cell)), reverse=True))

    def top_vertex(self, cell: CellId) -> int:
        """Return the linear index of the highest corner of a cell."""
        return max(self.dims.vertices(cell), key=lambda vertex: self.vertex_rank[vertex])

    def cell_value(self, cell: CellId) -> float:
        """Return the value of the highest corner of a cell."""
        return float(self.values[self.top_vertex(cell)])


def compare_cells(first: CellId, second: CellId, field: ScalarField) -> int:
    """Compare two cells in the total order used to construct the discrete gradient.

    Keys are the corner ranks sorted descending, compared lexicographically, so that a cell comes after each of its
    facets and two distinct vertices never compare equal.

    :return: ``-1`` if ``first`` precedes ``second``, ``1`` if it follows and ``0`` only if both are the same cell.
    """
    key_first = field.order_key(first)
    key_second = field.order_key(second)

    if key_first == key_second:
        return 0

    return -1 if key_first < key_second else 1
