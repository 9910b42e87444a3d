"""Cubical cell complex of a regular 3D vertex grid in doubled coordinates.

A cell with doubled coordinates ``(cx, cy, cz)`` has a dimension equal to the number of odd coordinates: vertices have
only even coordinates, cubes only odd ones. Cells are packed into a single linear identifier with ``cx`` running
fastest, so that the vertices and the cubes, visited in increasing identifier order, follow the x-fastest row-major
layout of raw volumes.
"""
from __future__ import annotations

import dataclasses
import functools
import typing as t

import numpy

from parallel_msc.common.exceptions import InvalidCellError, InvalidGridError

__all__ = ('AXES', 'CellId', 'GridDims')

CellId = int
AXES = (0, 1, 2)


@dataclasses.dataclass(frozen=True)
class GridDims:
    """Vertex counts of a regular grid along the three axes."""

    nx: int
    ny: int
    nz: int

    def __post_init__(self):
        for name in ('nx', 'ny', 'nz'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, numpy.integer)) or value < 2:
                raise InvalidGridError(f'`{name}={value!r}` is not a valid vertex count: need an integer >= 2.')
            object.__setattr__(self, name, int(value))

    @property
    def vertex_shape(self) -> tuple[int, int, int]:
        """Return the number of vertices along each axis."""
        return (self.nx, self.ny, self.nz)

    @property
    def cell_shape(self) -> tuple[int, int, int]:
        """Return the extents of the doubled-coordinate lattice."""
        return (2 * self.nx - 1, 2 * self.ny - 1, 2 * self.nz - 1)

    @property
    def cube_shape(self) -> tuple[int, int, int]:
        """Return the number of cubes along each axis."""
        return (self.nx - 1, self.ny - 1, self.nz - 1)

    @property
    def num_vertices(self) -> int:
        return self.nx * self.ny * self.nz

    @property
    def num_cubes(self) -> int:
        return (self.nx - 1) * (self.ny - 1) * (self.nz - 1)

    @property
    def num_cells(self) -> int:
        extent_x, extent_y, extent_z = self.cell_shape
        return extent_x * extent_y * extent_z

    @property
    def strides(self) -> tuple[int, int, int]:
        """Return the increment of the linear cell identifier for a unit step along each axis."""
        extent_x, extent_y, _ = self.cell_shape
        return (1, extent_x, extent_x * extent_y)

    def cell_id(self, cx: int, cy: int, cz: int) -> CellId:
        """Return the identifier of the cell with the given doubled coordinates.

        :raises InvalidCellError: if any coordinate lies outside the lattice.
        """
        for axis, (coordinate, extent) in enumerate(zip((cx, cy, cz), self.cell_shape)):
            if not 0 <= coordinate < extent:
                raise InvalidCellError(
                    f'`{(cx, cy, cz)}` is not a valid cell: coordinate {axis} is outside `[0, {extent})`.'
                )
        stride_x, stride_y, stride_z = self.strides
        return int(cx * stride_x + cy * stride_y + cz * stride_z)

    def coordinates(self, cell: CellId) -> tuple[int, int, int]:
        """Return the doubled coordinates of a cell.

        :raises InvalidCellError: if the identifier lies outside the lattice.
        """
        self._validate(cell)
        extent_x, extent_y, _ = self.cell_shape
        cell = int(cell)
        return (cell % extent_x, (cell // extent_x) % extent_y, cell // (extent_x * extent_y))

    def dimension(self, cell: CellId) -> int:
        """Return the dimension of a cell, which is the number of its odd doubled coordinates."""
        return sum(coordinate & 1 for coordinate in self.coordinates(cell))

    def facets(self, cell: CellId) -> list[CellId]:
        """Return the ``2 * dimension`` facets of a cell, ordered by axis and then by ``-1`` before ``+1``."""
        coordinates = self.coordinates(cell)
        cell = int(cell)
        result = []
        for axis in AXES:
            if coordinates[axis] & 1:
                result.append(cell - self.strides[axis])
                result.append(cell + self.strides[axis])
        return result

    def cofacets(self, cell: CellId) -> list[CellId]:
        """Return the cofacets of a cell that lie inside the grid, ordered like :meth:`facets`."""
        coordinates = self.coordinates(cell)
        cell = int(cell)
        result = []
        for axis in AXES:
            if coordinates[axis] & 1:
                continue
            if coordinates[axis] > 0:
                result.append(cell - self.strides[axis])
            if coordinates[axis] < self.cell_shape[axis] - 1:
                result.append(cell + self.strides[axis])
        return result

    def vertices(self, cell: CellId) -> list[int]:
        """Return the linear vertex indices of the corners of a cell in increasing order."""
        cx, cy, cz = self.coordinates(cell)
        corners = [
            (x, y, z)
            for z in {cz // 2, (cz + 1) // 2}
            for y in {cy // 2, (cy + 1) // 2}
            for x in {cx // 2, (cx + 1) // 2}
        ]
        return sorted(x + self.nx * (y + self.ny * z) for x, y, z in corners)

    def coordinates_array(self, cells: numpy.ndarray) -> tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]:
        """Return the doubled coordinates of an array of cell identifiers."""
        cells = numpy.asarray(cells, dtype=numpy.int64)
        extent_x, extent_y, _ = self.cell_shape
        return (cells % extent_x, (cells // extent_x) % extent_y, cells // (extent_x * extent_y))

    def ids_from_coordinates(self, cx: numpy.ndarray, cy: numpy.ndarray, cz: numpy.ndarray) -> numpy.ndarray:
        """Return the identifiers of cells given arrays of in-range doubled coordinates."""
        stride_x, stride_y, stride_z = self.strides
        return (
            numpy.asarray(cx, dtype=numpy.int64) * stride_x
            + numpy.asarray(cy, dtype=numpy.int64) * stride_y
            + numpy.asarray(cz, dtype=numpy.int64) * stride_z
        )

    def dimensions(self, cells: numpy.ndarray) -> numpy.ndarray:
        """Return the dimension of every cell of an array of identifiers."""
        cx, cy, cz = self.coordinates_array(cells)
        return ((cx & 1) + (cy & 1) + (cz & 1)).astype(numpy.int8)

    def neighbours(self, cells: numpy.ndarray, axis: int, sign: int) -> numpy.ndarray:
        """Return the cells one doubled-coordinate step along ``axis``, or ``-1`` where the step leaves the grid."""
        cells = numpy.asarray(cells, dtype=numpy.int64)
        coordinate = self.coordinates_array(cells)[axis] + sign
        inside = (coordinate >= 0) & (coordinate < self.cell_shape[axis])
        return numpy.where(inside, cells + sign * self.strides[axis], -1)

    @functools.cached_property
    def vertex_cells(self) -> numpy.ndarray:
        """Return the cell identifier of every vertex, indexed by linear vertex index."""
        z, y, x = numpy.meshgrid(
            numpy.arange(self.nz), numpy.arange(self.ny), numpy.arange(self.nx), indexing='ij', copy=False
        )
        return self.ids_from_coordinates(2 * x.ravel(), 2 * y.ravel(), 2 * z.ravel())

    @functools.cached_property
    def cube_cells(self) -> numpy.ndarray:
        """Return the cell identifier of every cube, indexed by linear cube index."""
        z, y, x = numpy.meshgrid(
            numpy.arange(self.nz - 1), numpy.arange(self.ny - 1), numpy.arange(self.nx - 1), indexing='ij', copy=False
        )
        return self.ids_from_coordinates(2 * x.ravel() + 1, 2 * y.ravel() + 1, 2 * z.ravel() + 1)

    def vertex_index(self, cells: numpy.ndarray) -> numpy.ndarray:
        """Return the linear vertex index of an array of vertex cells."""
        cx, cy, cz = self.coordinates_array(cells)
        return cx // 2 + self.nx * (cy // 2 + self.ny * (cz // 2))

    def cube_index(self, cells: numpy.ndarray) -> numpy.ndarray:
        """Return the linear cube index of an array of cube cells."""
        cx, cy, cz = self.coordinates_array(cells)
        return cx // 2 + (self.nx - 1) * (cy // 2 + (self.ny - 1) * (cz // 2))

    def cells_of_dimension(self, dimension: int) -> numpy.ndarray:
        """Return the sorted identifiers of all cells of the given dimension."""
        cells = numpy.arange(self.num_cells, dtype=numpy.int64)
        return cells[self.dimensions(cells) == dimension]

    def count_cells(self) -> tuple[int, int, int, int]:
        """Return the number of cells of each dimension."""
        nx, ny, nz = self.vertex_shape
        mx, my, mz = self.cube_shape
        return (
            nx * ny * nz,
            mx * ny * nz + nx * my * nz + nx * ny * mz,
            nx * my * mz + mx * ny * mz + mx * my * nz,
            mx * my * mz,
        )

    def _validate(self, cell: t.Any) -> None:
        if isinstance(cell, bool) or not isinstance(cell, (int, numpy.integer)) or not 0 <= cell < self.num_cells:
            raise InvalidCellError(f'`{cell!r}` is not a valid cell identifier for a grid of `{self.vertex_shape}`.')
