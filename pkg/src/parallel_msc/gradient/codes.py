"""One-byte encoding of the discrete gradient and the field that stores it.

A code either marks a cell as critical or stores the direction of its partner: the axis along which the partner lies
and the sign of the doubled-coordinate step leading to it. The upper nibble tells whether the partner is a facet or a
cofacet, the lower three bits hold ``2 * axis + (sign > 0)``.
"""
from __future__ import annotations

import dataclasses
import typing as t

import numpy

from parallel_msc.common.exceptions import InvalidCellError
from parallel_msc.grid import AXES, CellId, GridDims

__all__ = (
    'CRITICAL',
    'DIRECTION_MASK',
    'KIND_MASK',
    'PAIRED_WITH_COFACET',
    'PAIRED_WITH_FACET',
    'UNASSIGNED',
    'GradientField',
    'decode_direction',
    'encode_direction',
)

UNASSIGNED = 0x00
PAIRED_WITH_FACET = 0x10
PAIRED_WITH_COFACET = 0x20
CRITICAL = 0x40
KIND_MASK = 0x70
DIRECTION_MASK = 0x07


def encode_direction(axis: int, sign: int) -> int:
    """Return the three direction bits of a unit step along ``axis`` with the given sign."""
    if axis not in AXES or sign not in (-1, 1):
        raise ValueError(f'`({axis}, {sign})` is not a valid direction: need an axis in 0..2 and a sign of -1 or 1.')
    return 2 * axis + (sign > 0)


def decode_direction(code: int) -> tuple[int, int]:
    """Return the ``(axis, sign)`` stored in the direction bits of a code."""
    bits = int(code) & DIRECTION_MASK
    return bits >> 1, 1 if bits & 1 else -1


@dataclasses.dataclass(frozen=True, eq=False)
class GradientField:
    """Discrete gradient over all cells of a grid, one code per cell indexed by cell identifier."""

    dims: GridDims
    codes: numpy.ndarray

    def __post_init__(self):
        codes = numpy.asarray(self.codes, dtype=numpy.uint8).ravel()

        if codes.size != self.dims.num_cells:
            raise ValueError(f'`{codes.size}` gradient codes do not match the {self.dims.num_cells} cells of the grid.')

        codes = codes.copy() if codes.flags.writeable else codes
        codes.setflags(write=False)
        object.__setattr__(self, 'codes', codes)

    def __eq__(self, other: t.Any) -> bool:
        if not isinstance(other, GradientField):
            return NotImplemented
        return self.dims == other.dims and numpy.array_equal(self.codes, other.codes)

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_pairs(cls, dims: GridDims, pairs: t.Iterable[tuple[CellId, CellId]]) -> GradientField:
        """Construct a gradient from explicit ``(facet, cofacet)`` pairs, leaving every other cell critical.

        No consistency check beyond incidence is made, so that broken fields can be built on purpose.

        :raises InvalidCellError: if a pair is not a facet and one of its cofacets.
        """
        codes = numpy.full(dims.num_cells, CRITICAL, dtype=numpy.uint8)

        for facet, cofacet in pairs:
            if facet not in dims.facets(cofacet):
                raise InvalidCellError(f'`({facet}, {cofacet})` is not a valid gradient pair: not a facet and cofacet.')
            low, high = numpy.array(dims.coordinates(facet)), numpy.array(dims.coordinates(cofacet))
            axis = int(numpy.flatnonzero(low != high)[0])
            sign = int(low[axis] - high[axis])
            codes[cofacet] = PAIRED_WITH_FACET | encode_direction(axis, sign)
            codes[facet] = PAIRED_WITH_COFACET | encode_direction(axis, -sign)

        return cls(dims, codes)

    @property
    def critical_mask(self) -> numpy.ndarray:
        return (self.codes & KIND_MASK) == CRITICAL

    @property
    def num_critical(self) -> int:
        return int(numpy.count_nonzero(self.critical_mask))

    @property
    def num_pairs(self) -> int:
        return int(numpy.count_nonzero((self.codes & KIND_MASK) == PAIRED_WITH_FACET))

    def code(self, cell: CellId) -> int:
        self.dims._validate(cell)
        return int(self.codes[cell])

    def is_critical(self, cell: CellId) -> bool:
        return self.code(cell) & KIND_MASK == CRITICAL

    def partner(self, cell: CellId) -> CellId | None:
        """Return the cell paired with ``cell``, or ``None`` if it is critical or unassigned."""
        code = self.code(cell)
        if code & KIND_MASK not in (PAIRED_WITH_FACET, PAIRED_WITH_COFACET):
            return None
        axis, sign = decode_direction(code)
        return int(cell) + sign * self.dims.strides[axis]

    def partners(self, cells: numpy.ndarray) -> numpy.ndarray:
        """Return the partner of every cell of an array, ``-1`` for critical, unassigned or out-of-grid partners."""
        cells = numpy.asarray(cells, dtype=numpy.int64)
        codes = self.codes[cells]
        kinds = codes & KIND_MASK
        bits = codes & DIRECTION_MASK
        axes = bits >> 1
        signs = numpy.where(bits & 1, 1, -1)
        paired = (kinds == PAIRED_WITH_FACET) | (kinds == PAIRED_WITH_COFACET)

        result = numpy.full(cells.shape, -1, dtype=numpy.int64)
        for axis in AXES:
            selected = paired & (axes == axis)
            moved = self.dims.neighbours(cells[selected], axis, 1)
            moved_down = self.dims.neighbours(cells[selected], axis, -1)
            result[selected] = numpy.where(signs[selected] > 0, moved, moved_down)

        return result
