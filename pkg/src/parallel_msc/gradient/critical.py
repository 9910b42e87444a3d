"""Extraction of the critical cells of a discrete gradient."""
from __future__ import annotations

import dataclasses
import logging
import typing as t

import numpy

from parallel_msc.grid import CellId
from parallel_msc.primitives import stream_compact

from .codes import CRITICAL, KIND_MASK, GradientField

__all__ = ('CriticalCell', 'CriticalCells', 'extract_critical_cells')

LOGGER = logging.getLogger(__name__)


class CriticalCell(t.NamedTuple):
    """A cell that is not part of any gradient pair; its index is its dimension."""

    cell: CellId
    index: int


@dataclasses.dataclass(frozen=True, eq=False)
class CriticalCells:
    """Critical cells bucketed by index, each bucket sorted by cell identifier."""

    minima: numpy.ndarray
    one_saddles: numpy.ndarray
    two_saddles: numpy.ndarray
    maxima: numpy.ndarray

    def by_index(self, index: int) -> numpy.ndarray:
        """Return the sorted cell identifiers of the critical cells of the given index."""
        return (self.minima, self.one_saddles, self.two_saddles, self.maxima)[index]

    def cells(self, index: int) -> list[CriticalCell]:
        return [CriticalCell(int(cell), index) for cell in self.by_index(index)]

    def __iter__(self) -> t.Iterator[CriticalCell]:
        for index in range(4):
            yield from self.cells(index)

    def __len__(self) -> int:
        return sum(self.counts)

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return tuple(int(self.by_index(index).size) for index in range(4))  # type: ignore[return-value]

    @property
    def euler_characteristic(self) -> int:
        """Return the alternating sum of the counts, which is 1 for any gradient on a box."""
        return sum((-1) ** index * count for index, count in enumerate(self.counts))


def extract_critical_cells(gradient: GradientField) -> CriticalCells:
    """Return the critical cells of a gradient, bucketed by index and sorted by cell identifier."""
    cells = numpy.arange(gradient.dims.num_cells, dtype=numpy.int64)
    critical = stream_compact(cells, (gradient.codes & KIND_MASK) == CRITICAL)
    dimensions = gradient.dims.dimensions(critical)
    result = CriticalCells(*(stream_compact(critical, dimensions == index) for index in range(4)))

    LOGGER.info('critical cells per index: %s (Euler characteristic %d)', result.counts, result.euler_characteristic)

    return result
