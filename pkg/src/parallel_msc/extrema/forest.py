"""Forests of merge-only gradient paths and their resolution by pointer doubling.

Descending paths from vertices and ascending paths from cubes never split: every non-critical vertex has exactly one
successor, the other endpoint of its paired edge, and every non-critical cube has exactly one successor, the other
cube of its paired quad. Following these links is root finding in a forest, resolved for all cells at once by
repeatedly replacing every parent by the parent's parent.
"""
from __future__ import annotations

import dataclasses
import logging
import math

import numpy

from parallel_msc.common.exceptions import GradientCycleError
from parallel_msc.gradient import CRITICAL, KIND_MASK, PAIRED_WITH_COFACET, PAIRED_WITH_FACET, GradientField
from parallel_msc.primitives import chunk_bounds, parallel_map

__all__ = ('ParentForest', 'build_forest', 'find_roots', 'pointer_doubling')

LOGGER = logging.getLogger(__name__)

DOUBLING_CHUNK_SIZE = 1 << 18


@dataclasses.dataclass(frozen=True, eq=False)
class ParentForest:
    """Parent links of all cells of dimension 0 or 3, indexed by linear vertex or cube index.

    A root is its own parent. Roots are the critical cells of the dimension, plus, for cubes, the *outflow* roots:
    cubes whose paired quad lies on the boundary of the domain so that the ascending path leaves the grid.
    """

    dimension: int
    cells: numpy.ndarray
    parent: numpy.ndarray
    outflow: numpy.ndarray

    def __len__(self) -> int:
        return int(self.parent.size)

    @property
    def roots(self) -> numpy.ndarray:
        """Return the local indices of all roots."""
        return numpy.flatnonzero(self.parent == numpy.arange(self.parent.size))

    def root_cells(self, labels: numpy.ndarray) -> numpy.ndarray:
        """Map local root labels to the cell identifiers of the roots, ``-1`` for outflow roots."""
        labels = numpy.asarray(labels, dtype=numpy.int64)
        return numpy.where(self.outflow[labels], -1, self.cells[labels])


def build_forest(gradient: GradientField, dimension: int) -> ParentForest:
    """Return the forest of descending paths from vertices (``dimension=0``) or ascending paths from cubes (``3``)."""
    dims = gradient.dims

    if dimension == 0:
        cells = dims.vertex_cells
        expected_kind = PAIRED_WITH_COFACET
    elif dimension == 3:
        cells = dims.cube_cells
        expected_kind = PAIRED_WITH_FACET
    else:
        raise ValueError(f'`{dimension}` is not a valid forest dimension: only 0 and 3 have merge-only paths.')

    kinds = gradient.codes[cells] & KIND_MASK
    local = numpy.arange(cells.size, dtype=numpy.int64)
    parent = local.copy()
    outflow = numpy.zeros(cells.size, dtype=bool)

    if numpy.any((kinds != CRITICAL) & (kinds != expected_kind)):
        raise ValueError(f'gradient pairs {dimension}-cells in a direction that does not exist.')

    paired = kinds == expected_kind
    sources = cells[paired]
    middle = gradient.partners(sources)

    # The next cell lies on the far side of the paired edge or quad, in doubled coordinates ``2 * middle - source``.
    targets = 2 * numpy.stack(dims.coordinates_array(middle)) - numpy.stack(dims.coordinates_array(sources))
    inside = numpy.all((targets >= 0) & (targets < numpy.array(dims.cell_shape)[:, None]), axis=0)

    index = dims.vertex_index if dimension == 0 else dims.cube_index
    indices = local[paired]
    parent[indices[inside]] = index(dims.ids_from_coordinates(*targets[:, inside]))
    outflow[indices[~inside]] = True

    forest = ParentForest(dimension, cells, parent, outflow)
    LOGGER.info('built %d-cell forest: %d roots, %d of them outflow', dimension, forest.roots.size, int(outflow.sum()))

    return forest


def pointer_doubling(parent: numpy.ndarray, chunk_size: int = DOUBLING_CHUNK_SIZE) -> tuple[numpy.ndarray, int]:
    """Resolve parent links to roots by replacing every link with the link of its target until nothing changes.

    :return: tuple of the root of every element and the number of rounds, including the final round that detects the
        fixpoint.
    :raises GradientCycleError: if the links do not reach a fixpoint within the bound implied by a forest.
    """
    parent = numpy.asarray(parent, dtype=numpy.int64)
    labels = parent.copy()
    size = labels.size
    max_rounds = math.ceil(math.log2(max(size, 2))) + 2
    bounds = chunk_bounds(size, chunk_size)
    rounds = 0

    while True:
        rounds += 1

        if rounds > max_rounds:
            raise GradientCycleError(f'pointer doubling did not converge in {max_rounds} rounds: links form a cycle.')

        current = labels
        jumped = current.copy()
        chunks = parallel_map(lambda bound: current[current[bound[0] : bound[1]]], bounds)
        for (start, stop), chunk in zip(bounds, chunks):
            jumped[start:stop] = chunk
        LOGGER.debug('pointer doubling round %d: %d links changed', rounds, int(numpy.count_nonzero(jumped != labels)))

        if numpy.array_equal(jumped, labels):
            # Even cycles also collapse to a fixpoint, but onto members that are not their own parent.
            if not numpy.array_equal(parent[labels], labels):
                raise GradientCycleError('pointer doubling stopped on cells that are not roots: links form a cycle.')
            return labels, rounds

        labels = jumped


def find_roots(forest: ParentForest | numpy.ndarray) -> numpy.ndarray:
    """Return the local index of the root reached from every element of a forest."""
    parent = forest.parent if isinstance(forest, ParentForest) else forest
    labels, rounds = pointer_doubling(parent)
    LOGGER.debug('resolved %d roots in %d rounds', labels.size, rounds)
    return labels
