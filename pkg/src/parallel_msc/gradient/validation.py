"""Consistency checks of a discrete gradient: the matching property and the absence of closed V-paths."""
from __future__ import annotations

import dataclasses
import logging

import numpy

from parallel_msc.grid import AXES

from .codes import CRITICAL, DIRECTION_MASK, KIND_MASK, PAIRED_WITH_COFACET, PAIRED_WITH_FACET, GradientField

__all__ = ('MAX_CYCLE_CHECK_CELLS', 'GradientReport', 'validate_gradient')

LOGGER = logging.getLogger(__name__)

MAX_CYCLE_CHECK_CELLS = 100_000


@dataclasses.dataclass(frozen=True, eq=False)
class GradientReport:
    """Findings of :func:`validate_gradient`.

    ``cycle_cells`` lists the cells that lie on or downstream of a closed V-path, it is ``None`` when the grid was too
    large for the exhaustive check.
    """

    matching_violations: numpy.ndarray
    unassigned: numpy.ndarray
    cycle_cells: numpy.ndarray | None
    degenerate: bool

    @property
    def cycles_checked(self) -> bool:
        return self.cycle_cells is not None

    @property
    def is_valid(self) -> bool:
        return (
            self.matching_violations.size == 0
            and self.unassigned.size == 0
            and (self.cycle_cells is None or self.cycle_cells.size == 0)
        )

    def summary(self) -> str:
        cycles = 'not checked' if self.cycle_cells is None else str(self.cycle_cells.size)
        return (
            f'{self.matching_violations.size} matching violations, {self.unassigned.size} unassigned cells, '
            f'{cycles} cells on closed V-paths' + (', no gradient pairs' if self.degenerate else '')
        )


def _matching_violations(gradient: GradientField) -> numpy.ndarray:
    """Return the paired cells whose partner is outside the grid, of the wrong dimension or not paired back."""
    dims = gradient.dims
    cells = numpy.arange(dims.num_cells, dtype=numpy.int64)
    kinds = gradient.codes & KIND_MASK
    paired = (kinds == PAIRED_WITH_FACET) | (kinds == PAIRED_WITH_COFACET)
    partners = gradient.partners(cells)
    coordinates = dims.coordinates_array(cells)
    axes = (gradient.codes & DIRECTION_MASK) >> 1

    odd_axis = numpy.zeros(cells.size, dtype=bool)
    for axis in AXES:
        odd_axis |= (axes == axis) & (coordinates[axis] & 1 == 1)

    wrong_dimension = numpy.where(kinds == PAIRED_WITH_FACET, ~odd_axis, odd_axis)
    expected = numpy.where(kinds == PAIRED_WITH_FACET, PAIRED_WITH_COFACET, PAIRED_WITH_FACET) | (
        (gradient.codes & DIRECTION_MASK) ^ 1
    )
    reciprocal = numpy.zeros(cells.size, dtype=bool)
    inside = partners >= 0
    reciprocal[inside] = gradient.codes[partners[inside]] == expected[inside]

    return cells[paired & (~inside | wrong_dimension | ~reciprocal)]


def _vpath_edges(gradient: GradientField) -> tuple[numpy.ndarray, numpy.ndarray]:
    """Return the edges ``d-cell -> d-cell`` of the V-path graphs of all dimensions.

    A cell paired with a cofacet points to every other facet of that cofacet.
    """
    dims = gradient.dims
    sources = numpy.flatnonzero((gradient.codes & KIND_MASK) == PAIRED_WITH_COFACET)
    cofacets = gradient.partners(sources)
    keep = cofacets >= 0
    sources, cofacets = sources[keep], cofacets[keep]
    coordinates = dims.coordinates_array(cofacets)

    edge_sources, edge_targets = [], []
    for axis in AXES:
        odd = coordinates[axis] & 1 == 1
        for sign in (-1, 1):
            targets = cofacets + sign * dims.strides[axis]
            selected = odd & (targets != sources)
            edge_sources.append(sources[selected])
            edge_targets.append(targets[selected])

    return numpy.concatenate(edge_sources), numpy.concatenate(edge_targets)


def _cycle_cells(gradient: GradientField) -> numpy.ndarray:
    """Return the cells left after repeatedly peeling cells without incoming V-path edges."""
    num_cells = gradient.dims.num_cells
    sources, targets = _vpath_edges(gradient)
    in_degree = numpy.bincount(targets, minlength=num_cells)
    alive = numpy.ones(num_cells, dtype=bool)
    live_edges = numpy.ones(sources.size, dtype=bool)

    while True:
        peel = alive & (in_degree == 0)
        if not peel.any():
            break
        alive &= ~peel
        removed = live_edges & peel[sources]
        live_edges &= ~removed
        in_degree -= numpy.bincount(targets[removed], minlength=num_cells)

    return numpy.flatnonzero(alive)


def validate_gradient(gradient: GradientField, max_cycle_check_cells: int = MAX_CYCLE_CHECK_CELLS) -> GradientReport:
    """Check the matching property of a gradient and, on small grids, the absence of closed V-paths.

    :param gradient: the gradient field to check.
    :param max_cycle_check_cells: largest number of cells for which closed V-paths are searched exhaustively.
    """
    violations = _matching_violations(gradient)
    kinds = gradient.codes & KIND_MASK
    unassigned = numpy.flatnonzero((kinds != CRITICAL) & (kinds != PAIRED_WITH_FACET) & (kinds != PAIRED_WITH_COFACET))
    cycles = _cycle_cells(gradient) if gradient.dims.num_cells <= max_cycle_check_cells else None

    report = GradientReport(
        matching_violations=violations,
        unassigned=unassigned,
        cycle_cells=cycles,
        degenerate=gradient.num_pairs == 0,
    )
    LOGGER.info('gradient validation: %s', report.summary())

    return report
