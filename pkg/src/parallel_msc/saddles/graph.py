"""The DAG of ascending gradient paths from 1-saddles to 2-saddles and its marking by frontier BFS."""
from __future__ import annotations

import dataclasses
import logging

import numpy

from parallel_msc.common.exceptions import GradientCycleError
from parallel_msc.common.types import SuccessorKind
from parallel_msc.gradient import CRITICAL, KIND_MASK, PAIRED_WITH_FACET, GradientField
from parallel_msc.grid import AXES, CellId
from parallel_msc.primitives import stream_compact

__all__ = ('MAX_OUT_DEGREE', 'MarkedSubgraph', 'mark_reachable', 'successor_table', 'successors')

LOGGER = logging.getLogger(__name__)

MAX_OUT_DEGREE = 4


def successors(edge: CellId, gradient: GradientField) -> list[tuple[SuccessorKind, CellId]]:
    """Return the successors of an edge in the saddle DAG, in cofacet order.

    A critical cofacet quad is a terminal 2-saddle, a quad paired with another edge continues the path at that edge
    and a quad paired with a cube ends it.
    """
    dims = gradient.dims
    if dims.dimension(edge) != 1:
        raise ValueError(f'`{edge}` is not a valid edge: cell has dimension {dims.dimension(edge)}.')

    result = []
    for quad in dims.cofacets(edge):
        kind = gradient.code(quad) & KIND_MASK
        if kind == CRITICAL:
            result.append((SuccessorKind.TERMINAL_2SADDLE, quad))
        elif kind == PAIRED_WITH_FACET:
            other = gradient.partner(quad)
            if other != int(edge):
                result.append((SuccessorKind.EDGE, other))

    return result


def successor_table(gradient: GradientField, edges: numpy.ndarray) -> tuple[numpy.ndarray, numpy.ndarray]:
    """Return the successors of an array of edges as four slots per edge, in the order of :func:`successors`.

    :return: tuple of the successor cells, ``-1`` for empty slots, and a mask of the slots holding a terminal 2-saddle.
    """
    dims = gradient.dims
    edges = numpy.asarray(edges, dtype=numpy.int64)
    coordinates = dims.coordinates_array(edges)

    columns, even = [], []
    for axis in AXES:
        for sign in (-1, 1):
            columns.append(dims.neighbours(edges, axis, sign))
            even.append(coordinates[axis] & 1 == 0)

    # Every edge has exactly two even axes, hence four candidate slots per row.
    quads = numpy.stack(columns, axis=1)[numpy.stack(even, axis=1)].reshape(edges.size, MAX_OUT_DEGREE)
    inside = quads >= 0
    kinds = numpy.zeros(quads.shape, dtype=numpy.uint8)
    kinds[inside] = gradient.codes[quads[inside]] & KIND_MASK

    terminal = inside & (kinds == CRITICAL)
    continued = inside & (kinds == PAIRED_WITH_FACET)
    others = numpy.full(quads.shape, -1, dtype=numpy.int64)
    others[continued] = gradient.partners(quads[continued])
    continued &= others != edges[:, None]

    targets = numpy.where(terminal, quads, numpy.where(continued, others, -1))

    return targets, terminal


@dataclasses.dataclass(frozen=True, eq=False)
class MarkedSubgraph:
    """Cells of the saddle DAG reachable from any 1-saddle.

    ``marked`` flags every reachable edge, including the 1-saddles themselves, and every discovered 2-saddle.
    """

    gradient: GradientField
    sources: numpy.ndarray
    marked: numpy.ndarray
    two_saddles: numpy.ndarray
    rounds: int

    @property
    def edges(self) -> numpy.ndarray:
        """Return the sorted identifiers of all marked edges."""
        cells = numpy.flatnonzero(self.marked)
        return cells[self.gradient.dims.dimensions(cells) == 1]

    @property
    def num_marked(self) -> int:
        return int(numpy.count_nonzero(self.marked))


def mark_reachable(gradient: GradientField, one_saddles: numpy.ndarray) -> MarkedSubgraph:
    """Mark the part of the saddle DAG reachable from the 1-saddles by a multi-source frontier BFS.

    Every round expands the whole frontier into four slots per node, compacts the non-empty slots, records reached
    2-saddles without expanding them and keeps the edges not visited before as the next frontier.
    """
    dims = gradient.dims
    sources = numpy.unique(numpy.asarray(one_saddles, dtype=numpy.int64))
    visited = numpy.zeros(dims.num_cells, dtype=bool)
    discovered = numpy.zeros(dims.num_cells, dtype=bool)
    visited[sources] = True

    frontier = sources
    rounds = 0

    while frontier.size:
        rounds += 1

        if rounds > dims.num_cells:
            raise GradientCycleError('frontier BFS did not terminate: the gradient field has a closed V-path.')

        targets, terminal = successor_table(gradient, frontier)
        filled = targets.ravel() >= 0
        reached = stream_compact(targets.ravel(), filled)
        is_terminal = stream_compact(terminal.ravel(), filled)

        discovered[reached[is_terminal]] = True
        candidates = reached[~is_terminal]
        frontier = numpy.unique(candidates[~visited[candidates]])
        visited[frontier] = True

        LOGGER.debug(
            'frontier BFS round %d: %d filled slots, next frontier of %d edges', rounds, reached.size, frontier.size
        )

    marked = visited | discovered
    result = MarkedSubgraph(gradient, sources, marked, numpy.flatnonzero(discovered), rounds)
    LOGGER.info(
        'marked %d cells reachable from %d 1-saddles in %d rounds, %d 2-saddles discovered',
        result.num_marked,
        sources.size,
        rounds,
        result.two_saddles.size,
    )

    return result
