"""Discrete gradient construction by homotopy expansion of vertex lower stars.

Every cell belongs to the lower star of its highest corner, so the pairing of a vertex's lower star can be decided
independently of all other vertices. The cells around a vertex are addressed by their local offset in ``{-1, 0, 1}^3``
of doubled coordinates, ``k = (ox + 1) + 3 (oy + 1) + 9 (oz + 1)``, which lets a whole chunk of vertices run the
queue-based expansion in lockstep as array passes: each round every vertex either pairs its lowest cell that has a
single unpaired facet, or declares its lowest queued cell critical.
"""
from __future__ import annotations

import itertools
import logging

import numpy

from parallel_msc.common.exceptions import MorseSmaleError
from parallel_msc.grid import AXES, ScalarField
from parallel_msc.primitives import chunk_bounds, parallel_map, stream_compact

from .codes import CRITICAL, PAIRED_WITH_COFACET, PAIRED_WITH_FACET, UNASSIGNED, GradientField, encode_direction

__all__ = ('DEFAULT_CHUNK_SIZE', 'assign_gradient')

LOGGER = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 4096

CENTRE = 13
PADDING = 27
NUM_LOCAL = 27

OFFSETS = numpy.array([(k % 3 - 1, k // 3 % 3 - 1, k // 9 - 1) for k in range(NUM_LOCAL)], dtype=numpy.int64)
LOCAL_DIMENSIONS = numpy.count_nonzero(OFFSETS, axis=1)

_OPEN, _PAIRED, _CRITICAL, _OUTSIDE = 0, 1, 2, 3
_UNREACHABLE = numpy.iinfo(numpy.int64).max
MAX_LOCAL_ROUNDS = 2 * NUM_LOCAL + 1


def _local_index(offset) -> int:
    return int((offset[0] + 1) + 3 * (offset[1] + 1) + 9 * (offset[2] + 1))


def _build_tables() -> tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]:
    """Return the local facet, other-corner and pair-code tables of the 27 cells around a vertex."""
    facets = numpy.full((NUM_LOCAL, 3), PADDING, dtype=numpy.int64)
    others = numpy.full((NUM_LOCAL, 7), PADDING, dtype=numpy.int64)
    pair_codes = numpy.full((NUM_LOCAL, NUM_LOCAL), UNASSIGNED, dtype=numpy.uint8)

    for k, offset in enumerate(OFFSETS):
        moving = [axis for axis in AXES if offset[axis]]

        for slot, axis in enumerate(moving):
            facet = offset.copy()
            facet[axis] = 0
            f = _local_index(facet)
            facets[k, slot] = f
            # The partner of ``k`` is ``f``, one step of ``-offset[axis]`` away, and vice versa.
            pair_codes[k, f] = PAIRED_WITH_FACET | encode_direction(axis, -int(offset[axis]))
            pair_codes[f, k] = PAIRED_WITH_COFACET | encode_direction(axis, int(offset[axis]))

        corners = [
            _local_index([offset[axis] if axis in chosen else 0 for axis in AXES])
            for size in range(1, len(moving) + 1)
            for chosen in itertools.combinations(moving, size)
        ]
        others[k, : len(corners)] = sorted(corners)

    return facets, others, pair_codes


LOCAL_FACETS, LOCAL_OTHERS, PAIR_CODES = _build_tables()


def _expand_lower_stars(field: ScalarField, start: int, stop: int) -> tuple[numpy.ndarray, numpy.ndarray]:
    """Pair the lower stars of the vertices ``start`` to ``stop`` and return the cell identifiers and their codes."""
    dims = field.dims
    nx, ny, nz = dims.vertex_shape
    vertices = numpy.arange(start, stop, dtype=numpy.int64)
    rows = numpy.arange(vertices.size)
    x, y, z = vertices % nx, (vertices // nx) % ny, vertices // (nx * ny)

    nbx = x[:, None] + OFFSETS[:, 0]
    nby = y[:, None] + OFFSETS[:, 1]
    nbz = z[:, None] + OFFSETS[:, 2]
    inside = (nbx >= 0) & (nbx < nx) & (nby >= 0) & (nby < ny) & (nbz >= 0) & (nbz < nz)
    neighbours = numpy.where(inside, nbx + nx * (nby + ny * nbz), 0)

    ranks = numpy.full((vertices.size, NUM_LOCAL + 1), -1, dtype=numpy.int64)
    ranks[:, :NUM_LOCAL] = numpy.where(inside, field.vertex_rank[neighbours], -1)

    others = ranks[:, LOCAL_OTHERS]
    lower = inside & numpy.all(others < ranks[:, CENTRE, None, None], axis=2)

    # Cells of one lower star share their top corner, so they are ordered by the remaining corner ranks, descending.
    keys = numpy.sort(others, axis=2)[:, :, ::-1].reshape(-1, others.shape[2])
    order = numpy.lexsort((*(keys[:, column] for column in reversed(range(keys.shape[1]))), rows.repeat(NUM_LOCAL)))
    position = numpy.empty(order.size, dtype=numpy.int64)
    position[order] = numpy.arange(order.size)
    position = position.reshape(vertices.size, NUM_LOCAL)

    status = numpy.where(lower, _OPEN, _OUTSIDE).astype(numpy.int8)
    partner = numpy.full((vertices.size, NUM_LOCAL), PADDING, dtype=numpy.int64)

    edges = lower & (LOCAL_DIMENSIONS == 1)
    has_edge = edges.any(axis=1)
    status[~has_edge, CENTRE] = _CRITICAL

    paired = rows[has_edge]
    delta = numpy.argmin(numpy.where(edges, position, _UNREACHABLE), axis=1)[has_edge]
    status[paired, CENTRE] = _PAIRED
    status[paired, delta] = _PAIRED
    partner[paired, CENTRE] = delta
    partner[paired, delta] = CENTRE

    queued = edges.copy()
    queued[paired, delta] = False

    active = stream_compact(rows, (status == _OPEN).any(axis=1))
    rounds = 0

    while active.size:
        rounds += 1

        if rounds > MAX_LOCAL_ROUNDS:
            raise MorseSmaleError(f'lower star expansion did not finish within {MAX_LOCAL_ROUNDS} rounds.')

        count = numpy.arange(active.size)
        unpaired = numpy.zeros((active.size, NUM_LOCAL + 1), dtype=bool)
        unpaired[:, :NUM_LOCAL] = status[active] == _OPEN
        num_unpaired = unpaired[:, LOCAL_FACETS].sum(axis=2)
        in_queue = unpaired[:, :NUM_LOCAL] & queued[active]
        local_position = position[active]

        candidates = unpaired[:, :NUM_LOCAL] & ~in_queue & (LOCAL_DIMENSIONS >= 2) & (num_unpaired <= 1)
        has_candidate = candidates.any(axis=1)
        alpha = numpy.argmin(numpy.where(candidates, local_position, _UNREACHABLE), axis=1)
        alpha_unpaired = num_unpaired[count, alpha]

        enqueue = has_candidate & (alpha_unpaired == 0)
        queued[active[enqueue], alpha[enqueue]] = True

        pairing = has_candidate & (alpha_unpaired == 1)
        alpha_facets = LOCAL_FACETS[alpha]
        facet = alpha_facets[count, numpy.argmax(unpaired[count[:, None], alpha_facets], axis=1)]
        high, low, owner = alpha[pairing], facet[pairing], active[pairing]
        status[owner, high] = _PAIRED
        status[owner, low] = _PAIRED
        partner[owner, high] = low
        partner[owner, low] = high
        queued[owner, low] = False

        has_queued = in_queue.any(axis=1)
        stuck = ~has_candidate & ~has_queued
        if stuck.any():
            raise MorseSmaleError(f'lower star of vertex `{int(vertices[active[stuck][0]])}` cannot be expanded.')

        promote = ~has_candidate & has_queued
        gamma = numpy.argmin(numpy.where(in_queue, local_position, _UNREACHABLE), axis=1)
        status[active[promote], gamma[promote]] = _CRITICAL
        queued[active[promote], gamma[promote]] = False

        active = stream_compact(active, (status[active] == _OPEN).any(axis=1))

    steps = OFFSETS @ numpy.array(dims.strides, dtype=numpy.int64)
    cells = dims.vertex_cells[vertices][:, None] + steps
    local = numpy.broadcast_to(numpy.arange(NUM_LOCAL), status.shape)
    codes = numpy.where(status == _CRITICAL, CRITICAL, PAIR_CODES[local, numpy.minimum(partner, NUM_LOCAL - 1)])

    return cells[lower], codes[lower].astype(numpy.uint8)


def assign_gradient(field: ScalarField, chunk_size: int = DEFAULT_CHUNK_SIZE) -> GradientField:
    """Return the discrete gradient of a scalar field.

    Vertices are processed in chunks of ``chunk_size``; since every cell is written by the vertex owning its lower
    star, neither the chunk size nor the number of threads has any influence on the result.

    :param field: the scalar field.
    :param chunk_size: number of vertices expanded together in one task.
    """
    dims = field.dims
    codes = numpy.full(dims.num_cells, UNASSIGNED, dtype=numpy.uint8)
    bounds = chunk_bounds(dims.num_vertices, chunk_size)

    for cells, chunk_codes in parallel_map(lambda bound: _expand_lower_stars(field, *bound), bounds):
        codes[cells] = chunk_codes

    unassigned = numpy.flatnonzero(codes == UNASSIGNED)
    if unassigned.size:
        raise MorseSmaleError(f'{unassigned.size} cells are not part of any lower star, e.g. `{int(unassigned[0])}`.')

    gradient = GradientField(dims, codes)
    LOGGER.info(
        'assigned gradient on %s grid: %d pairs, %d critical cells',
        dims.vertex_shape,
        gradient.num_pairs,
        gradient.num_critical,
    )

    return gradient
