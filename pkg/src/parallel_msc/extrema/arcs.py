"""Arcs between saddles and extrema and the segmentation of the grid by destination extremum."""
from __future__ import annotations

import dataclasses
import logging
import typing as t

import numpy

from parallel_msc.gradient import CriticalCell, CriticalCells
from parallel_msc.grid import AXES, GridDims

from .forest import ParentForest

__all__ = (
    'ExtremumSegmentation',
    'SaddleExtremumArc',
    'count_boundary_exits',
    'extremum_segmentation',
    'saddle_extremum_arcs',
)

LOGGER = logging.getLogger(__name__)


class SaddleExtremumArc(t.NamedTuple):
    """Gradient paths from a saddle to an extremum, aggregated into a multiplicity of 1 or 2."""

    saddle: CriticalCell
    extremum: CriticalCell
    multiplicity: int


@dataclasses.dataclass(frozen=True, eq=False)
class ExtremumSegmentation:
    """Destination extremum of every vertex and every cube.

    ``minima`` is indexed ``[z, y, x]`` over vertices, ``maxima`` over cubes. Values are cell identifiers of the
    extrema, ``-1`` marks cubes whose ascending path leaves the domain.
    """

    minima: numpy.ndarray
    maxima: numpy.ndarray


def _incident(dims: GridDims, saddles: numpy.ndarray, odd: bool) -> tuple[numpy.ndarray, numpy.ndarray]:
    """Return ``(saddle position, neighbour cell)`` for the steps along the odd or even axes of every saddle.

    For edges the odd axis leads to the two endpoints, for quads the even axis leads to the cofacet cubes. Steps that
    leave the grid are dropped.
    """
    coordinates = dims.coordinates_array(saddles)
    positions, neighbours = [], []

    for axis in AXES:
        selected = (coordinates[axis] & 1 == 1) if odd else (coordinates[axis] & 1 == 0)
        for sign in (-1, 1):
            moved = dims.neighbours(saddles, axis, sign)
            keep = selected & (moved >= 0)
            positions.append(numpy.flatnonzero(keep))
            neighbours.append(moved[keep])

    positions = numpy.concatenate(positions)
    order = numpy.argsort(positions, kind='stable')

    return positions[order], numpy.concatenate(neighbours)[order]


def _aggregate(
    saddles: numpy.ndarray, positions: numpy.ndarray, extrema: numpy.ndarray, saddle_index: int
) -> list[SaddleExtremumArc]:
    if positions.size == 0:
        return []
    extremum_index = 0 if saddle_index == 1 else 3
    pairs, counts = numpy.unique(numpy.stack((saddles[positions], extrema)), axis=1, return_counts=True)
    return [
        SaddleExtremumArc(
            CriticalCell(int(saddle), saddle_index), CriticalCell(int(extremum), extremum_index), int(count)
        )
        for saddle, extremum, count in zip(pairs[0], pairs[1], counts)
    ]


def saddle_extremum_arcs(
    dims: GridDims,
    critical: CriticalCells,
    minima: numpy.ndarray,
    maxima: numpy.ndarray,
) -> list[SaddleExtremumArc]:
    """Return the arcs from 1-saddles to minima, then from 2-saddles to maxima, each sorted by ``(saddle, extremum)``.

    :param dims: the grid.
    :param critical: the critical cells of the gradient.
    :param minima: destination minimum cell of every vertex, indexed by linear vertex index.
    :param maxima: destination maximum cell of every cube, indexed by linear cube index, ``-1`` for outflow.
    """
    one_saddles = critical.one_saddles
    positions, endpoints = _incident(dims, one_saddles, odd=True)
    arcs = _aggregate(one_saddles, positions, minima[dims.vertex_index(endpoints)], 1)

    two_saddles = critical.two_saddles
    positions, cubes = _incident(dims, two_saddles, odd=False)
    destinations = maxima[dims.cube_index(cubes)]
    reached = destinations >= 0
    arcs += _aggregate(two_saddles, positions[reached], destinations[reached], 2)

    LOGGER.info('computed %d saddle-extremum arcs', len(arcs))

    return arcs


def count_boundary_exits(dims: GridDims, critical: CriticalCells, maxima: numpy.ndarray) -> numpy.ndarray:
    """Return, for every 2-saddle, the number of its ascending paths that leave the domain through a boundary quad."""
    two_saddles = critical.two_saddles
    positions, cubes = _incident(dims, two_saddles, odd=False)
    exits = maxima[dims.cube_index(cubes)] < 0
    return numpy.bincount(positions[exits], minlength=two_saddles.size).astype(numpy.int64)


def extremum_segmentation(
    minima_forest: ParentForest,
    minima_labels: numpy.ndarray,
    maxima_forest: ParentForest,
    maxima_labels: numpy.ndarray,
    dims: GridDims,
) -> ExtremumSegmentation:
    """Label every vertex by its destination minimum and every cube by its destination maximum."""
    minima = minima_forest.root_cells(minima_labels).reshape(dims.nz, dims.ny, dims.nx)
    maxima = maxima_forest.root_cells(maxima_labels).reshape(dims.nz - 1, dims.ny - 1, dims.nx - 1)

    for volume in (minima, maxima):
        volume.setflags(write=False)

    return ExtremumSegmentation(minima, maxima)
