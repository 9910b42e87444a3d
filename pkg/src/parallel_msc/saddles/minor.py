"""Contraction of the marked saddle DAG into the graph minor of 1-saddles, junctions and 2-saddles."""
from __future__ import annotations

import dataclasses
import logging
import typing as t

import numpy

from parallel_msc.common.exceptions import GradientCycleError
from parallel_msc.common.types import EdgeType
from parallel_msc.primitives import stream_compact

from .graph import MAX_OUT_DEGREE, MarkedSubgraph, successor_table

__all__ = ('DagMinor', 'MinorEdges', 'build_minor')

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class MinorEdges:
    """Edges of one type of the minor, sorted by ``(source, target)``."""

    sources: numpy.ndarray
    targets: numpy.ndarray
    multiplicities: numpy.ndarray

    def __len__(self) -> int:
        return int(self.sources.size)

    def __iter__(self) -> t.Iterator[tuple[int, int, int]]:
        for source, target, multiplicity in zip(self.sources, self.targets, self.multiplicities):
            yield int(source), int(target), int(multiplicity)

    @classmethod
    def empty(cls) -> MinorEdges:
        return cls(*(numpy.zeros(0, dtype=numpy.int64) for _ in range(3)))


@dataclasses.dataclass(frozen=True, eq=False)
class DagMinor:
    """Graph minor of the saddle DAG with every simple path contracted into an edge carrying a multiplicity.

    Nodes are identified by arbitrary distinct integers, the cell identifiers when built from a gradient.
    """

    one_saddles: numpy.ndarray
    junctions: numpy.ndarray
    two_saddles: numpy.ndarray
    edges: dict[EdgeType, MinorEdges]

    @classmethod
    def from_edges(
        cls,
        edges: t.Iterable[tuple[int, int, int]],
        one_saddles: t.Iterable[int],
        junctions: t.Iterable[int],
        two_saddles: t.Iterable[int],
    ) -> DagMinor:
        """Construct a minor from ``(source, target, multiplicity)`` triples, summing repeated pairs.

        :raises ValueError: if an edge does not lead from a 1-saddle or junction to a junction or 2-saddle, or if a
            multiplicity is not positive.
        """
        one_saddles, junctions, two_saddles = (
            numpy.unique(numpy.asarray(list(nodes), dtype=numpy.int64))
            for nodes in (one_saddles, junctions, two_saddles)
        )
        triples = numpy.asarray(list(edges), dtype=numpy.int64).reshape(-1, 3)
        sources, targets, multiplicities = triples.T

        if numpy.any(multiplicities < 1):
            raise ValueError('minor edge multiplicities must be positive.')

        from_saddle = numpy.isin(sources, one_saddles)
        from_junction = numpy.isin(sources, junctions)
        to_saddle = numpy.isin(targets, two_saddles)
        to_junction = numpy.isin(targets, junctions)

        if not numpy.all((from_saddle | from_junction) & (to_saddle | to_junction)):
            raise ValueError('minor edges must lead from a 1-saddle or junction to a junction or 2-saddle.')

        masks = {
            EdgeType.ONE_SADDLE_JUNCTION: from_saddle & to_junction,
            EdgeType.JUNCTION_JUNCTION: from_junction & to_junction,
            EdgeType.JUNCTION_TWO_SADDLE: from_junction & to_saddle,
            EdgeType.ONE_SADDLE_TWO_SADDLE: from_saddle & to_saddle,
        }
        buckets = {}
        for edge_type, mask in masks.items():
            if not mask.any():
                buckets[edge_type] = MinorEdges.empty()
                continue
            pairs, inverse = numpy.unique(numpy.stack((sources[mask], targets[mask])), axis=1, return_inverse=True)
            summed = numpy.zeros(pairs.shape[1], dtype=numpy.int64)
            numpy.add.at(summed, inverse.ravel(), multiplicities[mask])
            buckets[edge_type] = MinorEdges(pairs[0], pairs[1], summed)

        return cls(one_saddles, junctions, two_saddles, buckets)

    @property
    def num_edges(self) -> int:
        return sum(len(edges) for edges in self.edges.values())

    def iter_edges(self) -> t.Iterator[tuple[int, int, int]]:
        for edge_type in EdgeType:
            yield from self.edges[edge_type]

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """Return the outgoing ``(target, multiplicity)`` pairs of every node that has any."""
        result: dict[int, list[tuple[int, int]]] = {}
        for source, target, multiplicity in self.iter_edges():
            result.setdefault(source, []).append((target, multiplicity))
        return result


def build_minor(marked: MarkedSubgraph) -> DagMinor:
    """Contract every simple path of the marked subgraph between 1-saddles, junctions and 2-saddles.

    One trace starts on every outgoing branch of every 1-saddle and junction. All traces advance one node per round
    until they reach a junction or a 2-saddle; traces ending in a node without successors are dropped.

    :raises GradientCycleError: if a trace is longer than the number of cells.
    """
    gradient = marked.gradient
    edges = marked.edges
    targets, terminal = successor_table(gradient, edges)
    degree = numpy.count_nonzero(targets >= 0, axis=1)

    is_source = numpy.isin(edges, marked.sources)
    junctions = edges[~is_source & (degree > 1)]
    origins = edges[is_source | (degree > 1)]

    def row_of(cells: numpy.ndarray) -> numpy.ndarray:
        return numpy.searchsorted(edges, cells)

    origin_rows = row_of(origins)
    slots = targets[origin_rows] >= 0
    trace_origin = numpy.repeat(origins, MAX_OUT_DEGREE)[slots.ravel()]
    trace_position = targets[origin_rows][slots]
    trace_terminal = terminal[origin_rows][slots]

    found_sources, found_targets = [], []
    rounds = 0
    junction_mask = numpy.zeros(gradient.dims.num_cells, dtype=bool)
    junction_mask[junctions] = True

    while trace_origin.size:
        rounds += 1

        if rounds > gradient.dims.num_cells:
            raise GradientCycleError('path contraction did not terminate: the gradient field has a closed V-path.')

        ended = trace_terminal | junction_mask[trace_position]
        found_sources.append(trace_origin[ended])
        found_targets.append(trace_position[ended])

        rows = row_of(trace_position)
        rows = numpy.where(ended, 0, rows)
        step = targets[rows]
        live = ~ended & (degree[rows] == 1)
        column = numpy.argmax(step >= 0, axis=1)

        trace_origin = stream_compact(trace_origin, live)
        trace_terminal = stream_compact(terminal[rows, column], live)
        trace_position = stream_compact(step[numpy.arange(rows.size), column], live)

        LOGGER.debug(
            'path contraction round %d: %d traces ended, %d advancing', rounds, int(ended.sum()), trace_origin.size
        )

    sources = numpy.concatenate(found_sources) if found_sources else numpy.zeros(0, dtype=numpy.int64)
    targets_found = numpy.concatenate(found_targets) if found_targets else numpy.zeros(0, dtype=numpy.int64)

    minor = DagMinor.from_edges(
        zip(sources, targets_found, numpy.ones(sources.size, dtype=numpy.int64)),
        marked.sources,
        junctions,
        marked.two_saddles,
    )
    LOGGER.info(
        'contracted marked subgraph into %d junctions and %d minor edges in %d rounds',
        junctions.size,
        minor.num_edges,
        rounds,
    )

    return minor
