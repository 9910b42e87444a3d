"""Counting the gradient paths between 1-saddles and 2-saddles through the contracted minor.

The matrix scheme keeps a frontier ``A`` of path counts from 1-saddles to junctions. Every iteration accumulates the
frontier in ``Astar`` and advances it one junction-to-junction edge with ``C = A B``. Once the frontier is empty, the
paths through junctions end with ``Dstar = Astar Bstar`` and the direct edges ``D`` are added.
"""
from __future__ import annotations

import dataclasses
import logging
import typing as t

import numpy

from parallel_msc.common.exceptions import CountOverflowError, GradientCycleError
from parallel_msc.common.types import EdgeType
from parallel_msc.primitives import INT64_MAX

from .matrix import SparseCountMatrix, from_edges, sp_add, sp_multiply
from .minor import DagMinor

__all__ = ('PathCountingState', 'PathCounts', 'count_paths', 'count_paths_by_traversal')

LOGGER = logging.getLogger(__name__)

PathCounts = t.Dict[t.Tuple[int, int], int]


@dataclasses.dataclass
class PathCountingState:
    """Matrices of the iterative path counting, with rows and columns indexed by position in the sorted node labels."""

    one_saddles: numpy.ndarray
    junctions: numpy.ndarray
    two_saddles: numpy.ndarray
    A: SparseCountMatrix
    B: SparseCountMatrix
    Bstar: SparseCountMatrix
    D: SparseCountMatrix
    Astar: SparseCountMatrix
    C: SparseCountMatrix | None = None
    Dstar: SparseCountMatrix | None = None
    result: SparseCountMatrix | None = None
    iterations: int = 0

    @classmethod
    def from_minor(cls, minor: DagMinor) -> PathCountingState:
        """Initialize the frontier, transition and terminal matrices from the typed edges of a minor."""
        labels = {'1s': minor.one_saddles, 'j': minor.junctions, '2s': minor.two_saddles}

        def matrix(edge_type: EdgeType) -> SparseCountMatrix:
            edges = minor.edges[edge_type]
            source, target = edge_type.value.split('-')
            return from_edges(edges.sources, edges.targets, edges.multiplicities, labels[source], labels[target])

        return cls(
            one_saddles=minor.one_saddles,
            junctions=minor.junctions,
            two_saddles=minor.two_saddles,
            A=matrix(EdgeType.ONE_SADDLE_JUNCTION),
            B=matrix(EdgeType.JUNCTION_JUNCTION),
            Bstar=matrix(EdgeType.JUNCTION_TWO_SADDLE),
            D=matrix(EdgeType.ONE_SADDLE_TWO_SADDLE),
            Astar=SparseCountMatrix.zeros(minor.one_saddles.size, minor.junctions.size),
        )

    def step(self) -> bool:
        """Advance the frontier by one junction-to-junction edge and return whether it is still nonempty.

        :raises GradientCycleError: if the frontier is still nonempty after as many iterations as there are junctions.
        """
        if self.A.nnz == 0:
            return False

        self.iterations += 1

        if self.iterations > self.junctions.size:
            raise GradientCycleError(
                f'path counting frontier is nonempty after {self.iterations} iterations over '
                f'{self.junctions.size} junctions: the minor has a cycle.'
            )

        self.C = sp_multiply(self.A, self.B)
        self.Astar = sp_add(self.Astar, self.A)
        self.A = self.C
        LOGGER.debug('path counting iteration %d: frontier of %d entries', self.iterations, self.A.nnz)

        return self.A.nnz > 0

    def solve(self) -> SparseCountMatrix:
        """Run the iteration to completion and return the 1-saddle by 2-saddle path count matrix.

        :raises CountOverflowError: if a count exceeds the signed 64-bit range, with the row and column translated to
            node labels.
        """
        try:
            while self.step():
                pass
            self.Dstar = sp_multiply(self.Astar, self.Bstar)
            self.result = sp_add(self.Dstar, self.D)
        except CountOverflowError as exception:
            raise CountOverflowError(
                f'path counts overflow for 1-saddle `{self._label(self.one_saddles, exception.row)}`: {exception}',
                self._label(self.one_saddles, exception.row),
                None,
            ) from exception

        LOGGER.info('counted paths in %d iterations: %d connected saddle pairs', self.iterations, self.result.nnz)

        return self.result

    def counts(self) -> PathCounts:
        """Return the nonzero path counts keyed by ``(1-saddle, 2-saddle)`` labels."""
        result = self.result if self.result is not None else self.solve()
        return {
            (int(self.one_saddles[row]), int(self.two_saddles[column])): count
            for (row, column), count in result.items()
        }

    @staticmethod
    def _label(labels: numpy.ndarray, position: int | None) -> int | None:
        return None if position is None else int(labels[position])


def count_paths(minor: DagMinor) -> PathCounts:
    """Return the number of gradient paths between every connected pair of 1-saddle and 2-saddle of a minor."""
    return PathCountingState.from_minor(minor).counts()


def count_paths_by_traversal(minor: DagMinor) -> PathCounts:
    """Return the same path counts as :func:`count_paths` using a memoised depth-first traversal of the minor.

    :raises GradientCycleError: if the minor has a cycle.
    :raises CountOverflowError: if a count exceeds the signed 64-bit range.
    """
    adjacency = minor.adjacency()
    two_saddles = set(minor.two_saddles.tolist())
    reached: dict[int, dict[int, int]] = {}
    in_progress: set[int] = set()

    for source in minor.one_saddles.tolist():
        stack = [(source, False)]
        while stack:
            node, expanded = stack.pop()

            if node in reached:
                continue

            if node in two_saddles:
                reached[node] = {node: 1}
                continue

            if expanded:
                totals: dict[int, int] = {}
                for target, multiplicity in adjacency.get(node, []):
                    for two_saddle, count in reached[target].items():
                        totals[two_saddle] = totals.get(two_saddle, 0) + multiplicity * count
                reached[node] = totals
                in_progress.discard(node)
                continue

            if node in in_progress:
                raise GradientCycleError(f'minor node `{node}` lies on a cycle.')

            in_progress.add(node)
            stack.append((node, True))
            stack.extend((target, False) for target, _ in adjacency.get(node, []) if target not in reached)

    counts = {}
    for source in minor.one_saddles.tolist():
        for two_saddle, count in sorted(reached[source].items()):
            if count > INT64_MAX:
                raise CountOverflowError(
                    f'path count `{count}` between `{source}` and `{two_saddle}` exceeds the signed 64-bit range.',
                    source,
                    two_saddle,
                )
            counts[(source, two_saddle)] = count

    LOGGER.info('counted paths by traversal: %d connected saddle pairs', len(counts))

    return counts
