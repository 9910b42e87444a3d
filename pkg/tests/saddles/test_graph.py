"""Tests for the :mod:`parallel_msc.saddles.graph` module."""
import collections

import numpy
import pytest
from parallel_msc.common.types import SuccessorKind
from parallel_msc.gradient import GradientField, assign_gradient, extract_critical_cells
from parallel_msc.grid import GridDims
from parallel_msc.saddles import mark_reachable, successor_table, successors


@pytest.fixture
def dims():
    return GridDims(2, 2, 2)


def serial_bfs(gradient, one_saddles):
    """Return the edges and 2-saddles reachable from the 1-saddles, visiting one node at a time."""
    edges, two_saddles = set(one_saddles), set()
    queue = collections.deque(one_saddles)
    while queue:
        edge = queue.popleft()
        for kind, cell in successors(edge, gradient):
            if kind is SuccessorKind.TERMINAL_2SADDLE:
                two_saddles.add(cell)
            elif cell not in edges:
                edges.add(cell)
                queue.append(cell)
    return edges, two_saddles


def test_successors_terminal(dims):
    """Without pairs every cofacet quad of an edge is a terminal 2-saddle."""
    gradient = GradientField.from_pairs(dims, [])
    edge = dims.cell_id(1, 0, 0)
    assert successors(edge, gradient) == [
        (SuccessorKind.TERMINAL_2SADDLE, dims.cell_id(1, 1, 0)),
        (SuccessorKind.TERMINAL_2SADDLE, dims.cell_id(1, 0, 1)),
    ]


def test_successors_continue(dims):
    """A quad paired with another edge continues the path at that edge."""
    edge, other, quad = dims.cell_id(1, 0, 0), dims.cell_id(0, 1, 0), dims.cell_id(1, 1, 0)
    gradient = GradientField.from_pairs(dims, [(other, quad)])
    assert successors(edge, gradient) == [
        (SuccessorKind.EDGE, other),
        (SuccessorKind.TERMINAL_2SADDLE, dims.cell_id(1, 0, 1)),
    ]


def test_successors_ending(dims):
    """A quad paired with the edge itself or with a cube is no successor."""
    edge, quad, cube = dims.cell_id(1, 0, 0), dims.cell_id(1, 1, 0), dims.cell_id(1, 1, 1)
    expected = [(SuccessorKind.TERMINAL_2SADDLE, dims.cell_id(1, 0, 1))]

    assert successors(edge, GradientField.from_pairs(dims, [(edge, quad)])) == expected
    assert successors(edge, GradientField.from_pairs(dims, [(quad, cube)])) == expected


def test_successors_invalid(dims):
    with pytest.raises(ValueError, match=r'is not a valid edge'):
        successors(dims.cell_id(1, 1, 0), GradientField.from_pairs(dims, []))


def test_successor_table(dims):
    """Slots follow the even axes in increasing order, the negative step first."""
    edge, other, quad = dims.cell_id(1, 0, 0), dims.cell_id(0, 1, 0), dims.cell_id(1, 1, 0)
    gradient = GradientField.from_pairs(dims, [(other, quad)])
    targets, terminal = successor_table(gradient, numpy.array([edge]))

    assert targets.tolist() == [[-1, other, -1, dims.cell_id(1, 0, 1)]]
    assert terminal.tolist() == [[False, False, False, True]]


@pytest.mark.parametrize('seed', range(4))
def test_successor_table_matches_successors(generate_random_field, seed):
    gradient = assign_gradient(generate_random_field((5, 5, 4), seed))
    edges = gradient.dims.cells_of_dimension(1)
    targets, terminal = successor_table(gradient, edges)

    for row, edge in enumerate(edges.tolist()):
        expected = successors(edge, gradient)
        filled = targets[row] >= 0
        assert targets[row][filled].tolist() == [cell for _, cell in expected]
        assert terminal[row][filled].tolist() == [kind is SuccessorKind.TERMINAL_2SADDLE for kind, _ in expected]


@pytest.mark.parametrize('seed', range(4))
def test_mark_reachable_matches_serial_bfs(generate_random_field, seed):
    gradient = assign_gradient(generate_random_field((8, 7, 6), seed))
    one_saddles = extract_critical_cells(gradient).one_saddles
    marked = mark_reachable(gradient, one_saddles)
    edges, two_saddles = serial_bfs(gradient, one_saddles.tolist())

    assert set(marked.edges.tolist()) == edges
    assert set(marked.two_saddles.tolist()) == two_saddles
    assert marked.num_marked == len(edges) + len(two_saddles)
    assert numpy.array_equal(marked.sources, one_saddles)
    assert numpy.all(gradient.critical_mask[marked.two_saddles])


def test_mark_reachable_without_saddles(generate_field):
    gradient = assign_gradient(generate_field('ramp', (4, 4, 4)))
    marked = mark_reachable(gradient, numpy.zeros(0, dtype=numpy.int64))

    assert marked.num_marked == 0
    assert marked.rounds == 0
    assert marked.two_saddles.size == 0
