"""Tests for the :mod:`parallel_msc.saddles.counting` module."""
import collections

import numpy
import pytest
from parallel_msc.common.exceptions import CountOverflowError, GradientCycleError
from parallel_msc.common.types import SuccessorKind
from parallel_msc.gradient import assign_gradient, extract_critical_cells
from parallel_msc.saddles import (
    DagMinor,
    PathCountingState,
    build_minor,
    count_paths,
    count_paths_by_traversal,
    mark_reachable,
    successors,
)


@pytest.fixture
def merge_split_minor():
    """Return a minor where one 1-saddle splits, merges at a junction, splits again and merges at one 2-saddle."""
    return DagMinor.from_edges(
        [(1, 10, 1), (1, 11, 1), (10, 12, 1), (11, 12, 1), (12, 13, 1), (12, 14, 1), (13, 20, 1), (14, 20, 1)],
        one_saddles=[1],
        junctions=[10, 11, 12, 13, 14],
        two_saddles=[20],
    )


def enumerate_paths(edges, one_saddles, two_saddles):
    """Return the path counts by listing every path of the edge list explicitly."""
    adjacency = collections.defaultdict(list)
    for source, target, multiplicity in edges:
        adjacency[source].append((target, multiplicity))

    counts = collections.Counter()

    def walk(node, source, weight):
        if node in two_saddles:
            counts[(source, node)] += weight
            return
        for target, multiplicity in adjacency[node]:
            walk(target, source, weight * multiplicity)

    for source in one_saddles:
        walk(source, source, 1)

    return dict(counts)


def random_minor(seed):
    """Return the edges and nodes of a random minor with junctions in topological order."""
    rng = numpy.random.default_rng(seed)
    one_saddles = list(range(rng.integers(1, 5)))
    junctions = list(range(100, 100 + rng.integers(0, 10)))
    two_saddles = list(range(200, 200 + rng.integers(1, 5)))

    edges = []
    for position, source in enumerate(one_saddles + junctions):
        later = junctions[max(position - len(one_saddles) + 1, 0) :] + two_saddles
        for target in rng.choice(later, size=min(rng.integers(0, 5), len(later)), replace=False).tolist():
            edges.append((source, target, int(rng.integers(1, 4))))

    return edges, one_saddles, junctions, two_saddles


def count_gradient_paths(gradient, one_saddles):
    """Return the path counts by a memoised traversal of the unreduced saddle DAG."""
    memo = {}

    def reach(edge):
        if edge not in memo:
            totals = collections.Counter()
            for kind, cell in successors(edge, gradient):
                if kind is SuccessorKind.TERMINAL_2SADDLE:
                    totals[cell] += 1
                else:
                    totals.update(reach(cell))
            memo[edge] = totals
        return memo[edge]

    return {(source, two_saddle): count for source in one_saddles for two_saddle, count in reach(source).items()}


def test_merge_split(merge_split_minor):
    assert count_paths(merge_split_minor) == {(1, 20): 4}
    assert count_paths_by_traversal(merge_split_minor) == {(1, 20): 4}


def test_state_iterations(merge_split_minor):
    """The frontier advances one junction-to-junction edge per step."""
    state = PathCountingState.from_minor(merge_split_minor)

    assert state.A.shape == (1, 5)
    assert state.D.nnz == 0
    assert state.step()
    assert state.step()
    assert not state.step()
    assert state.iterations == 3

    state.solve()
    assert state.Dstar.to_dense().tolist() == [[4]]
    assert state.result.to_dense().tolist() == [[4]]


def test_direct_edges():
    minor = DagMinor.from_edges([(1, 20, 2), (1, 10, 1), (10, 20, 3)], [1], [10], [20])
    assert count_paths(minor) == {(1, 20): 5}
    assert count_paths_by_traversal(minor) == {(1, 20): 5}


def test_unconnected():
    minor = DagMinor.from_edges([(1, 20, 1)], [1, 2], [], [20, 21])
    assert count_paths(minor) == {(1, 20): 1}
    assert count_paths_by_traversal(minor) == {(1, 20): 1}


@pytest.mark.parametrize('seed', range(200))
def test_random_minors(seed):
    edges, one_saddles, junctions, two_saddles = random_minor(seed)
    minor = DagMinor.from_edges(edges, one_saddles, junctions, two_saddles)
    expected = enumerate_paths(edges, one_saddles, set(two_saddles))

    assert count_paths(minor) == expected
    assert count_paths_by_traversal(minor) == expected


def test_cycle():
    minor = DagMinor.from_edges([(1, 10, 1), (10, 11, 1), (11, 10, 1), (11, 20, 1)], [1], [10, 11], [20])

    with pytest.raises(GradientCycleError):
        count_paths(minor)

    with pytest.raises(GradientCycleError, match=r'lies on a cycle'):
        count_paths_by_traversal(minor)


def test_overflow():
    minor = DagMinor.from_edges([(1, 10, 2**62), (10, 20, 4)], [1], [10], [20])

    with pytest.raises(CountOverflowError) as exception:
        count_paths(minor)
    assert exception.value.row == 1

    with pytest.raises(CountOverflowError) as exception:
        count_paths_by_traversal(minor)
    assert (exception.value.row, exception.value.column) == (1, 20)


@pytest.mark.parametrize(('dims', 'seed'), (((8, 8, 8), 0), ((10, 9, 8), 1), ((12, 12, 12), 2)))
def test_random_fields(generate_random_field, dims, seed):
    gradient = assign_gradient(generate_random_field(dims, seed))
    one_saddles = extract_critical_cells(gradient).one_saddles
    minor = build_minor(mark_reachable(gradient, one_saddles))
    expected = count_gradient_paths(gradient, one_saddles.tolist())

    assert count_paths(minor) == expected
    assert count_paths_by_traversal(minor) == expected


def test_smooth_field_multiplicities(generate_field):
    """Counts on a smooth field agree between both methods and are all positive."""
    gradient = assign_gradient(generate_field('random-smooth', (16, 16, 16), seed=3))
    minor = build_minor(mark_reachable(gradient, extract_critical_cells(gradient).one_saddles))
    counts = count_paths(minor)

    assert counts == count_paths_by_traversal(minor)
    assert all(count >= 1 for count in counts.values())


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(50))
def test_random_field_sweep(generate_random_field, seed):
    """Matrix counts match a traversal of the unreduced saddle DAG on grids from 8 to 16 vertices a side."""
    size = 8 + seed % 9
    levels = 16 if seed % 2 else None
    gradient = assign_gradient(generate_random_field((size, size, size), seed, levels))
    one_saddles = extract_critical_cells(gradient).one_saddles
    minor = build_minor(mark_reachable(gradient, one_saddles))

    assert count_paths(minor) == count_gradient_paths(gradient, one_saddles.tolist())
