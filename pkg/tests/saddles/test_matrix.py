"""Tests for the :mod:`parallel_msc.saddles.matrix` module."""
import numpy
import pytest
from parallel_msc.common.exceptions import CountOverflowError
from parallel_msc.primitives import INT64_MAX, num_threads
from parallel_msc.saddles import SparseCountMatrix, from_edges, sp_add, sp_multiply


def random_dense(rng, shape, density=0.3, high=5):
    return numpy.where(rng.random(shape) < density, rng.integers(1, high, size=shape), 0)


def test_zeros():
    matrix = SparseCountMatrix.zeros(2, 3)
    assert matrix.shape == (2, 3)
    assert matrix.nnz == 0
    assert list(matrix.items()) == []


def test_identity():
    matrix = SparseCountMatrix.identity(3)
    assert numpy.array_equal(matrix.to_dense(), numpy.eye(3, dtype=numpy.int64))


def test_canonical():
    """Stored zeros are dropped and entries iterate in row-major order."""
    matrix = SparseCountMatrix.from_dense([[0, 2], [3, 0]])
    assert matrix.nnz == 2
    assert list(matrix.items()) == [((0, 1), 2), ((1, 0), 3)]
    assert matrix == SparseCountMatrix.from_dense([[0, 2], [3, 0]])
    assert matrix != SparseCountMatrix.from_dense([[0, 2], [3, 1]])
    assert matrix != SparseCountMatrix.from_dense([[0, 2, 0], [3, 0, 0]])


def test_negative_entries():
    with pytest.raises(ValueError, match=r'negative entries'):
        SparseCountMatrix.from_dense([[1, -1]])


@pytest.mark.parametrize('seed', range(5))
def test_multiply_matches_dense(seed):
    rng = numpy.random.default_rng(seed)
    left, right = random_dense(rng, (7, 5)), random_dense(rng, (5, 4))
    product = sp_multiply(SparseCountMatrix.from_dense(left), SparseCountMatrix.from_dense(right))
    assert numpy.array_equal(product.to_dense(), left @ right)


@pytest.mark.parametrize('seed', range(5))
def test_add_matches_dense(seed):
    rng = numpy.random.default_rng(seed)
    left, right = random_dense(rng, (6, 6)), random_dense(rng, (6, 6))
    total = SparseCountMatrix.from_dense(left) + SparseCountMatrix.from_dense(right)
    assert numpy.array_equal(total.to_dense(), left + right)


def test_multiply_row_blocks():
    """Products with more rows than a single block are independent of the number of threads."""
    rng = numpy.random.default_rng(0)
    left, right = random_dense(rng, (3000, 20), density=0.05), random_dense(rng, (20, 10))
    expected = left @ right

    for threads in (1, 3):
        with num_threads(threads):
            product = SparseCountMatrix.from_dense(left) @ SparseCountMatrix.from_dense(right)
        assert numpy.array_equal(product.to_dense(), expected)


def test_multiply_empty():
    product = SparseCountMatrix.zeros(2, 3) @ SparseCountMatrix.from_dense([[1], [1], [1]])
    assert product.shape == (2, 1)
    assert product.nnz == 0


def test_shape_mismatch():
    with pytest.raises(ValueError, match=r'cannot multiply'):
        sp_multiply(SparseCountMatrix.zeros(2, 3), SparseCountMatrix.zeros(2, 3))
    with pytest.raises(ValueError, match=r'cannot add'):
        sp_add(SparseCountMatrix.zeros(2, 3), SparseCountMatrix.zeros(3, 2))


def test_multiply_overflow():
    left = SparseCountMatrix.from_dense([[1, 0], [0, 2**62]])
    right = SparseCountMatrix.from_dense([[1, 0], [0, 2]])

    with pytest.raises(CountOverflowError) as exception:
        left @ right

    assert (exception.value.row, exception.value.column) == (1, 1)


def test_multiply_near_limit():
    """Products close to the limit but within range are exact."""
    left = SparseCountMatrix.from_dense([[2**62, 2**62 - 1]])
    right = SparseCountMatrix.from_dense([[1], [1]])
    assert (left @ right).to_dense().tolist() == [[INT64_MAX]]


def test_add_overflow():
    with pytest.raises(CountOverflowError) as exception:
        SparseCountMatrix.from_dense([[0, INT64_MAX]]) + SparseCountMatrix.from_dense([[0, 1]])

    assert (exception.value.row, exception.value.column) == (0, 1)


def test_from_edges():
    matrix = from_edges([10, 10, 12], [5, 5, 7], [1, 2, 4], row_labels=[10, 12], column_labels=[5, 6, 7])
    assert matrix.to_dense().tolist() == [[3, 0, 0], [0, 0, 4]]


def test_from_edges_empty():
    matrix = from_edges([], [], [], row_labels=[], column_labels=[1])
    assert matrix.shape == (0, 1)


@pytest.mark.parametrize(
    ('sources', 'targets'),
    (
        ([11], [5]),
        ([10], [4]),
        ([13], [5]),
        ([10], [8]),
    ),
)
def test_from_edges_missing_labels(sources, targets):
    with pytest.raises(ValueError, match=r'must be contained'):
        from_edges(sources, targets, [1], row_labels=[10, 12], column_labels=[5, 7])


def test_from_edges_overflow():
    with pytest.raises(CountOverflowError):
        from_edges([1, 1], [2, 2], [INT64_MAX, 1], row_labels=[1], column_labels=[2])
