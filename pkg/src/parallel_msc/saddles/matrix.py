"""Sparse matrices of nonnegative 64-bit path counts.

Products and sums are computed by ``scipy.sparse`` in ``int64``. Wraparound is detected by repeating the operation in
``float64``: any entry whose estimate comes close to the signed 64-bit limit is recomputed exactly with Python integers.
"""
from __future__ import annotations

import dataclasses
import logging
import typing as t

import numpy
from scipy import sparse

from parallel_msc.common.exceptions import CountOverflowError
from parallel_msc.primitives import INT64_MAX, chunk_bounds, parallel_map

__all__ = ('SparseCountMatrix', 'from_edges', 'sp_add', 'sp_multiply')

LOGGER = logging.getLogger(__name__)

ROW_CHUNK_SIZE = 1024
SUSPICIOUS_COUNT = float(2**62)


@dataclasses.dataclass(frozen=True, eq=False)
class SparseCountMatrix:
    """Compressed sparse row matrix of path counts, kept without stored zeros and with sorted column indices."""

    data: sparse.csr_array

    def __post_init__(self):
        matrix = sparse.csr_array(self.data, dtype=numpy.int64, copy=True)
        matrix.sum_duplicates()
        matrix.eliminate_zeros()
        matrix.sort_indices()

        if matrix.nnz and matrix.data.min() < 0:
            raise ValueError('path count matrices cannot hold negative entries.')

        object.__setattr__(self, 'data', matrix)

    @classmethod
    def zeros(cls, rows: int, columns: int) -> SparseCountMatrix:
        return cls(sparse.csr_array((rows, columns), dtype=numpy.int64))

    @classmethod
    def identity(cls, size: int) -> SparseCountMatrix:
        return cls(sparse.identity(size, dtype=numpy.int64, format='csr'))

    @classmethod
    def from_dense(cls, dense: t.Any) -> SparseCountMatrix:
        return cls(sparse.csr_array(numpy.asarray(dense, dtype=numpy.int64)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def nnz(self) -> int:
        return int(self.data.nnz)

    def to_dense(self) -> numpy.ndarray:
        return self.data.toarray()

    def items(self) -> t.Iterator[tuple[tuple[int, int], int]]:
        """Yield ``((row, column), count)`` for every stored entry in row-major order."""
        coo = self.data.tocoo()
        for row, column, count in zip(coo.row, coo.col, coo.data):
            yield (int(row), int(column)), int(count)

    def __eq__(self, other: t.Any) -> bool:
        if not isinstance(other, SparseCountMatrix):
            return NotImplemented
        return self.shape == other.shape and (self.data != other.data).nnz == 0

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: SparseCountMatrix) -> SparseCountMatrix:
        return sp_add(self, other)

    def __matmul__(self, other: SparseCountMatrix) -> SparseCountMatrix:
        return sp_multiply(self, other)

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(shape={self.shape}, nnz={self.nnz})'


def _raise_if_overflowing(candidates: t.Iterable[tuple[int, int]], exact: t.Callable[[int, int], int]) -> None:
    for row, column in candidates:
        value = exact(row, column)
        if value > INT64_MAX:
            raise CountOverflowError(
                f'path count `{value}` at entry `({row}, {column})` exceeds the signed 64-bit range.', row, column
            )


def _suspicious(estimate: sparse.csr_array) -> list[tuple[int, int]]:
    coo = sparse.coo_array(estimate)
    selected = coo.data >= SUSPICIOUS_COUNT
    return list(zip(coo.row[selected].tolist(), coo.col[selected].tolist()))


def sp_multiply(left: SparseCountMatrix, right: SparseCountMatrix) -> SparseCountMatrix:
    """Return the matrix product, computed in parallel over blocks of rows of ``left``.

    :raises ValueError: if the inner dimensions differ.
    :raises CountOverflowError: if an entry of the product exceeds the signed 64-bit range.
    """
    if left.shape[1] != right.shape[0]:
        raise ValueError(f'cannot multiply matrices of shapes `{left.shape}` and `{right.shape}`.')

    rows, columns = left.shape[0], right.shape[1]
    if left.nnz == 0 or right.nnz == 0:
        return SparseCountMatrix.zeros(rows, columns)

    estimate = left.data.astype(numpy.float64) @ right.data.astype(numpy.float64)
    suspicious = _suspicious(estimate)

    if suspicious:
        right_columns = right.data.tocsc()

        def exact(row: int, column: int) -> int:
            lhs = left.data[[row], :].tocoo()
            rhs = right_columns[:, [column]].tocoo()
            counts = dict(zip(rhs.row.tolist(), rhs.data.tolist()))
            return sum(count * counts.get(inner, 0) for inner, count in zip(lhs.col.tolist(), lhs.data.tolist()))

        _raise_if_overflowing(suspicious, exact)

    blocks = parallel_map(
        lambda bound: left.data[bound[0] : bound[1]] @ right.data, chunk_bounds(rows, ROW_CHUNK_SIZE)
    )
    product = sparse.vstack(blocks, format='csr') if len(blocks) > 1 else blocks[0]

    return SparseCountMatrix(product)


def sp_add(left: SparseCountMatrix, right: SparseCountMatrix) -> SparseCountMatrix:
    """Return the entrywise sum.

    :raises ValueError: if the shapes differ.
    :raises CountOverflowError: if an entry of the sum exceeds the signed 64-bit range.
    """
    if left.shape != right.shape:
        raise ValueError(f'cannot add matrices of shapes `{left.shape}` and `{right.shape}`.')

    estimate = left.data.astype(numpy.float64) + right.data.astype(numpy.float64)
    _raise_if_overflowing(
        _suspicious(estimate), lambda row, column: int(left.data[row, column]) + int(right.data[row, column])
    )

    return SparseCountMatrix(left.data + right.data)


def from_edges(
    sources: numpy.ndarray,
    targets: numpy.ndarray,
    multiplicities: numpy.ndarray,
    row_labels: numpy.ndarray,
    column_labels: numpy.ndarray,
) -> SparseCountMatrix:
    """Return the matrix with entry ``(r, c)`` holding the summed multiplicity of the edges from ``r`` to ``c``.

    Rows and columns are the positions of the edge endpoints in the sorted ``row_labels`` and ``column_labels``.

    :raises ValueError: if an endpoint is missing from its labels.
    """
    sources, targets = numpy.asarray(sources, dtype=numpy.int64), numpy.asarray(targets, dtype=numpy.int64)
    multiplicities = numpy.asarray(multiplicities, dtype=numpy.int64)
    row_labels, column_labels = numpy.asarray(row_labels), numpy.asarray(column_labels)
    rows = numpy.searchsorted(row_labels, sources)
    columns = numpy.searchsorted(column_labels, targets)

    if (
        numpy.any(rows >= row_labels.size)
        or numpy.any(columns >= column_labels.size)
        or numpy.any(row_labels[numpy.minimum(rows, max(row_labels.size - 1, 0))] != sources)
        or numpy.any(column_labels[numpy.minimum(columns, max(column_labels.size - 1, 0))] != targets)
    ):
        raise ValueError('edge endpoints must be contained in the row and column labels.')

    totals: dict[tuple[int, int], int] = {}
    for row, column, multiplicity in zip(rows.tolist(), columns.tolist(), multiplicities.tolist()):
        totals[(row, column)] = totals.get((row, column), 0) + multiplicity
    _raise_if_overflowing(totals, lambda row, column: totals[(row, column)])

    shape = (row_labels.size, column_labels.size)
    return SparseCountMatrix(sparse.csr_array((multiplicities, (rows, columns)), shape=shape, dtype=numpy.int64))
