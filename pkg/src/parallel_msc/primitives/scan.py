"""Prefix sum and stream compaction over chunked arrays.

Both primitives follow the classic two-level scheme: every chunk is reduced independently, the chunk totals are
scanned serially and the chunk-local scans are then shifted by their offsets. Stream compaction scatters kept elements
to the positions given by the exclusive scan of the keep indicator, which makes it stable.
"""
from __future__ import annotations

import logging
import typing as t

import numpy

from parallel_msc.common.exceptions import CountOverflowError

from .parallel import chunk_bounds, parallel_map

__all__ = ('DEFAULT_CHUNK_SIZE', 'INT64_MAX', 'prefix_sum', 'stream_compact')

LOGGER = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 1 << 16
INT64_MAX = int(numpy.iinfo(numpy.int64).max)


def _exact_sum(chunk: numpy.ndarray) -> int:
    """Return the sum of a chunk of nonnegative integers without wrapping around."""
    if chunk.size == 0:
        return 0
    if int(chunk.max()) * chunk.size <= INT64_MAX:
        return int(chunk.sum(dtype=numpy.int64))
    return int(chunk.astype(object).sum())


def prefix_sum(
    values: t.Sequence[int] | numpy.ndarray, chunk_size: int = DEFAULT_CHUNK_SIZE
) -> tuple[numpy.ndarray, int]:
    """Return the exclusive prefix sum of an array of nonnegative integers together with its total.

    :param values: one-dimensional array of nonnegative integers, booleans are counted as 0 and 1.
    :param chunk_size: number of elements scanned by a single task.
    :return: tuple of the ``int64`` array ``out`` with ``out[i] = sum(values[:i])`` and the total sum.
    :raises CountOverflowError: if the total does not fit in a signed 64-bit integer.
    """
    values = numpy.asarray(values).ravel()

    if values.size == 0:
        return numpy.zeros(0, dtype=numpy.int64), 0

    if values.dtype.kind not in 'biu':
        raise TypeError(f'`{values.dtype}` is not a valid dtype for a prefix sum: need integers or booleans.')

    if values.dtype.kind == 'i' and values.min() < 0:
        raise ValueError('prefix sum input contains negative values.')

    bounds = chunk_bounds(values.size, chunk_size)
    totals = parallel_map(lambda bound: _exact_sum(values[bound[0] : bound[1]]), bounds)
    total = sum(totals)

    if total > INT64_MAX:
        raise CountOverflowError(f'prefix sum total `{total}` exceeds the signed 64-bit range.')

    offsets = [0]
    for chunk_total in totals[:-1]:
        offsets.append(offsets[-1] + chunk_total)

    def scan_chunk(item: tuple[tuple[int, int], int]) -> numpy.ndarray:
        (start, stop), offset = item
        chunk = values[start:stop].astype(numpy.int64)
        return numpy.cumsum(chunk) - chunk + offset

    return numpy.concatenate(parallel_map(scan_chunk, list(zip(bounds, offsets)))), total


def stream_compact(
    values: t.Sequence[t.Any] | numpy.ndarray,
    keep: t.Callable[[numpy.ndarray], numpy.ndarray] | numpy.ndarray,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> numpy.ndarray:
    """Return the elements of ``values`` for which ``keep`` holds, in their original order.

    :param values: array whose first axis is compacted.
    :param keep: either a vectorized predicate mapping ``values`` to a boolean array or a boolean mask.
    :param chunk_size: number of elements scattered by a single task.
    """
    values = numpy.asarray(values)
    mask = keep(values) if callable(keep) else keep
    mask = numpy.asarray(mask, dtype=bool).ravel()

    if mask.size != values.shape[0]:
        raise ValueError(f'keep mask of length `{mask.size}` does not match `{values.shape[0]}` values.')

    offsets, total = prefix_sum(mask, chunk_size)
    result = numpy.empty((total, *values.shape[1:]), dtype=values.dtype)

    def scatter(bound: tuple[int, int]) -> None:
        start, stop = bound
        selected = mask[start:stop]
        result[offsets[start:stop][selected]] = values[start:stop][selected]

    parallel_map(scatter, chunk_bounds(values.shape[0], chunk_size))

    return result
