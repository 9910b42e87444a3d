"""Degree of parallelism shared by all data-parallel passes.

Work is split into fixed-size chunks whose boundaries do not depend on the number of threads, and results are always
combined in chunk order. The thread count therefore only changes how fast a pass runs, never what it returns.
"""
from __future__ import annotations

import contextlib
import logging
import os
import threading
import typing as t
from concurrent.futures import ThreadPoolExecutor

__all__ = ('chunk_bounds', 'get_num_threads', 'num_threads', 'parallel_map', 'set_num_threads')

LOGGER = logging.getLogger(__name__)

T = t.TypeVar('T')
R = t.TypeVar('R')

_state = threading.local()
_default_threads: int | None = None


def get_num_threads() -> int:
    """Return the maximum number of worker threads used by parallel passes."""
    override = getattr(_state, 'threads', None)
    if override is not None:
        return override
    if _default_threads is not None:
        return _default_threads
    return os.cpu_count() or 1


def set_num_threads(threads: int | None) -> None:
    """Set the process-wide maximum number of worker threads, ``None`` restores the hardware default."""
    global _default_threads  # noqa: PLW0603
    if threads is not None and threads < 1:
        raise ValueError(f'`{threads}` is not a valid number of threads: need at least 1.')
    _default_threads = threads


@contextlib.contextmanager
def num_threads(threads: int | None) -> t.Iterator[None]:
    """Context manager to cap the number of worker threads for the current thread only."""
    if threads is not None and threads < 1:
        raise ValueError(f'`{threads}` is not a valid number of threads: need at least 1.')
    previous = getattr(_state, 'threads', None)
    _state.threads = threads
    try:
        yield
    finally:
        _state.threads = previous


def chunk_bounds(length: int, chunk_size: int) -> list[tuple[int, int]]:
    """Return the ``(start, stop)`` bounds of consecutive chunks covering ``range(length)``."""
    if chunk_size < 1:
        raise ValueError(f'`{chunk_size}` is not a valid chunk size: need at least 1.')
    return [(start, min(start + chunk_size, length)) for start in range(0, length, chunk_size)]


def parallel_map(function: t.Callable[[T], R], items: t.Sequence[T]) -> list[R]:
    """Apply ``function`` to every item and return the results in item order.

    Items are processed by a thread pool of at most :func:`get_num_threads` workers; a single item or a single thread
    runs inline.
    """
    workers = min(get_num_threads(), len(items))

    if workers <= 1:
        return [function(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, items))
