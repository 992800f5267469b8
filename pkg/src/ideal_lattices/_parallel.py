from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def default_threads() -> int:
    return os.cpu_count() or 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int | None = 1) -> list[R]:
    """``[fn(x) for x in items]``, optionally spread over worker processes.

    Results come back in input order, so output never depends on ``threads``.
    ``fn`` must be picklable (a module-level function or ``functools.partial``).
    """
    items = list(items)
    n_workers = default_threads() if threads is None else threads
    if n_workers < 1:
        raise ValueError("threads must be >= 1")
    if n_workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * n_workers))
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
