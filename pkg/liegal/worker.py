"""
liegal.worker – Thread-pool partitioning of candidate ranges
============================================================

Enumerators hand over a function of a half-open index range and the total
count.  The range is cut into batches, the batches run on a
``ThreadPoolExecutor`` and the per-batch results are concatenated in range
order, so the output never depends on the number of workers.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, TypeVar

from liegal import config

log = logging.getLogger(__name__)

T = TypeVar("T")


def batch_ranges(total: int, batch_size: int) -> list[tuple[int, int]]:
    batch_size = max(1, batch_size)
    return [(start, min(start + batch_size, total)) for start in range(0, total, batch_size)]


def map_ranges(
    fn: Callable[[int, int], list[T]],
    total: int,
    *,
    workers: Optional[int] = None,
    batch_size: Optional[int] = None,
    label: str = "enumeration",
) -> list[T]:
    """Run ``fn(start, stop)`` over ``[0, total)`` and merge the results in order."""
    workers = config.WORKERS if workers is None else workers
    batch_size = config.BATCH_SIZE if batch_size is None else batch_size
    ranges = batch_ranges(total, batch_size)
    log.debug("%s: %d candidates in %d batches on %d worker(s)", label, total, len(ranges), workers)
    if workers <= 1 or len(ranges) <= 1:
        chunks = [fn(start, stop) for start, stop in ranges]
    else:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="liegal") as pool:
            futures = [pool.submit(fn, start, stop) for start, stop in ranges]
            for fut in futures:
                fut.add_done_callback(lambda f: _on_done(label, f))
            chunks = [fut.result() for fut in futures]
    return [item for chunk in chunks for item in chunk]


def _on_done(label: str, future) -> None:
    exc = future.exception()
    if exc:
        log.error("%s batch raised: %s", label, exc)
