"""
Parallel batch runner for independent instances
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import structlog

from trop_morse.core.config import settings

logger = structlog.get_logger()

ItemT = TypeVar("ItemT")
ResultT = TypeVar("ResultT")


def run_batch(
    func: Callable[[ItemT], ResultT], items: Iterable[ItemT], threads: Optional[int] = None
) -> List[ResultT]:
    """Apply ``func`` to every item; results come back in input order.

    Instances share no mutable state, so completion order never matters.
    ``threads`` defaults to TROP_MORSE_THREADS.
    """
    items = list(items)
    workers = max(1, min(threads or settings.threads, len(items) or 1))
    if workers == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(func, items))
    logger.debug("Batch finished", items=len(items), workers=workers)
    return results
