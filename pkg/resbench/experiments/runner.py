import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

logger = logging.getLogger(__name__)

J = TypeVar("J")
R = TypeVar("R")


def default_workers() -> int:
    return os.cpu_count() or 1


def execute(fn: Callable[[J], R], jobs: Sequence[J], workers: Optional[int] = None) -> List[R]:
    """Apply `fn` to every job; results come back in job order whatever the worker count."""
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    workers = min(workers, len(jobs))
    logger.debug(f"dispatching {len(jobs)} jobs to {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=1))
