from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from django.conf import settings

T = TypeVar('T')
R = TypeVar('R')


def worker_count(requested: Optional[int] = None) -> int:
    workers = requested if requested is not None else settings.LPSENS_THREADS
    return max(1, int(workers))


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """Apply ``fn`` to every item, concurrently when more than one worker is configured.

    Results keep the order of ``items`` so reductions over them stay deterministic.
    """
    items = list(items)
    workers = worker_count(workers)
    if workers == 1 or len(items) < 2:
        return [fn(item) for item in items]

    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as executor:
        return list(executor.map(fn, items))
