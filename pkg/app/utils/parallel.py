# app/utils/parallel.py
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from app.core.config import DEFAULT_JOBS

T = TypeVar("T")
R = TypeVar("R")

_MIN_CHUNK = 64


def ordered_map(fn: Callable[[Sequence[T]], List[R]], items: Sequence[T], jobs: int = DEFAULT_JOBS) -> List[R]:
    """
    Apply a chunk function over `items` and concatenate the results in input order,
    whatever the worker count.
    """
    if jobs <= 1 or len(items) < 2 * _MIN_CHUNK:
        return fn(items)
    size = max(_MIN_CHUNK, -(-len(items) // (jobs * 4)))
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    results: List[R] = []
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(fn, chunks):
            results.extend(part)
    return results
