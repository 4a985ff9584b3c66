from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from tqdm import tqdm

from .config import get_default_threads
from .log import create_logger

T = TypeVar("T")
R = TypeVar("R")

logger = create_logger(__name__)


def parallel_map(
    fn: Callable[[T], R],
    items: Iterable[T],
    threads: int | None = None,
    desc: str | None = None,
    progress: bool = False,
) -> list[R]:
    """
    Apply fn to every item, optionally on a thread pool.

    Results always come back in input order, so reductions over them are deterministic
    regardless of the number of workers.

    Args:
        fn: Function applied to each item
        items: Work items
        threads: Worker count (default: GQT_THREADS, else 1)
        desc: Progress bar label
        progress: Whether to show a tqdm progress bar on stderr

    Returns:
        list: fn(item) for each item, in order
    """
    work = list(items)
    if threads is None:
        threads = get_default_threads()

    if threads <= 1 or len(work) <= 1:
        return [fn(item) for item in tqdm(work, desc=desc, disable=not progress)]

    results: list[R] = []
    with ThreadPoolExecutor(max_workers=threads) as executor:
        futures = [executor.submit(fn, item) for item in work]
        for future in tqdm(futures, desc=desc, disable=not progress):
            try:
                results.append(future.result())
            except Exception as e:
                logger.error(f"Worker failed in parallel section '{desc}': {e}")
                raise
    return results
