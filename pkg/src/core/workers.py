"""Worker pool for grid evaluation.
"""
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from tqdm import tqdm

T = TypeVar("T")
R = TypeVar("R")

WORKERS_ENV = "EVANESCENT_WORKERS"


def default_worker_count() -> int:
    raw = os.getenv(WORKERS_ENV, "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        print(f"⚠️  ignoring {WORKERS_ENV}={raw!r}: not an integer", file=sys.stderr)
        return 1
    return max(n, 1)


def map_ordered(
    fn: Callable[[T], R],
    items: Iterable[T],
    workers: int = 1,
    desc: Optional[str] = None,
    quiet: bool = True,
) -> List[R]:
    """Apply fn to every item; results come back in input order whatever the worker count."""
    items = list(items)
    # disable=None also silences the bar when stderr is not a terminal
    bar = tqdm(total=len(items), desc=desc, disable=True if quiet else None, file=sys.stderr, leave=False)
    try:
        if workers <= 1:
            results = []
            for item in items:
                results.append(fn(item))
                bar.update(1)
            return results
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = []
            for value in executor.map(fn, items):
                results.append(value)
                bar.update(1)
            return results
    finally:
        bar.close()
