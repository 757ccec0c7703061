"""Thread-pool map helper.

Parallelism is capped by the HANKELBANDS_THREADS environment variable
(default 1, i.e. serial).  Results always come back in input order, so
callers stay deterministic regardless of the thread count.  LAPACK calls
release the GIL, which is where the speedup comes from.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("HANKELBANDS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def parallel_map(fn, items):
    """Map fn over items, in order, using at most HANKELBANDS_THREADS threads."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
