"""Worker-pool helper gated by HALLFORGE_THREADS (0 or unset = sequential).

Tasks must be module-level functions with picklable arguments; results are
returned in submission order so parallel runs are bit-identical to
sequential ones.
"""

from __future__ import annotations

import os


def worker_count():
    try:
        return max(0, int(os.environ.get("HALLFORGE_THREADS", "0")))
    except ValueError:
        return 0


def pmap(fn, items):
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
