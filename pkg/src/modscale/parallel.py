"""Ordered thread-pool map used by the cell engine.

Work is split into chunks whose boundaries do not depend on the worker count,
and results are reassembled in submission order, so every reduction sees the
same operands in the same order whatever ``MODSCALE_THREADS`` says.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "MODSCALE_THREADS"


def worker_count() -> int:
    """Workers allowed by ``MODSCALE_THREADS`` (default: CPU count)."""
    raw = os.environ.get(ENV_VAR, "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw!r}") from None
        if n < 1:
            raise ValueError(f"{ENV_VAR} must be a positive integer, got {n}")
        return n
    return os.cpu_count() or 1


def ordered_map(fn, items, max_workers=None):
    """``[fn(x) for x in items]`` evaluated on up to ``worker_count()`` threads."""
    items = list(items)
    n = min(worker_count(), len(items))
    if max_workers is not None:
        n = min(n, max(1, max_workers))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
