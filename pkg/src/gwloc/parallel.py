"""Deterministic parallel map with an exact sum.

Items are split into contiguous chunks, evaluated in worker processes and
the partial sums added in chunk order.  Rational addition is exact, so the
result is independent of ``workers``; each worker keeps its own integral
cache and ships new entries back for merging.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Sequence

from .integrals import IntegralCache, default_cache


def available_workers() -> int:
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:  # pragma: no cover - non-Linux
        return os.cpu_count() or 1


def _run_chunk(func, chunk, args, seed_entries):
    cache = IntegralCache()
    cache.merge(seed_entries)
    values = [func(item, *args, cache=cache) for item in chunk]
    return values, cache.take_fresh(), cache.hits


def parallel_map(
    func: Callable,
    items: Sequence,
    args: tuple = (),
    workers: int = 1,
    cache: IntegralCache | None = None,
) -> list[Fraction]:
    """``[func(item, *args, cache=...) for item in items]`` across processes."""
    cache = default_cache if cache is None else cache
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [func(item, *args, cache=cache) for item in items]
    nchunks = min(len(items), workers * 4)
    size = -(-len(items) // nchunks)
    chunks = [items[i : i + size] for i in range(0, len(items), size)]
    seed = dict(cache.entries)
    out: list[Fraction] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_chunk, func, c, args, seed) for c in chunks]
        for fut in futures:
            values, fresh, hits = fut.result()
            out.extend(values)
            cache.merge(fresh)
            cache.hits += hits
    return out


def parallel_sum(func, items, args=(), workers=1, cache=None) -> Fraction:
    return sum(parallel_map(func, items, args, workers, cache), start=Fraction(0))
