"""Fan-out of independent search branches over worker processes."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def _run_chunk(args: tuple) -> list[list]:
    fn, shared, items = args
    return [fn(*shared, *item) for item in items]


def run_branches(fn: Callable[..., list], shared: tuple, items: Sequence[tuple], jobs: int = 1) -> list:
    """Concatenate ``fn(*shared, *item)`` over items, in item order.

    Items are dealt round-robin to ``jobs`` worker processes; each chunk ships
    ``shared`` once.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        per_item = _run_chunk((fn, shared, items))
    else:
        n_chunks = min(len(items), jobs * 4)
        chunks = [items[i::n_chunks] for i in range(n_chunks)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_chunk, [(fn, shared, c) for c in chunks]))
        per_item = [None] * len(items)
        for i, part in enumerate(parts):
            per_item[i::n_chunks] = part
    return [x for res in per_item for x in res]
