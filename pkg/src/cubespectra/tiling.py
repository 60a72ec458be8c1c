"""Packing/tiling verification and enumeration of tiling complements.

Verification sums translates with exact integer arithmetic.  Enumeration is an
exact-cover backtracking search over bitmasks: always cover the least
uncovered element, branching over every translate that covers it without
collision.  Each tiling is therefore produced exactly once.
"""

from __future__ import annotations

from typing import Union

import numpy as np

from ._parallel import run_branches
from .fourier import IntFunction
from .groups import PointSet, _check_same, lex_sorted_masks, mask_from_flags

__all__ = [
    "check_packing",
    "check_tiling",
    "coverage",
    "enumerate_tiling_complements",
    "translation_classes",
]

Tile = Union[PointSet, IntFunction]


def _as_function(f: Tile) -> IntFunction:
    return IntFunction.indicator(f) if isinstance(f, PointSet) else f


def coverage(f: Tile, T: PointSet) -> np.ndarray:
    """``x -> sum_{t in T} f(x - t)`` as an integer array in index order."""
    f = _as_function(f)
    _check_same(f.group, T.group)
    G = f.group
    small = all(abs(v) < 1 << 40 for v in f.values)
    values = np.asarray(f.values, dtype=np.int64 if small else object)
    total = np.zeros(G.order, dtype=values.dtype)
    if not T:
        return total
    # column j holds the indices x - t_j for every x
    shifted = G.sum_table(np.arange(G.order), T.index_array(), sign=-1)
    for j in range(shifted.shape[1]):
        total += values[shifted[:, j]]
    return total


def check_packing(f: Tile, T: PointSet, level: int = 1) -> bool:
    """Does ``f + T`` pack the group at ``level``?"""
    f = _as_function(f)
    if any(v < 0 for v in f.values):
        raise ValueError("packing needs a nonnegative function")
    return bool(np.all(coverage(f, T) <= level))


def check_tiling(E: Tile, T: PointSet, level: int = 1) -> bool:
    """Does ``E + T`` tile the group at ``level``?"""
    f = _as_function(E)
    if any(v < 0 for v in f.values):
        raise ValueError("tiling needs a nonnegative function")
    if level < 0:
        raise ValueError("level must be nonnegative")
    return bool(np.all(coverage(f, T) == level))


def _tables(E: PointSet) -> tuple[list[int], list[list[int]]]:
    G = E.group
    n = G.order
    everything = np.arange(n)
    eidx = E.index_array()
    # shifts[t] = mask of E + t
    plus = G.sum_table(everything, eidx)
    shifts = []
    for t in range(n):
        flags = np.zeros(n, dtype=bool)
        flags[plus[t]] = True
        shifts.append(mask_from_flags(flags))
    # coverers[x] = translates t with x in E + t, ascending
    minus = G.sum_table(everything, eidx, sign=-1)
    coverers = [sorted(set(row)) for row in minus.tolist()]
    return shifts, coverers


def _cover_search(full: int, shifts: list[int], coverers: list[list[int]], covered: int, chosen: int) -> list[int]:
    """All completions of a partial cover, as translate masks."""

    def options(cov: int) -> list[int]:
        free = ~cov & (cov + 1)
        x = free.bit_length() - 1
        return [t for t in coverers[x] if not shifts[t] & cov]

    if covered == full:
        return [chosen]
    found = []
    stack = [(covered, chosen, iter(options(covered)))]
    while stack:
        cov, tmask, it = stack[-1]
        t = next(it, None)
        if t is None:
            stack.pop()
            continue
        new = cov | shifts[t]
        new_t = tmask | (1 << t)
        if new == full:
            found.append(new_t)
        else:
            stack.append((new, new_t, iter(options(new))))
    return found


def enumerate_tiling_complements(E: PointSet, canonicalize: bool = False, jobs: int = 1) -> list[PointSet]:
    """Every T with ``E + T`` a level-1 tiling, in canonical order.

    With ``canonicalize`` only one representative (the least translate
    containing 0) per translation class is returned.
    """
    if not E:
        raise ValueError("tile must be nonempty")
    G = E.group
    if G.order % len(E):
        return []
    shifts, coverers = _tables(E)
    full = (1 << G.order) - 1
    # identity is the first uncovered element; its coverers split the search
    top = coverers[0]
    work = [(shifts[t], 1 << t) for t in top]
    masks = lex_sorted_masks(run_branches(_cover_search, (full, shifts, coverers), work, jobs), G.order)
    found = [PointSet(G, m) for m in masks]
    if canonicalize:
        return translation_classes(found)
    return found


def translation_classes(sets: list[PointSet]) -> list[PointSet]:
    """Canonical representatives, one per translation class, sorted."""
    reps = {S.canonical_translate() for S in sets}
    return sorted(reps, key=PointSet.sort_key)
