"""Spectrum verification by two independent exact routes, and spectrum search.

Route one (:func:`is_spectrum`): every nonzero difference of the candidate
spectrum is a zero of the transform of 1_E, plus the cardinality count.

Route two (:func:`speccond_check`): the transform of 1_Lambda vanishes on the
nonzero support of the autocorrelation of E, plus the same count.  This is the
exact form of "|FT(1_E)|^2 + Lambda tiles at level |E|^2".
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ._parallel import run_branches
from .fourier import _zero_set_cached, autocorrelation, vanishing_flags, zero_set
from .groups import PointSet, _check_same, difference_set, lex_sorted_masks, mask_from_flags
from .tiling import translation_classes

__all__ = [
    "orthogonal",
    "is_spectrum",
    "speccond_check",
    "enumerate_spectra",
]


_FULL_ZERO_SET_LIMIT = 4096


@lru_cache(maxsize=1 << 16)
def _nonzero_differences(S: PointSet) -> int:
    return difference_set(S, S).mask & ~1


@lru_cache(maxsize=1 << 16)
def _correlation_support(E: PointSet) -> int:
    return autocorrelation(E).support().mask & ~1


def orthogonal(E: PointSet, spectrum: PointSet) -> bool:
    """Are the characters indexed by ``spectrum`` pairwise orthogonal on E?"""
    _check_same(E.group, spectrum.group)
    if not E.mask:
        raise ValueError("E must be nonempty")
    return _nonzero_differences(spectrum) & ~_zero_set_cached(E).mask == 0


def is_spectrum(E: PointSet, spectrum: PointSet) -> bool:
    """Orthogonality plus ``|spectrum| == |E|``, which forces a basis."""
    _check_same(E.group, spectrum.group)
    if not E.mask:
        raise ValueError("E must be nonempty")
    if spectrum.mask.bit_count() != E.mask.bit_count():
        return False
    return _nonzero_differences(spectrum) & ~_zero_set_cached(E).mask == 0


def speccond_check(E: PointSet, spectrum: PointSet) -> bool:
    """Independent route: FT(1_spectrum) vanishes where E - E is nonzero."""
    _check_same(E.group, spectrum.group)
    if spectrum.mask.bit_count() != E.mask.bit_count():
        return False
    if not E.mask:
        return True
    need = _correlation_support(E)
    if not need:
        return True
    G = E.group
    if G.order <= _FULL_ZERO_SET_LIMIT:
        # the zero set of the candidate is cached and reused across many E
        return need & ~_zero_set_cached(spectrum).mask == 0
    points = np.asarray([i for i in range(G.order) if need >> i & 1], dtype=np.int64)
    return bool(np.all(vanishing_flags(spectrum, points)))


def _neighbours(E: PointSet) -> list[int]:
    G = E.group
    Z = zero_set(E)
    out = []
    if not Z:
        return [0] * G.order
    plus = G.sum_table(np.arange(G.order), Z.index_array())
    for v in range(G.order):
        flags = np.zeros(G.order, dtype=bool)
        flags[plus[v]] = True
        out.append(mask_from_flags(flags))
    return out


def _clique_search(nbrs: list[int], need: int, clique: int, size: int, cand: int) -> list[int]:
    """Cliques of ``need`` vertices extending ``clique`` using vertices of ``cand``."""
    if size == need:
        return [clique]
    found = []
    stack = [[clique, size, cand]]
    while stack:
        frame = stack[-1]
        cur, sz, cnd = frame
        if cnd.bit_count() < need - sz:
            stack.pop()
            continue
        low = cnd & -cnd
        rest = cnd ^ low
        frame[2] = rest
        nxt = cur | low
        if sz + 1 == need:
            found.append(nxt)
            continue
        v = low.bit_length() - 1
        stack.append([nxt, sz + 1, rest & nbrs[v]])
    return found


def enumerate_spectra(E: PointSet, canonicalize: bool = False, jobs: int = 1) -> list[PointSet]:
    """All spectra of E: |E|-cliques of the graph with edges in zero_set(E)."""
    if not E:
        raise ValueError("E must be nonempty")
    G = E.group
    need = len(E)
    nbrs = _neighbours(E)
    n = G.order
    work = []
    for v in range(n):
        higher = nbrs[v] >> (v + 1) << (v + 1)
        if need == 1 or higher.bit_count() >= need - 1:
            work.append((1 << v, 1, higher))
    masks = lex_sorted_masks(run_branches(_clique_search, (nbrs, need), work, jobs), G.order)
    found = [PointSet(G, m) for m in masks]
    if canonicalize:
        return translation_classes(found)
    return found
