"""Exact Fourier transforms of indicator functions on finite abelian groups.

The transform value ``sum_{k in E} exp(-2 pi i <x, k>)`` is a sum of L-th roots
of unity (L the group exponent), kept as an integer exponent-count vector.  It
vanishes iff Phi_L divides the exponent polynomial, so zero tests reduce that
polynomial modulo the L-th cyclotomic polynomial with integer arithmetic.

Floating evaluation (:meth:`ExpSum.value`, :func:`dft_numeric`) is only a
cross-check.
"""

from __future__ import annotations

import cmath
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .groups import Element, Group, PointSet, _check_same, mask_from_flags

__all__ = [
    "ExpSum",
    "IntFunction",
    "cyclotomic_poly",
    "poly_divmod",
    "dft_indicator",
    "dft_numeric",
    "is_zero",
    "vanishing_flags",
    "zero_set",
    "autocorrelation",
]

# int64 products must stay below this; beyond it we switch to Python ints.
_INT64_BUDGET = 1 << 62


@dataclass(frozen=True)
class ExpSum:
    """``sum_r counts[r] * exp(-2 pi i r / order)``."""

    order: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if len(self.counts) != self.order:
            raise ValueError(f"need {self.order} counts, got {len(self.counts)}")
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))

    @classmethod
    def from_exponents(cls, order: int, exponents: Sequence[int]) -> ExpSum:
        counts = [0] * order
        for r in exponents:
            counts[r % order] += 1
        return cls(order, tuple(counts))

    def value(self) -> complex:
        L = self.order
        return sum(c * cmath.exp(-2j * cmath.pi * r / L) for r, c in enumerate(self.counts) if c)


@lru_cache(maxsize=None)
def cyclotomic_poly(L: int) -> tuple[int, ...]:
    """Coefficients of Phi_L, lowest degree first."""
    if L < 1:
        raise ValueError("L must be >= 1")
    num = [-1] + [0] * (L - 1) + [1]  # X^L - 1
    for d in range(1, L):
        if L % d == 0:
            num, rem = poly_divmod(num, cyclotomic_poly(d))
            if any(rem):
                raise ArithmeticError(f"Phi_{d} does not divide X^{L}-1")  # cannot happen
    return tuple(num)


def poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder of integer polynomials by a monic divisor."""
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    if not den or den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    dd = len(den) - 1
    if len(rem) <= dd:
        return [0], rem + [0] * (dd - len(rem))
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] -= c * den[j]
    return quot, rem[:dd]


def is_zero(s: ExpSum) -> bool:
    """Exact test that the represented sum of roots of unity is 0."""
    _, rem = poly_divmod(s.counts, cyclotomic_poly(s.order))
    return not any(rem)


@lru_cache(maxsize=128)
def _power_residues(L: int) -> tuple[tuple[int, ...], ...]:
    """Row r holds X^r mod Phi_L, for r < L."""
    phi = cyclotomic_poly(L)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(L):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:deg])]
    return tuple(rows)


# lru_cache is safe for concurrent readers; building the int64 matrix is guarded.
_matrix_lock = threading.Lock()
_matrix_cache: dict[int, tuple[np.ndarray, int]] = {}


def _reduction_matrix(L: int) -> tuple[np.ndarray, int]:
    with _matrix_lock:
        hit = _matrix_cache.get(L)
        if hit is None:
            rows = _power_residues(L)
            bound = max((abs(c) for row in rows for c in row), default=0)
            width = len(rows[0]) if rows else 0
            if bound < _INT64_BUDGET:
                mat = np.array(rows, dtype=np.int64).reshape(L, width)
            else:
                mat = np.array(rows, dtype=object).reshape(L, width)
            hit = (mat, bound)
            _matrix_cache[L] = hit
    return hit


def _exponent_weights(group: Group) -> np.ndarray:
    L = group.exponent
    return np.asarray([L // A for A in group.moduli], dtype=np.int64)


def dft_indicator(E: PointSet, x: Element) -> ExpSum:
    """Transform of the indicator of E at the character x, exactly."""
    _check_same(E.group, x.group)
    G = E.group
    L = G.exponent
    w = _exponent_weights(G)
    if not E:
        return ExpSum(L, (0,) * L)
    coords = G.coord_table()[E.index_array()]
    r = np.mod(coords @ (np.asarray(x.coords, dtype=np.int64) * w), L)
    return ExpSum(L, tuple(np.bincount(r, minlength=L).tolist()))


def dft_numeric(E: PointSet, x: Element) -> complex:
    """Floating oracle: direct evaluation of the product-group transform."""
    _check_same(E.group, x.group)
    total = 0j
    for k in E:
        phase = sum(xj * kj / A for xj, kj, A in zip(x.coords, k.coords, E.group.moduli))
        total += cmath.exp(-2j * cmath.pi * phase)
    return total


def vanishing_flags(E: PointSet, points: np.ndarray, chunk: int = 512) -> np.ndarray:
    """Boolean array: does the transform of 1_E vanish at each point index?

    Same algebra as :func:`is_zero`, batched: exponent counts are multiplied by
    the table of X^r mod Phi_L.
    """
    G = E.group
    points = np.asarray(points, dtype=np.int64)
    out = np.zeros(points.size, dtype=bool)
    if not E or not points.size:
        out[:] = not E
        return out
    L = G.exponent
    mat, bound = _reduction_matrix(L)
    size = len(E)
    wide = mat.dtype == object or bound * size >= _INT64_BUDGET
    if wide and mat.dtype != object:
        mat = mat.astype(object)
    table = G.coord_table()
    ek = table[E.index_array()] * _exponent_weights(G)  # (|E|, N)
    for lo in range(0, points.size, chunk):
        px = table[points[lo : lo + chunk]]
        r = np.mod(px @ ek.T, L)  # (n, |E|)
        n = r.shape[0]
        flat = (np.arange(n, dtype=np.int64)[:, None] * L + r).ravel()
        counts = np.bincount(flat, minlength=n * L).reshape(n, L)
        if wide:
            counts = counts.astype(object)
        rem = counts @ mat
        out[lo : lo + n] = ~np.any(rem != 0, axis=1) if rem.size else True
    return out


def zero_set(E: PointSet) -> PointSet:
    """Characters at which the transform of 1_E vanishes."""
    if not E:
        raise ValueError("zero set of an empty set is undefined")
    return _zero_set_cached(E)


@lru_cache(maxsize=1 << 16)
def _zero_set_cached(E: PointSet) -> PointSet:
    G = E.group
    flags = vanishing_flags(E, np.arange(G.order))
    return PointSet(G, mask_from_flags(flags))


@dataclass(frozen=True)
class IntFunction:
    """Integer-valued function on a group, values listed in index order."""

    group: Group
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.group.order:
            raise ValueError(f"need {self.group.order} values, got {len(self.values)}")
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @classmethod
    def indicator(cls, E: PointSet) -> IntFunction:
        return cls(E.group, tuple((E.mask >> i) & 1 for i in range(E.group.order)))

    def __call__(self, x: Element) -> int:
        _check_same(self.group, x.group)
        return self.values[x.index]

    def items(self) -> Iterator[tuple[Element, int]]:
        for i, v in enumerate(self.values):
            yield self.group.element_at(i), v

    def support(self) -> PointSet:
        return PointSet(self.group, mask_from_flags(np.asarray(self.values) != 0))

    def total(self) -> int:
        return sum(self.values)


def autocorrelation(E: PointSet) -> IntFunction:
    """``r(x) = #{(e, e') in E x E : e - e' = x}`` by direct pair counting."""
    if not E:
        raise ValueError("autocorrelation of an empty set is undefined")
    G = E.group
    idx = E.index_array()
    diffs = G.sum_table(idx, idx, sign=-1).ravel()
    return IntFunction(G, tuple(np.bincount(diffs, minlength=G.order).tolist()))
