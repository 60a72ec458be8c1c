"""Finite abelian product groups Z_{A1} x ... x Z_{AN}, their elements and subsets.

Elements are identified with mixed-radix indices (first coordinate most
significant), so lexicographic order on coordinates coincides with index
order.  A :class:`PointSet` is stored as a Python int bitmask over those
indices, which keeps deduplication, hashing and set algebra exact and cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

__all__ = [
    "Group",
    "Element",
    "PointSet",
    "Embedding",
    "GroupMismatch",
    "make_group",
    "add",
    "sub",
    "difference_set",
    "generated_closure",
    "subgroup_generated",
    "mask_from_indices",
    "indices_from_mask",
]


class GroupMismatch(ValueError):
    """Raised when operands live in different groups."""


@dataclass(frozen=True)
class Group:
    """Z_{A1} x ... x Z_{AN}, compared by its ordered moduli."""

    moduli: tuple[int, ...]
    _hash: int = field(init=False, repr=False, compare=False)
    _order: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        moduli = tuple(self.moduli)
        if not moduli:
            raise ValueError("a group needs at least one modulus")
        for m in moduli:
            if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
                raise TypeError(f"modulus {m!r} is not an integer")
            if m < 1:
                raise ValueError(f"modulus {m} must be >= 1")
        moduli = tuple(int(m) for m in moduli)
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "_hash", hash(moduli))
        object.__setattr__(self, "_order", math.prod(moduli))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "Z_" + "xZ_".join(str(m) for m in self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.moduli)

    @property
    def order(self) -> int:
        return self._order

    @property
    def strides(self) -> tuple[int, ...]:
        return _strides(self.moduli)

    @property
    def identity(self) -> Element:
        return Element(self, (0,) * self.rank)

    def __call__(self, *coords) -> Element:
        """``G(3, 1)`` or ``G((3, 1))`` builds a reduced element."""
        if len(coords) == 1 and not isinstance(coords[0], (int, np.integer)):
            coords = tuple(coords[0])
        return Element(self, coords)

    def index(self, coords: Sequence[int]) -> int:
        return sum((c % m) * s for c, m, s in zip(coords, self.moduli, self.strides))

    def coords(self, index: int) -> tuple[int, ...]:
        out = []
        for m, s in zip(self.moduli, self.strides):
            out.append((index // s) % m)
        return tuple(out)

    def element_at(self, index: int) -> Element:
        return Element(self, self.coords(index))

    def elements(self) -> Iterator[Element]:
        for i in range(self.order):
            yield self.element_at(i)

    def full_set(self) -> PointSet:
        return PointSet(self, (1 << self.order) - 1)

    def empty_set(self) -> PointSet:
        return PointSet(self, 0)

    # vectorised index arithmetic, used by the engines

    def coord_table(self) -> np.ndarray:
        """Coordinates of every element, shape (order, rank), index order."""
        return _coord_table(self.moduli)

    def index_of(self, coords: np.ndarray) -> np.ndarray:
        """Indices of (already or not yet reduced) coordinate rows."""
        mod = np.asarray(self.moduli, dtype=np.int64)
        return (np.mod(coords, mod) * np.asarray(self.strides, dtype=np.int64)).sum(axis=-1)

    def sum_table(self, left: Sequence[int], right: Sequence[int], sign: int = 1) -> np.ndarray:
        """Index table ``T[i, j] = left[i] + sign * right[j]``."""
        table = self.coord_table()
        lc = table[np.asarray(left, dtype=np.int64)]
        rc = table[np.asarray(right, dtype=np.int64)]
        return self.index_of(lc[:, None, :] + sign * rc[None, :, :])


@lru_cache(maxsize=None)
def _strides(moduli: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    acc = 1
    for m in reversed(moduli):
        out.append(acc)
        acc *= m
    return tuple(reversed(out))


@lru_cache(maxsize=64)
def _coord_table(moduli: tuple[int, ...]) -> np.ndarray:
    grids = np.meshgrid(*[np.arange(m, dtype=np.int64) for m in moduli], indexing="ij")
    table = np.stack([g.ravel() for g in grids], axis=1)
    table.setflags(write=False)
    return table


def make_group(moduli: Iterable[int]) -> Group:
    return Group(tuple(moduli))


@dataclass(frozen=True)
class Element:
    """A residue vector, reduced at construction."""

    group: Group
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.group.rank:
            raise ValueError(
                f"element {coords} has {len(coords)} coordinates, group {self.group} needs {self.group.rank}"
            )
        object.__setattr__(self, "coords", tuple(c % m for c, m in zip(coords, self.group.moduli)))

    def __repr__(self) -> str:
        return f"({','.join(map(str, self.coords))})"

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    @property
    def index(self) -> int:
        return self.group.index(self.coords)

    def is_identity(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: Element) -> Element:
        return add(self, other)

    def __sub__(self, other: Element) -> Element:
        return sub(self, other)

    def __neg__(self) -> Element:
        return Element(self.group, tuple(-c for c in self.coords))

    def __lt__(self, other: Element) -> bool:
        return self.coords < other.coords


def _check_same(g: Group, h: Group) -> None:
    if g is not h and g != h:
        raise GroupMismatch(f"operands live in different groups: {g} vs {h}")


def add(x: Element, y: Element) -> Element:
    _check_same(x.group, y.group)
    return Element(x.group, tuple(a + b for a, b in zip(x.coords, y.coords)))


def sub(x: Element, y: Element) -> Element:
    _check_same(x.group, y.group)
    return Element(x.group, tuple(a - b for a, b in zip(x.coords, y.coords)))


def mask_from_indices(indices: Iterable[int] | np.ndarray, size: int) -> int:
    flags = np.zeros(size, dtype=bool)
    idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64)
    flags[idx] = True
    return mask_from_flags(flags)


def mask_from_flags(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags.astype(bool), bitorder="little").tobytes(), "little")


def lex_sorted_masks(masks: Iterable[int], n: int) -> list[int]:
    """Sort masks of one popcount into lexicographic order of their index tuples."""
    # with equal sizes the least element of the symmetric difference decides,
    # and that is the top differing bit once the n-bit mask is reversed
    width = f"0{n}b"
    return sorted(masks, key=lambda m: int(format(m, width)[::-1], 2), reverse=True)


def indices_from_mask(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


PointLike = Union[Element, Sequence[int], int]


@dataclass(frozen=True)
class PointSet:
    """A duplicate-free subset of a group, iterated in lexicographic order."""

    group: Group
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.group.order:
            raise ValueError("mask has bits outside the group")

    @classmethod
    def of(cls, group: Group, points: Iterable[PointLike]) -> PointSet:
        mask = 0
        for p in points:
            if isinstance(p, Element):
                _check_same(group, p.group)
                mask |= 1 << p.index
            elif isinstance(p, (int, np.integer)):
                if group.rank != 1:
                    raise ValueError(f"bare integer {p} needs a rank-1 group, got {group}")
                mask |= 1 << (int(p) % group.moduli[0])
            else:
                mask |= 1 << Element(group, tuple(p)).index
        return cls(group, mask)

    @classmethod
    def from_indices(cls, group: Group, indices: Iterable[int] | np.ndarray) -> PointSet:
        return cls(group, mask_from_indices(indices, group.order))

    def __len__(self) -> int:
        return self.mask.bit_count()

    @property
    def size(self) -> int:
        return len(self)

    def __bool__(self) -> bool:
        return self.mask != 0

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(indices_from_mask(self.mask))

    def index_array(self) -> np.ndarray:
        flags = np.unpackbits(
            np.frombuffer(self.mask.to_bytes((self.group.order + 7) // 8, "little"), dtype=np.uint8),
            bitorder="little",
        )[: self.group.order]
        return np.flatnonzero(flags)

    def __iter__(self) -> Iterator[Element]:
        for i in indices_from_mask(self.mask):
            yield self.group.element_at(i)

    def __contains__(self, p: PointLike) -> bool:
        if isinstance(p, Element):
            if p.group != self.group:
                return False
            i = p.index
        elif isinstance(p, (int, np.integer)):
            if self.group.rank != 1:
                raise TypeError(f"bare integer {p} needs a rank-1 group, got {self.group}")
            i = int(p) % self.group.order
        else:
            i = Element(self.group, tuple(p)).index
        return bool(self.mask >> i & 1)

    def __repr__(self) -> str:
        return "{" + ", ".join(repr(e) for e in self) + "}"

    def sort_key(self) -> tuple[int, ...]:
        return self.indices

    def __lt__(self, other: PointSet) -> bool:
        return self.sort_key() < other.sort_key()

    def coords(self) -> list[tuple[int, ...]]:
        return [e.coords for e in self]

    def to_text(self) -> str:
        """Set grammar: ``;`` between tuples, ``,`` inside a tuple."""
        return ";".join(",".join(map(str, c)) for c in self.coords())

    def _other(self, other: PointSet) -> int:
        _check_same(self.group, other.group)
        return other.mask

    def __or__(self, other: PointSet) -> PointSet:
        return PointSet(self.group, self.mask | self._other(other))

    def __and__(self, other: PointSet) -> PointSet:
        return PointSet(self.group, self.mask & self._other(other))

    def __sub__(self, other: PointSet) -> PointSet:
        return PointSet(self.group, self.mask & ~self._other(other))

    def issubset(self, other: PointSet) -> bool:
        return self.mask & ~self._other(other) == 0

    def translate(self, g: PointLike) -> PointSet:
        if not isinstance(g, Element):
            g = Element(self.group, (g,) if isinstance(g, (int, np.integer)) else tuple(g))
        _check_same(self.group, g.group)
        if not self:
            return self
        idx = self.group.sum_table(self.index_array(), [g.index])[:, 0]
        return PointSet.from_indices(self.group, idx)

    def negate(self) -> PointSet:
        if not self:
            return self
        idx = self.group.sum_table([0], self.index_array(), sign=-1)[0]
        return PointSet.from_indices(self.group, idx)

    def canonical_translate(self) -> PointSet:
        """Least translate containing the identity, in canonical order."""
        if not self:
            return self
        idx = self.index_array()
        table = self.group.sum_table(idx, idx, sign=-1)  # column j is self - idx[j]
        best = None
        for j in range(len(idx)):
            cand = tuple(sorted(table[:, j].tolist()))
            if best is None or cand < best:
                best = cand
        return PointSet.from_indices(self.group, best)


def difference_set(S: PointSet, R: PointSet) -> PointSet:
    """{s - r : s in S, r in R}."""
    _check_same(S.group, R.group)
    if not S or not R:
        return S.group.empty_set()
    table = S.group.sum_table(S.index_array(), R.index_array(), sign=-1)
    return PointSet.from_indices(S.group, table.ravel())


def generated_closure(E: PointSet) -> PointSet:
    """The subgroup generated by E, as a subset of E's group."""
    if not E:
        raise ValueError("cannot take the subgroup generated by an empty set")
    G = E.group
    gens = E.index_array()
    reached = 1  # identity
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        nxt = np.unique(G.sum_table(frontier, gens).ravel())
        fresh = [i for i in nxt.tolist() if not reached >> i & 1]
        for i in fresh:
            reached |= 1 << i
        frontier = np.asarray(fresh, dtype=np.int64)
    return PointSet(G, reached)


@dataclass(frozen=True)
class Embedding:
    """Coordinatewise injective homomorphism ``n -> (n_j * steps_j)`` into ``target``."""

    source: Group
    target: Group
    steps: tuple[int, ...]

    def __call__(self, x: PointLike) -> Element:
        if not isinstance(x, Element):
            x = Element(self.source, (x,) if isinstance(x, (int, np.integer)) else tuple(x))
        _check_same(self.source, x.group)
        return Element(self.target, tuple(n * s for n, s in zip(x.coords, self.steps)))

    def image(self) -> PointSet:
        return PointSet.of(self.target, (self(e) for e in self.source.elements()))

    def preimage(self, y: Element) -> Element:
        """Inverse on the image; raises if ``y`` is outside it."""
        _check_same(self.target, y.group)
        out = []
        for c, s, m, a in zip(y.coords, self.steps, self.source.moduli, self.target.moduli):
            for n in range(m):
                if (n * s - c) % a == 0:
                    out.append(n)
                    break
            else:
                raise ValueError(f"{y} is not in the image of the embedding")
        return Element(self.source, tuple(out))


def subgroup_generated(E: PointSet, steps: Sequence[int] | None = None) -> tuple[Group, Embedding]:
    """Present <E> as Z_{A1'} x ... x Z_{AN'} with a coordinatewise embedding.

    Coordinate j of the subgroup is generated by ``steps[j]`` (default: the
    gcd of A_j with every j-th coordinate of E), so A_j' = A_j / gcd(A_j, step).
    Raises ``ValueError`` when <E> is not the product of its coordinate
    projections, or when ``steps`` do not generate those projections.
    """
    if not E:
        raise ValueError("cannot take the subgroup generated by an empty set")
    G = E.group
    coords = E.coords()
    proj_gcd = [math.gcd(A, *(c[j] for c in coords)) for j, A in enumerate(G.moduli)]
    if steps is None:
        steps = proj_gcd
    steps = tuple(int(s) for s in steps)
    if len(steps) != G.rank:
        raise ValueError(f"need {G.rank} steps, got {len(steps)}")
    for j, (s, A) in enumerate(zip(steps, G.moduli)):
        if math.gcd(s, A) != proj_gcd[j]:
            raise ValueError(f"step {s} does not generate coordinate {j} of <E>")
    sub_group = Group(tuple(A // math.gcd(A, s) for A, s in zip(G.moduli, steps)))
    emb = Embedding(sub_group, G, steps)
    if emb.image() != generated_closure(E):
        raise ValueError("<E> is not of product form")
    return sub_group, emb
