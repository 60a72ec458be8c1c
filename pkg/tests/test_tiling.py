import itertools
import math
import random

import pytest

import oracles
from cubespectra.fourier import IntFunction
from cubespectra.groups import Group, GroupMismatch, PointSet, make_group
from cubespectra.tiling import (
    check_packing,
    check_tiling,
    coverage,
    enumerate_tiling_complements,
    translation_classes,
)

Z4 = make_group([4])
Z6 = make_group([6])


def ps(G, pts):
    return PointSet.of(G, pts)


class TestPacking:
    def test_examples(self):
        f = IntFunction.indicator(ps(Z4, [0, 1]))
        assert check_packing(f, ps(Z4, [0, 2]), 1)
        assert not check_packing(f, ps(Z4, [0, 1]), 1)
        for L in range(3):
            assert check_packing(f, Z4.empty_set(), L)

    def test_weighted(self):
        f = IntFunction(Z4, (2, 1, 0, 0))
        assert coverage(f, ps(Z4, [0, 2])).tolist() == [2, 1, 2, 1]
        assert check_packing(f, ps(Z4, [0, 2]), 2)
        assert not check_packing(f, ps(Z4, [0, 2]), 1)
        # (2,1,0,0) + 1 translate by 1: (0,2,1,0) -> sum (2,3,1,0)
        assert not check_tiling(f, ps(Z4, [0, 1]), 3)
        assert check_tiling(IntFunction(Z4, (1, 1, 1, 1)), ps(Z4, [0, 1, 2]), 3)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            check_packing(IntFunction(Z4, (1, -1, 0, 0)), ps(Z4, [0]))


class TestCheckTiling:
    def test_examples(self):
        assert check_tiling(ps(Z4, [0, 1]), ps(Z4, [1, 3]))
        # oracle decides: |E||T| = 9 != 6
        assert oracles.tiles((6,), [(0,), (1,), (2,)], [(0,), (2,), (4,)]) is False
        assert not check_tiling(ps(Z6, [0, 1, 2]), ps(Z6, [0, 2, 4]))
        G = make_group([3, 2])
        assert check_tiling(G.full_set(), ps(G, [(0, 0)]))

    def test_levels(self):
        E = ps(Z6, [0, 1, 2])
        assert check_tiling(E, ps(Z6, [0, 1, 2, 3, 4, 5]), 3)
        assert not check_tiling(E, ps(Z6, [0, 3]), 2)

    def test_mismatch(self):
        with pytest.raises(GroupMismatch):
            check_tiling(ps(Z4, [0]), ps(Z6, [0]))


class TestEnumeration:
    def test_examples(self):
        assert enumerate_tiling_complements(ps(Z4, [0, 1])) == [ps(Z4, [0, 2]), ps(Z4, [1, 3])]
        assert enumerate_tiling_complements(ps(make_group([3]), [0, 1])) == []
        G = make_group([2, 2])
        assert len(enumerate_tiling_complements(ps(G, [(0, 0), (1, 0)]))) == 4

    def test_singleton_tile(self):
        G = make_group([3, 2])
        assert enumerate_tiling_complements(ps(G, [(0, 0)])) == [G.full_set()]

    def test_canonical(self):
        E = ps(make_group([8]), [0, 1])
        full = enumerate_tiling_complements(E)
        reps = enumerate_tiling_complements(E, canonicalize=True)
        assert reps == [ps(make_group([8]), [0, 2, 4, 6])]
        assert translation_classes(full) == reps
        assert all(r.group.identity in r for r in reps)

    def test_parallel_matches_serial(self):
        G = make_group([4, 4])
        E = ps(G, [(0, 0), (1, 0)])
        assert enumerate_tiling_complements(E, jobs=2) == enumerate_tiling_complements(E)

    def test_sorted(self):
        G = make_group([2, 6])
        out = enumerate_tiling_complements(ps(G, [(0, 0), (0, 1)]))
        assert out == sorted(out, key=PointSet.sort_key)


def corpus_up_to_16():
    groups = [Group(m) for m in [(2,), (3,), (4,), (5,), (6,), (8,), (2, 2), (2, 3), (2, 4), (3, 3), (9,), (10,), (12,), (2, 6), (4, 4), (2, 8), (2, 2, 2)]]
    rng = random.Random(5)
    out = []
    for G in groups:
        n = G.order
        for size in range(1, n + 1):
            if n % size:
                continue
            combos = list(itertools.combinations(range(n), size))
            rng.shuffle(combos)
            for c in combos[:6]:
                out.append(PointSet.from_indices(G, c))
    return out


@pytest.mark.parametrize("E", corpus_up_to_16(), ids=lambda E: f"{E.group}:{E.to_text()}")
def test_enumeration_is_exactly_the_brute_force_set(E):
    G = E.group
    found = enumerate_tiling_complements(E)
    moduli = G.moduli
    brute = {frozenset(T) for T in oracles.brute_tilings(moduli, E.coords())}
    assert {frozenset(T.coords()) for T in found} == brute
    for T in found:
        assert check_tiling(E, T)
        assert len(E) * len(T) == G.order
        assert check_tiling(T, E)  # symmetry at level 1
        for g in G.elements():
            assert check_tiling(E, T.translate(g))


def test_symmetry_and_translation_on_random_pairs():
    rng = random.Random(9)
    for _ in range(400):
        moduli = rng.choice([(4,), (6,), (8,), (2, 4), (3, 3), (12,), (2, 2, 3)])
        G = Group(moduli)
        E = PointSet(G, rng.getrandbits(G.order) | 1)
        T = PointSet(G, rng.getrandbits(G.order) | 1)
        verdict = check_tiling(E, T)
        assert verdict == oracles.tiles(moduli, E.coords(), T.coords())
        assert verdict == check_tiling(T, E)
        g = G.element_at(rng.randrange(G.order))
        assert verdict == check_tiling(E, T.translate(g))
        if verdict:
            assert len(E) * len(T) == G.order


def test_large_group_stays_fast():
    G = make_group([64, 64])
    E = ps(G, [(0, 0), (1, 0)])
    assert math.prod(G.moduli) == 4096
    T = ps(G, [(x, y) for x in range(0, 64, 2) for y in range(64)])
    assert check_tiling(E, T)
