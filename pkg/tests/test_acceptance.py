"""Exit criteria.

Run with ``pytest tests/test_acceptance.py -v -s`` (or ``-m acceptance``); each
criterion prints one PASS/FAIL line, and the lines are repeated in the terminal
summary.  Counts and timings are printed alongside.
"""

import itertools
import math
import random
import time

import pytest

import oracles
from cubespectra.cubes import (
    Cube,
    DilatedCube,
    cube_zero_set,
    divisibility_check,
    dual_cube,
    reduce_dilated,
    unguarded_zero_formula,
    zero_formula_errata,
)
from cubespectra.fourier import autocorrelation, dft_indicator, zero_set
from cubespectra.groups import Group, PointSet, difference_set
from cubespectra.spectra import enumerate_spectra, is_spectrum, speccond_check
from cubespectra.tiling import check_tiling, enumerate_tiling_complements

pytestmark = pytest.mark.acceptance

RESULTS: list[str] = []


def report(number, title, ok, seconds, limit, detail=""):
    within = seconds < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"{status} criterion {number}: {title} [{seconds:.1f}s / {limit}s] {detail}".rstrip()
    RESULTS.append(line)
    print("\n" + line)
    assert ok, line
    assert within, line


def shapes(max_order, max_rank):
    """Ordered moduli tuples; unit moduli only in the first two ranks."""
    out = []
    for rank in range(1, max_rank + 1):
        low = 1 if rank <= 2 else 2
        for m in itertools.product(range(low, max_order + 1), repeat=rank):
            if math.prod(m) <= max_order:
                out.append(m)
    return out


def cubes_of(moduli):
    G = Group(moduli)
    return [Cube(G, e) for e in itertools.product(*(range(1, A + 1) for A in moduli))]


def as_sets(point_sets):
    return {frozenset(S.coords()) for S in point_sets}


def test_criterion_1_equivalence_sweep():
    start = time.perf_counter()
    checked = failures = 0
    for A in range(1, 7):
        for B in range(1, 7):
            for Q in cubes_of((A, B)):
                if not divisibility_check(Q):
                    continue
                checked += 1
                tilings = enumerate_tiling_complements(Q.as_point_set)
                spectra = enumerate_spectra(dual_cube(Q).as_point_set)
                if as_sets(tilings) != as_sets(spectra) or not tilings:
                    failures += 1
    report(1, "tiling complements of Q == spectra of Q*", failures == 0, time.perf_counter() - start, 60,
           f"cubes={checked} failures={failures}")


def test_criterion_2_divisibility_necessity():
    start = time.perf_counter()
    checked = failures = 0
    for m in shapes(24, 4):
        for Q in cubes_of(m):
            if divisibility_check(Q):
                continue
            checked += 1
            E = Q.as_point_set
            if enumerate_tiling_complements(E) or enumerate_spectra(E):
                failures += 1
    report(2, "non-divisible cubes have no tiling complement and no spectrum", failures == 0 and checked > 0,
           time.perf_counter() - start, 30, f"cubes={checked} failures={failures}")


def test_criterion_3_zero_set_formula():
    start = time.perf_counter()
    checked = failures = 0
    for m in shapes(144, 2):
        for Q in cubes_of(m):
            checked += 1
            if cube_zero_set(Q) != zero_set(Q.as_point_set):
                failures += 1
    G = Group((4, 2))
    Q = Cube(G, (2, 1))
    exact = zero_set(Q.as_point_set)
    literal = unguarded_zero_formula(Q)
    flags = zero_formula_errata(Q)
    witness_ok = (
        G(0, 1) in literal
        and G(0, 1) not in exact
        and literal != exact
        and any("0,1" in f for f in flags)
    )
    report(3, "corrected cube zero set == exact zero set; (0,1) erratum flagged",
           failures == 0 and witness_ok, time.perf_counter() - start, 60,
           f"cubes={checked} failures={failures} flags={len(flags)}")


def _route_disagreements(G):
    """Every pair (E, L) of subsets with E nonempty, both routes called directly.

    Pairs of unequal size are false for both routes by the cardinality check;
    they are counted but only a sample is evaluated.
    """
    by_size: dict[int, list[PointSet]] = {}
    for mask in range(1, 1 << G.order):
        by_size.setdefault(mask.bit_count(), []).append(PointSet(G, mask))
    pairs = bad = positives = 0
    for group in by_size.values():
        for E in group:
            for L in group:
                a = is_spectrum(E, L)
                pairs += 1
                positives += a
                if a != speccond_check(E, L):
                    bad += 1
    rng = random.Random(G.order)
    subsets = [S for group in by_size.values() for S in group]
    for _ in range(2000):
        E, L = rng.choice(subsets), rng.choice(subsets)
        if len(E) != len(L) and (is_spectrum(E, L) or speccond_check(E, L)):
            bad += 1
    return pairs, positives, bad


def _base_sets(rng, G, count=4):
    """A few dilated cubes (which have plenty of spectra) and a few random sets."""
    n = G.order
    out = []
    while len(out) < count:
        steps = tuple(rng.randrange(1, A + 1) for A in G.moduli)
        counts = tuple(rng.randint(1, A // math.gcd(A, s)) for A, s in zip(G.moduli, steps))
        if math.prod(counts) <= 8:
            out.append(DilatedCube(G, steps, counts).as_point_set)
    for _ in range(count):
        out.append(PointSet.from_indices(G, rng.sample(range(n), rng.randint(1, min(n, 8)))))
    return out


def _random_pair(rng, G, pool):
    """E is a translate of a pooled base set; spectra are translation invariant in E."""
    n = G.order
    if G not in pool:
        pool[G] = [(E, enumerate_spectra(E)) for E in _base_sets(rng, G)]
    base, spectra = rng.choice(pool[G])
    E = base.translate(G.element_at(rng.randrange(n)))
    roll = rng.random()
    if spectra and roll < 0.5:
        L = rng.choice(spectra).translate(G.element_at(rng.randrange(n)))
    elif spectra and roll < 0.75 and len(E) < n:
        # near miss: move one point of a true spectrum
        idx = rng.choice(spectra).indices
        out = rng.choice(idx)
        new = rng.choice([i for i in range(n) if i not in idx])
        L = PointSet.from_indices(G, [i for i in idx if i != out] + [new])
    else:
        L = PointSet.from_indices(G, rng.sample(range(n), len(E)))
    return E, L


def test_criterion_4_route_agreement():
    start = time.perf_counter()
    reps = [(1,), (2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (2, 4), (2, 2, 2), (9,), (3, 3),
            (10,), (11,), (12,), (2, 6), (3, 4)]
    pairs = positives = bad = 0
    for m in reps:
        p, pos, b = _route_disagreements(Group(m))
        pairs += p
        positives += pos
        bad += b
    rng = random.Random(48)
    groups = [Group(m) for m in shapes(48, 3) if 13 <= math.prod(m) <= 48]
    pool: dict = {}
    samples = random_bad = random_pos = 0
    while samples < 10_000:
        G = rng.choice(groups)
        E, L = _random_pair(rng, G, pool)
        a = is_spectrum(E, L)
        random_pos += a
        if a != speccond_check(E, L):
            random_bad += 1
        samples += 1
    ok = bad == 0 and random_bad == 0 and positives > 0 and random_pos > 0
    report(4, "is_spectrum <=> speccond_check", ok, time.perf_counter() - start, 120,
           f"exhaustive_pairs={pairs} (spectra={positives}) random={samples} (spectra={random_pos}) "
           f"disagreements={bad + random_bad}")


def test_criterion_5_dilated_cube_sweep():
    start = time.perf_counter()
    cases = failures = spectra_seen = 0
    for A in range(1, 13):
        for s in range(1, A + 1):
            Ap = A // math.gcd(A, s)
            for k in range(1, Ap + 1):
                cases += 1
                D = DilatedCube(Group((A,)), (s,), (k,))
                E = D.as_point_set.coords()
                brute_spec = oracles.brute_spectra((A,), E)
                brute_tile = oracles.brute_tilings((A,), E)
                if not (bool(brute_spec) == bool(brute_tile) == (Ap % k == 0)):
                    failures += 1
                    continue
                if not brute_spec:
                    continue
                red = reduce_dilated(D)
                target = Cube(red.group, (Ap // k,)).as_point_set
                for L in brute_spec:
                    spectra_seen += 1
                    image = red.restrict_characters(PointSet.of(D.group, L))
                    ok = (
                        len(image) == len(L)
                        and check_tiling(target, image)
                        and oracles.tiles(red.group.moduli, target.coords(), image.coords())
                    )
                    failures += not ok
    report(5, "s[k] spectral <=> tiles <=> k | A'; restricted spectra tile [A'/k]", failures == 0,
           time.perf_counter() - start, 60, f"cubes={cases} spectra={spectra_seen} failures={failures}")


def test_criterion_6_known_counts():
    start = time.perf_counter()
    rows = []
    for moduli, edges in [((4,), (2,)), ((2, 2), (2, 1)), ((8,), (4,))]:
        Q = oracles.cube(moduli, edges)
        dual = oracles.cube(moduli, tuple(A // a for A, a in zip(moduli, edges)))
        rows.append((moduli, edges, len(oracles.brute_tilings(moduli, Q)), len(oracles.brute_spectra(moduli, dual)),
                     len(oracles.brute_spectra(moduli, Q))))
    got = [(r[2], r[3]) for r in rows]
    expected = [(2, 2), (4, 4), (4, 4)]
    # the cube [4] itself has only two spectra; the four are spectra of its dual [2]
    own = [r[4] for r in rows]
    detail = " ".join(f"{r[1]}in{r[0]}: tilings={r[2]} dual_spectra={r[3]} own_spectra={r[4]}" for r in rows)
    report(6, "brute-force counts", got == expected and own == [2, 4, 2], time.perf_counter() - start, 60, detail)


def _invariant_parseval(rng):
    for _ in range(200):
        G = rng.choice(RANDOM_GROUPS)
        E = PointSet(G, rng.getrandbits(G.order) | 1)
        total = sum(abs(dft_indicator(E, x).value()) ** 2 for x in G.elements())
        if abs(total - G.order * len(E)) > 1e-9:
            return False
    return True


def _invariant_conjugate_symmetry(rng):
    for _ in range(300):
        G = rng.choice(RANDOM_GROUPS)
        E = PointSet(G, rng.getrandbits(G.order) | 1)
        Z = zero_set(E)
        if Z.negate() != Z or G.identity in Z:
            return False
        if autocorrelation(E).support() != difference_set(E, E):
            return False
    return True


def _invariant_tile_symmetry(rng):
    for m in [(4,), (6,), (8,), (2, 4), (3, 3), (12,), (2, 6), (4, 4)]:
        G = Group(m)
        for _ in range(8):
            E = PointSet(G, rng.getrandbits(G.order) | 1)
            for T in enumerate_tiling_complements(E):
                if not (check_tiling(T, E) and len(E) * len(T) == G.order):
                    return False
            T = PointSet(G, rng.getrandbits(G.order) | 1)
            if check_tiling(E, T) != check_tiling(T, E):
                return False
    return True


def _invariant_translation(rng):
    for _ in range(300):
        G = rng.choice(RANDOM_GROUPS)
        E = PointSet(G, rng.getrandbits(G.order) | 1)
        tilings = enumerate_tiling_complements(E)
        spectra = enumerate_spectra(E)
        T = rng.choice(tilings) if tilings else PointSet(G, rng.getrandbits(G.order))
        L = rng.choice(spectra) if spectra else PointSet.from_indices(G, rng.sample(range(G.order), len(E)))
        g = G.element_at(rng.randrange(G.order))
        h = G.element_at(rng.randrange(G.order))
        if check_tiling(E, T) != check_tiling(E, T.translate(g)):
            return False
        if not is_spectrum(E, L) == is_spectrum(E.translate(g), L) == is_spectrum(E, L.translate(h)):
            return False
    return True


def _invariant_dual_involution(_rng):
    for m in shapes(36, 3):
        for Q in cubes_of(m):
            if divisibility_check(Q) and dual_cube(dual_cube(Q)) != Q:
                return False
    return True


RANDOM_GROUPS = [Group(m) for m in [(4,), (6,), (8,), (12,), (2, 4), (3, 3), (2, 6), (4, 4), (2, 2, 3), (5, 3)]]


def test_criterion_7_invariant_suites():
    start = time.perf_counter()
    rng = random.Random(7)
    checks = {
        "parseval": _invariant_parseval,
        "conjugate_symmetry": _invariant_conjugate_symmetry,
        "tile_symmetry": _invariant_tile_symmetry,
        "translation": _invariant_translation,
        "dual_involution": _invariant_dual_involution,
    }
    outcome = {name: fn(rng) for name, fn in checks.items()}
    detail = " ".join(f"{k}={'ok' if v else 'broken'}" for k, v in outcome.items())
    report(7, "invariant suites", all(outcome.values()), time.perf_counter() - start, 120, detail)

