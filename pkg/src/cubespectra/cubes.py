"""Cubes [a_1] x ... x [a_N], their duals, and the tiling/spectrum duality.

The duality being checked: when every a_j divides A_j, the tiling complements
of a cube are exactly the spectra of its dual cube (edges A_j / a_j), and
without divisibility the cube neither tiles nor is spectral.  Dilated cubes
s_1[k_1] x ... x s_N[k_N] reduce to plain cubes inside the subgroup they
generate.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from ._parallel import run_branches
from .fourier import zero_set
from .groups import Embedding, Group, PointSet, _check_same, mask_from_flags
from .report import VerificationReport
from .spectra import enumerate_spectra, is_spectrum
from .tiling import check_tiling, enumerate_tiling_complements

__all__ = [
    "Cube",
    "DilatedCube",
    "DualUndefined",
    "Reduction",
    "divisibility_check",
    "dual_cube",
    "cube_zero_set",
    "unguarded_zero_formula",
    "zero_formula_errata",
    "standard_spectrum",
    "verify_theorem_pair",
    "exhaustive_theorem_check",
    "theorem_sweep",
    "reduce_dilated",
    "corollary_check",
]


class DualUndefined(ValueError):
    """Some edge does not divide its modulus."""


@dataclass(frozen=True)
class Cube:
    group: Group
    edges: tuple[int, ...]

    def __post_init__(self) -> None:
        edges = tuple(int(a) for a in self.edges)
        if len(edges) != self.group.rank:
            raise ValueError(f"cube needs {self.group.rank} edges, got {len(edges)}")
        for a, A in zip(edges, self.group.moduli):
            if not 1 <= a <= A:
                raise ValueError(f"edge {a} must lie in 1..{A}")
        object.__setattr__(self, "edges", edges)

    @property
    def as_point_set(self) -> PointSet:
        return _cube_points(self.group, self.edges)

    @property
    def size(self) -> int:
        return math.prod(self.edges)

    def __repr__(self) -> str:
        return "x".join(f"[{a}]" for a in self.edges) + f" in {self.group}"


@lru_cache(maxsize=4096)
def _cube_points(group: Group, edges: tuple[int, ...]) -> PointSet:
    table = group.coord_table()
    flags = np.all(table < np.asarray(edges), axis=1)
    return PointSet(group, mask_from_flags(flags))


def _as_cube(group: Group, q: Cube | Sequence[int]) -> Cube:
    if isinstance(q, Cube):
        _check_same(group, q.group)
        return q
    return Cube(group, tuple(q))


def divisibility_check(Q: Cube) -> bool:
    return all(A % a == 0 for a, A in zip(Q.edges, Q.group.moduli))


def dual_cube(Q: Cube) -> Cube:
    for a, A in zip(Q.edges, Q.group.moduli):
        if A % a:
            raise DualUndefined(f"dual undefined: {a} does not divide {A}")
    return Cube(Q.group, tuple(A // a for a, A in zip(Q.edges, Q.group.moduli)))


def _zero_periods(Q: Cube) -> np.ndarray:
    return np.asarray([A // math.gcd(A, a) for a, A in zip(Q.edges, Q.group.moduli)], dtype=np.int64)


def cube_zero_set(Q: Cube) -> PointSet:
    """Closed form: some coordinate x_j is nonzero and a multiple of A_j/(A_j, a_j).

    The transform factors over coordinates, and the j-th factor vanishes
    exactly at such x_j; a zero coordinate contributes the factor a_j != 0.
    """
    table = Q.group.coord_table()
    flags = np.any((table != 0) & (table % _zero_periods(Q) == 0), axis=1)
    return PointSet(Q.group, mask_from_flags(flags))


def unguarded_zero_formula(Q: Cube) -> PointSet:
    """The formula without the per-coordinate guard: x != 0 and some period divides x_j.

    Kept to detect where it disagrees with the exact zero set.
    """
    table = Q.group.coord_table()
    flags = np.any(table % _zero_periods(Q) == 0, axis=1) & np.any(table != 0, axis=1)
    return PointSet(Q.group, mask_from_flags(flags))


def zero_formula_errata(Q: Cube) -> list[str]:
    """Flags for points the unguarded formula wrongly reports as zeros."""
    extra = unguarded_zero_formula(Q) - zero_set(Q.as_point_set)
    missing = zero_set(Q.as_point_set) - unguarded_zero_formula(Q)
    flags = []
    if extra:
        flags.append(f"unguarded-zero-formula: nonzero transform at {extra.to_text()}")
    if missing:
        flags.append(f"unguarded-zero-formula: misses zeros at {missing.to_text()}")
    return flags


def standard_spectrum(Q: Cube) -> PointSet:
    """The lattice {x : (A_j / a_j) | x_j for all j}."""
    if not divisibility_check(Q):
        raise DualUndefined("standard spectrum needs every edge to divide its modulus")
    steps = np.asarray([A // a for a, A in zip(Q.edges, Q.group.moduli)], dtype=np.int64)
    flags = np.all(Q.group.coord_table() % steps == 0, axis=1)
    return PointSet(Q.group, mask_from_flags(flags))


def verify_theorem_pair(Q: Cube, spectrum: PointSet) -> VerificationReport:
    """Is ``spectrum`` a tiling complement of Q, and a spectrum of the dual?"""
    start = time.perf_counter()
    _check_same(Q.group, spectrum.group)
    dual = dual_cube(Q)
    tiles = check_tiling(Q.as_point_set, spectrum, 1)
    spec = is_spectrum(dual.as_point_set, spectrum)
    return VerificationReport(
        command="verify-theorem",
        inputs={"group": list(Q.group.moduli), "cube": list(Q.edges), "translates": spectrum.to_text()},
        verdict=tiles == spec,
        verdicts={
            "tiling": tiles,
            "spectrum_of_dual": spec,
            "equivalent": tiles == spec,
            "dual_cube": list(dual.edges),
        },
        timing_ms=(time.perf_counter() - start) * 1e3,
    )


def exhaustive_theorem_check(
    G: Group, Q: Cube | Sequence[int], jobs: int = 1, with_witnesses: bool = True
) -> VerificationReport:
    """Compare all tiling complements of Q with all spectra of its dual.

    Without divisibility both the tiling complements and the spectra of Q
    itself must be empty.
    """
    start = time.perf_counter()
    Q = _as_cube(G, Q)
    E = Q.as_point_set
    tilings = enumerate_tiling_complements(E, jobs=jobs)
    divisible = divisibility_check(Q)
    verdicts: dict = {"divisible": divisible}
    if divisible:
        dual = dual_cube(Q)
        spectra = enumerate_spectra(dual.as_point_set, jobs=jobs)
        ok = tilings == spectra
        verdicts["dual_cube"] = list(dual.edges)
        verdicts["spectra_of"] = "dual"
        # |Q| * prod A_j/(A_j, a_j) = |G| for spectral cubes
        verdicts["packing_equality"] = Q.size * int(np.prod(_zero_periods(Q))) == G.order
        ok = ok and verdicts["packing_equality"]
    else:
        spectra = enumerate_spectra(E, jobs=jobs)
        ok = not tilings and not spectra
        verdicts["dual_cube"] = None
        verdicts["spectra_of"] = "cube"
    verdicts["tiling_count"] = len(tilings)
    verdicts["spectra_count"] = len(spectra)
    verdicts["equal"] = tilings == spectra
    return VerificationReport(
        command="verify-theorem",
        inputs={"group": list(G.moduli), "cube": list(Q.edges)},
        verdict=ok,
        verdicts=verdicts,
        witnesses=tilings if with_witnesses else [],
        timing_ms=(time.perf_counter() - start) * 1e3,
    )


def _sweep_item(moduli: tuple[int, ...], edges: tuple[int, ...]) -> list[dict]:
    rep = exhaustive_theorem_check(Group(moduli), edges, with_witnesses=False)
    v = rep.verdicts
    return [
        {
            "group": list(moduli),
            "cube": list(edges),
            "divisible": v["divisible"],
            "dual_cube": v["dual_cube"],
            "tiling_count": v["tiling_count"],
            "spectra_count": v["spectra_count"],
            "verified": rep.verdict,
        }
    ]


def theorem_sweep(
    groups: Iterable[Group], divisible_only: bool = False, jobs: int = 1
) -> VerificationReport:
    """Run the exhaustive check on every cube of every group, in canonical order."""
    start = time.perf_counter()
    groups = list(groups)
    work = []
    for G in groups:
        for edges in product(*(range(1, A + 1) for A in G.moduli)):
            if divisible_only and any(A % a for a, A in zip(edges, G.moduli)):
                continue
            work.append((G.moduli, edges))
    rows = run_branches(_sweep_item, (), work, jobs)
    failed = [r for r in rows if not r["verified"]]
    return VerificationReport(
        command="sweep",
        inputs={"groups": [list(G.moduli) for G in groups], "divisible_only": divisible_only},
        verdict=not failed,
        verdicts={
            "cubes": len(rows),
            "divisible_cubes": sum(r["divisible"] for r in rows),
            "failures": len(failed),
        },
        items=rows,
        timing_ms=(time.perf_counter() - start) * 1e3,
    )


@dataclass(frozen=True)
class DilatedCube:
    """s_1[k_1] x ... x s_N[k_N] with s[k] = {0, s, ..., (k-1)s}."""

    group: Group
    steps: tuple[int, ...]
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        steps = tuple(int(s) for s in self.steps)
        counts = tuple(int(k) for k in self.counts)
        if len(steps) != self.group.rank or len(counts) != self.group.rank:
            raise ValueError(f"need {self.group.rank} steps and counts")
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "counts", counts)
        for s, k, Ap in zip(steps, counts, self.reduced_moduli):
            if k < 1:
                raise ValueError("counts must be >= 1")
            if k > Ap:
                raise ValueError(f"points of {s}[{k}] are not distinct: only {Ap} multiples of {s}")

    @property
    def gcds(self) -> tuple[int, ...]:
        return tuple(math.gcd(A, s) for A, s in zip(self.group.moduli, self.steps))

    @property
    def reduced_moduli(self) -> tuple[int, ...]:
        """A_j' = A_j / (A_j, s_j)."""
        return tuple(A // math.gcd(A, s) for A, s in zip(self.group.moduli, self.steps))

    @property
    def reduced_steps(self) -> tuple[int, ...]:
        """s_j' = s_j / (A_j, s_j)."""
        return tuple(s // math.gcd(A, s) for A, s in zip(self.group.moduli, self.steps))

    @property
    def as_point_set(self) -> PointSet:
        return PointSet.of(
            self.group,
            (tuple(n * s for n, s in zip(ns, self.steps)) for ns in product(*(range(k) for k in self.counts))),
        )

    def criterion(self) -> bool:
        """k_j | A_j' for every j."""
        return all(Ap % k == 0 for k, Ap in zip(self.counts, self.reduced_moduli))


@dataclass(frozen=True)
class Reduction:
    """A dilated cube seen inside the subgroup it generates."""

    source: DilatedCube
    group: Group
    cube: Cube
    embedding: Embedding

    def restrict_character(self, lam) -> tuple[int, ...]:
        """lambda_j -> s_j' lambda_j mod A_j'."""
        coords = lam.coords if hasattr(lam, "coords") else tuple(lam)
        return tuple(
            (sp * c) % Ap for sp, c, Ap in zip(self.source.reduced_steps, coords, self.group.moduli)
        )

    def restrict_characters(self, spectrum: PointSet) -> PointSet:
        """Image set of the restriction map; may be smaller than ``spectrum``."""
        _check_same(self.source.group, spectrum.group)
        return PointSet.of(self.group, (self.restrict_character(lam) for lam in spectrum))


def reduce_dilated(D: DilatedCube) -> Reduction:
    """<E> = Z_{A_1'} x ... x Z_{A_N'}, with E the image of [k_1] x ... x [k_N] under n -> n s."""
    sub = Group(D.reduced_moduli)
    return Reduction(D, sub, Cube(sub, D.counts), Embedding(sub, D.group, D.steps))


def corollary_check(D: DilatedCube, spectrum: PointSet | None = None, jobs: int = 1) -> VerificationReport:
    """Check the dilated-cube criterion and, given a candidate, the reduction of its spectra."""
    start = time.perf_counter()
    E = D.as_point_set
    red = reduce_dilated(D)
    criterion = D.criterion()
    spectral = bool(enumerate_spectra(E, jobs=jobs))
    tiles = bool(enumerate_tiling_complements(E, jobs=jobs))
    verdicts: dict = {
        "criterion": criterion,
        "spectral": spectral,
        "tiles": tiles,
        "criterion_consistent": criterion == spectral == tiles,
        "reduced_group": list(red.group.moduli),
        "reduced_cube": list(red.cube.edges),
        "reduced_steps": list(D.reduced_steps),
        "image_is_E": PointSet.of(D.group, (red.embedding(p) for p in red.cube.as_point_set)) == E,
    }
    ok = verdicts["criterion_consistent"] and verdicts["image_is_E"]
    flags: list[str] = []
    inputs = {"group": list(D.group.moduli), "steps": list(D.steps), "counts": list(D.counts)}
    if spectrum is not None:
        _check_same(D.group, spectrum.group)
        inputs["spectrum"] = spectrum.to_text()
        spec = is_spectrum(E, spectrum)
        image = red.restrict_characters(spectrum)
        injective = len(image) == len(spectrum)
        if criterion:
            target = Cube(red.group, tuple(Ap // k for k, Ap in zip(D.counts, red.group.moduli)))
            image_tiles = check_tiling(target.as_point_set, image, 1)
            verdicts["target_cube"] = list(target.edges)
        else:
            image_tiles = False
            verdicts["target_cube"] = None
        verdicts.update(
            {
                "is_spectrum": spec,
                "restricted_spectrum": image.to_text(),
                "restricted_injective": injective,
                "restricted_tiles": image_tiles,
                "pair_equivalent": spec == (image_tiles and injective),
            }
        )
        if image_tiles and not injective:
            flags.append(
                "restriction-collapse: image set tiles but the restriction map is not injective"
            )
        ok = ok and verdicts["pair_equivalent"]
    return VerificationReport(
        command="verify-corollary",
        inputs=inputs,
        verdict=ok,
        verdicts=verdicts,
        erratum_flags=flags,
        timing_ms=(time.perf_counter() - start) * 1e3,
    )
