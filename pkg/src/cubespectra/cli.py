"""Command-line front end.

Exit codes: 0 verified/true, 1 falsified (valid input), 2 input error.
"""

from __future__ import annotations

import argparse
import sys
import time
from itertools import product
from typing import Callable, Sequence

from .cubes import (
    Cube,
    DilatedCube,
    DualUndefined,
    corollary_check,
    cube_zero_set,
    dual_cube,
    exhaustive_theorem_check,
    theorem_sweep,
    verify_theorem_pair,
    zero_formula_errata,
)
from .fourier import zero_set
from .groups import Group, PointSet
from .report import VerificationReport
from .spectra import enumerate_spectra, is_spectrum, orthogonal, speccond_check
from .tiling import check_packing, check_tiling, enumerate_tiling_complements, translation_classes

CHECK_LIMIT = 10**6
ENUMERATION_LIMIT = 4096


class InputError(ValueError):
    pass


def _int_token(tok: str, where: str) -> int:
    tok = tok.strip()
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"non-integer token {tok!r} in {where}") from None


def parse_group(text: str) -> Group:
    """``4x2`` or ``4,2``."""
    if text is None or not text.strip():
        raise InputError("empty group")
    tokens = text.replace("x", ",").replace("X", ",").split(",")
    moduli = [_int_token(t, f"group {text!r}") for t in tokens]
    for m, t in zip(moduli, tokens):
        if m < 1:
            raise InputError(f"modulus {t.strip()!r} in group {text!r} must be >= 1")
    return Group(tuple(moduli))


def parse_tuple(text: str, what: str = "tuple") -> tuple[int, ...]:
    if not text.strip():
        raise InputError(f"empty {what}")
    return tuple(_int_token(t, f"{what} {text!r}") for t in text.split(","))


def parse_set(text: str, group: Group) -> tuple[PointSet, list[str]]:
    """Semicolon-separated tuples of comma-separated coordinates.

    In rank-1 groups commas also separate elements, so ``0,1`` is {0, 1}.
    Returns the set and notes about collapsed duplicates.
    """
    text = text.strip()
    if not text:
        return group.empty_set(), []
    if group.rank == 1:
        chunks = text.replace(",", ";").split(";")
    else:
        chunks = text.split(";")
    points = []
    for chunk in chunks:
        coords = tuple(_int_token(t, f"set {text!r}") for t in chunk.split(","))
        if len(coords) != group.rank:
            raise InputError(f"tuple {chunk.strip()!r} has {len(coords)} coordinates, group {group} needs {group.rank}")
        points.append(coords)
    S = PointSet.of(group, points)
    notes = []
    if len(S) < len(points):
        notes.append(f"{len(points) - len(S)} duplicate element(s) collapsed after reduction")
    return S, notes


def _guard(group: Group, limit: int, force: bool) -> None:
    if group.order > limit and not force:
        raise InputError(f"group order {group.order} exceeds {limit}; pass --force to run anyway")


def _cmd_check_tiling(args) -> VerificationReport:
    G = parse_group(args.group)
    _guard(G, CHECK_LIMIT, args.force)
    E, n1 = parse_set(args.set, G)
    T, n2 = parse_set(args.translates, G)
    if args.level < 0:
        raise InputError("--level must be nonnegative")
    tiles = check_tiling(E, T, args.level)
    return VerificationReport(
        command="check-tiling",
        inputs={"group": list(G.moduli), "set": E.to_text(), "translates": T.to_text(), "level": args.level},
        verdict=tiles,
        verdicts={"tiling": tiles, "packing": check_packing(E, T, args.level)},
        notes=n1 + n2,
    )


def _cmd_check_spectrum(args) -> VerificationReport:
    G = parse_group(args.group)
    _guard(G, CHECK_LIMIT, args.force)
    E, n1 = parse_set(args.set, G)
    L, n2 = parse_set(args.spectrum, G)
    if not E:
        raise InputError("--set must be nonempty")
    spec = is_spectrum(E, L)
    alt = speccond_check(E, L)
    return VerificationReport(
        command="check-spectrum",
        inputs={"group": list(G.moduli), "set": E.to_text(), "spectrum": L.to_text()},
        verdict=spec and alt,
        verdicts={"orthogonal": orthogonal(E, L), "is_spectrum": spec, "speccond": alt, "routes_agree": spec == alt},
        notes=n1 + n2,
    )


def _enumerate(args, command: str, fn: Callable) -> VerificationReport:
    G = parse_group(args.group)
    _guard(G, ENUMERATION_LIMIT, args.force)
    E, notes = parse_set(args.set, G)
    if not E:
        raise InputError("--set must be nonempty")
    found = fn(E, jobs=args.jobs)
    classes = translation_classes(found)
    return VerificationReport(
        command=command,
        inputs={"group": list(G.moduli), "set": E.to_text(), "canonical": args.canonical},
        verdict=bool(found),
        verdicts={"count": len(found), "translation_classes": len(classes)},
        witnesses=classes if args.canonical else found,
        notes=notes,
    )


def _cmd_enumerate_tilings(args) -> VerificationReport:
    return _enumerate(args, "enumerate-tilings", enumerate_tiling_complements)


def _cmd_enumerate_spectra(args) -> VerificationReport:
    return _enumerate(args, "enumerate-spectra", enumerate_spectra)


def _cube(G: Group, text: str) -> Cube:
    edges = parse_tuple(text.replace("x", ","), "cube")
    try:
        return Cube(G, edges)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _cmd_dual(args) -> VerificationReport:
    G = parse_group(args.group)
    _guard(G, CHECK_LIMIT, args.force)
    Q = _cube(G, args.cube)
    try:
        D = dual_cube(Q)
    except DualUndefined as exc:
        raise InputError(str(exc)) from None
    return VerificationReport(
        command="dual",
        inputs={"group": list(G.moduli), "cube": list(Q.edges)},
        verdict=True,
        verdicts={"dual_cube": list(D.edges)},
        witnesses=[D.as_point_set],
    )


def _cmd_zero_set(args) -> VerificationReport:
    G = parse_group(args.group)
    _guard(G, CHECK_LIMIT, args.force)
    if (args.set is None) == (args.cube is None):
        raise InputError("give exactly one of --set or --cube")
    if args.cube is not None:
        Q = _cube(G, args.cube)
        Z = zero_set(Q.as_point_set)
        closed = cube_zero_set(Q)
        return VerificationReport(
            command="zero-set",
            inputs={"group": list(G.moduli), "cube": list(Q.edges)},
            verdict=closed == Z,
            verdicts={"closed_form_matches": closed == Z, "size": len(Z)},
            witnesses=[Z],
            erratum_flags=zero_formula_errata(Q),
        )
    E, notes = parse_set(args.set, G)
    if not E:
        raise InputError("--set must be nonempty")
    Z = zero_set(E)
    return VerificationReport(
        command="zero-set",
        inputs={"group": list(G.moduli), "set": E.to_text()},
        verdict=True,
        verdicts={"size": len(Z)},
        witnesses=[Z],
        notes=notes,
    )


def _cmd_verify_theorem(args) -> VerificationReport:
    G = parse_group(args.group)
    Q = _cube(G, args.cube)
    if args.translates is not None:
        _guard(G, CHECK_LIMIT, args.force)
        T, notes = parse_set(args.translates, G)
        try:
            rep = verify_theorem_pair(Q, T)
        except DualUndefined as exc:
            raise InputError(str(exc)) from None
        rep.notes.extend(notes)
        return rep
    _guard(G, ENUMERATION_LIMIT, args.force)
    return exhaustive_theorem_check(G, Q, jobs=args.jobs)


def _cmd_verify_corollary(args) -> VerificationReport:
    G = parse_group(args.group)
    _guard(G, ENUMERATION_LIMIT, args.force)
    steps = parse_tuple(args.steps, "steps")
    counts = parse_tuple(args.counts, "counts")
    try:
        D = DilatedCube(G, steps, counts)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    spectrum = None
    notes: list[str] = []
    if args.spectrum is not None:
        spectrum, notes = parse_set(args.spectrum, G)
    rep = corollary_check(D, spectrum, jobs=args.jobs)
    rep.notes.extend(notes)
    return rep


def _cmd_sweep(args) -> VerificationReport:
    if args.factors < 1:
        raise InputError("--factors must be >= 1")
    if not 1 <= args.min_modulus <= args.max_modulus:
        raise InputError("need 1 <= --min-modulus <= --max-modulus")
    rng = range(args.min_modulus, args.max_modulus + 1)
    groups = [Group(m) for m in product(rng, repeat=args.factors)]
    for G in groups:
        _guard(G, ENUMERATION_LIMIT, args.force)
    return theorem_sweep(groups, divisible_only=args.divisible_only, jobs=args.jobs)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--force", action="store_true", help="lift the group size guards")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for searches")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = argparse.ArgumentParser(
        prog="cubespectra",
        description="Tiling complements and spectra of cubes in Z_A1 x ... x Z_AN.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-tiling", parents=[common], help="does E + T tile at a level?")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--translates", required=True)
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(func=_cmd_check_tiling)

    p = sub.add_parser("check-spectrum", parents=[common], help="is Lambda a spectrum of E (both routes)?")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--spectrum", required=True)
    p.set_defaults(func=_cmd_check_spectrum)

    for name, func in (("enumerate-tilings", _cmd_enumerate_tilings), ("enumerate-spectra", _cmd_enumerate_spectra)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--group", required=True)
        p.add_argument("--set", required=True)
        p.add_argument("--canonical", action="store_true", help="one representative per translation class")
        p.set_defaults(func=func)

    p = sub.add_parser("dual", parents=[common], help="dual cube")
    p.add_argument("--group", required=True)
    p.add_argument("--cube", required=True)
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("zero-set", parents=[common], help="exact zero set of the transform")
    p.add_argument("--group", required=True)
    p.add_argument("--set")
    p.add_argument("--cube")
    p.set_defaults(func=_cmd_zero_set)

    p = sub.add_parser("verify-theorem", parents=[common], help="tiling complements of Q vs spectra of Q*")
    p.add_argument("--group", required=True)
    p.add_argument("--cube", required=True)
    p.add_argument("--translates", help="check one candidate instead of enumerating")
    p.set_defaults(func=_cmd_verify_theorem)

    p = sub.add_parser("verify-corollary", parents=[common], help="dilated cube s[k] reduction")
    p.add_argument("--group", required=True)
    p.add_argument("--steps", required=True)
    p.add_argument("--counts", required=True)
    p.add_argument("--spectrum")
    p.set_defaults(func=_cmd_verify_corollary)

    p = sub.add_parser("sweep", parents=[common], help="exhaustive check over a family of groups")
    p.add_argument("--max-modulus", type=int, default=6)
    p.add_argument("--min-modulus", type=int, default=1)
    p.add_argument("--factors", type=int, default=2)
    p.add_argument("--divisible-only", action="store_true")
    p.set_defaults(func=_cmd_sweep)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=err)
        return 2
    start = time.perf_counter()
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return 2
    report.timing_ms = (time.perf_counter() - start) * 1e3
    text = report.to_csv(args.timing) if args.format == "csv" else report.to_json(args.timing)
    out.write(text)
    return 0 if report.verdict else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
