"""Command-line front end.

One binary, subcommand style.  Every numeric result is also emitted as a
machine-readable line prefixed ``#data``; stdout is deterministic for fixed
inputs (wall time goes to stderr).  Exit codes: 0 success, 1 domain failure
(axiom violation, non-cocycle), 2 input parse error, 3 resource budget
exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from typing import Sequence

from .coloring import (
    count_colorings,
    enumerate_colorings,
    enumerate_shadow_colorings,
    enumerate_surface_colorings,
)
from .diagram import Diagram, SurfaceDiagramData
from .errors import BudgetError, ParseError, QuandleKitError
from .homology import (
    cohomology,
    homology,
    homology_mod,
    homology_with_coefficients,
    is_cocycle,
)
from .invariant import state_sum_2, state_sum_shadow, state_sum_surface
from .specs import (
    parse_inline_braid,
    resolve_cochain,
    resolve_diagram,
    resolve_rack,
)


def _echo(args: Sequence[str]) -> None:
    print("# quandlekit " + " ".join(args))


def _digest_inputs(paths: Sequence[str]) -> None:
    for path in paths:
        if os.path.exists(path):
            with open(path, "rb") as fh:
                digest = hashlib.sha256(fh.read()).hexdigest()[:12]
            print(f"# input {path} sha256:{digest}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quandlekit",
        description="Finite quandles, knot colorings, homology and cocycle invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify a rack/quandle/kei table")
    p.add_argument("rack", help="builtin name (dihedral:3, ...) or table file")
    p.add_argument("--file", action="store_true", help="force the spec to be a path")

    p = sub.add_parser("color", help="count or list (shadow) colorings")
    p.add_argument("diagram", help="diagram spec: file, torus:p:q or braid:s: w")
    p.add_argument("rack", help="rack spec")
    p.add_argument("--count", action="store_true", help="print the count (default)")
    p.add_argument("--list", action="store_true", help="list every coloring")
    p.add_argument("--shadow", action="store_true", help="shadow colorings instead")
    p.add_argument("--surjective", action="store_true",
                   help="restrict to colorings using every element")
    p.add_argument("--jobs", type=int, default=1, help="parallel seed partitions")
    p.add_argument("--file", action="store_true", help="force specs to be paths")

    p = sub.add_parser("invariant", help="cocycle state-sum invariants")
    p.add_argument("diagram", nargs="?", help="diagram or surface spec")
    p.add_argument("rack", help="rack spec")
    p.add_argument("cochain", help="cochain file")
    p.add_argument("--mode", choices=["2", "shadow", "surface"],
                   help="which state sum; inferred from the inputs if omitted")
    p.add_argument("--braid", help="inline braid diagram, e.g. '2: 1 1 1'")
    p.add_argument("--unsafe-no-cocycle-check", action="store_true",
                   help="skip cocycle validation (output is NOT an invariant)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--file", action="store_true")

    p = sub.add_parser("homology", help="rack/degeneration/quandle homology")
    p.add_argument("rack", help="rack spec")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--theory", choices=["R", "D", "Q"], default="Q")
    p.add_argument("--mod", type=int, help="coefficients Z_d instead of Z")
    p.add_argument("--file", action="store_true")

    p = sub.add_parser("cocycles", help="cocycle/coboundary spaces and verification")
    p.add_argument("rack", help="rack spec")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--verify", help="check one cochain file")
    p.add_argument("--file", action="store_true")
    return parser


def _cmd_check(args: argparse.Namespace) -> int:
    X = resolve_rack(args.rack, force_file=args.file)
    chk = X.check
    if chk.rack_class == "not-a-rack":
        witness = ",".join(map(str, chk.witness or ()))
        print(f"not-a-rack (order {X.size}): axiom {chk.failed_axiom} violated at ({witness})")
        print(f"#data class not-a-rack {X.size}")
        return 1
    print(f"{chk.rack_class} (order {X.size}, orbits {len(X.orbits)})")
    print(f"#data class {chk.rack_class} {X.size} {len(X.orbits)}")
    return 0


def _cmd_color(args: argparse.Namespace) -> int:
    target = resolve_diagram(args.diagram, force_file=args.file)
    X = resolve_rack(args.rack, force_file=args.file)
    if isinstance(target, SurfaceDiagramData):
        if args.shadow:
            raise ParseError("--shadow needs a classical diagram, not surface data")
        colorings = enumerate_surface_colorings(target, X, jobs=args.jobs)
        label = "surface-colorings"
    elif args.shadow:
        colorings = enumerate_shadow_colorings(target, X, jobs=args.jobs)
        label = "shadow-colorings"
    else:
        colorings = enumerate_colorings(target, X, jobs=args.jobs)
        label = "colorings"
        if X.is_rack and not X.is_quandle:
            print("note: rack colorings are framed-diagram data only")
    if args.surjective:
        colorings = [c for c in colorings if set(c.colors) == set(range(X.size))]
    print(f"{label}: {len(colorings)}")
    print(f"#data {label} {len(colorings)}")
    if args.list:
        for i, c in enumerate(colorings):
            arc_part = " ".join(map(str, c.colors))
            if hasattr(c, "region_colors"):
                region_part = " ".join(map(str, c.region_colors))
                print(f"{i}: {arc_part} | {region_part}")
            else:
                print(f"{i}: {arc_part}")
    return 0


def _cmd_invariant(args: argparse.Namespace) -> int:
    if args.braid is not None:
        if args.diagram is not None:
            raise ParseError("give either a diagram spec or --braid, not both")
        target: Diagram | SurfaceDiagramData = parse_inline_braid(args.braid)
    else:
        if args.diagram is None:
            raise ParseError("an invariant needs a diagram spec or --braid")
        target = resolve_diagram(args.diagram, force_file=args.file)
    X = resolve_rack(args.rack, force_file=args.file)
    phi = resolve_cochain(args.cochain)
    mode = args.mode
    if mode is None:
        if isinstance(target, SurfaceDiagramData):
            mode = "surface"
        else:
            mode = "2" if phi.degree == 2 else "shadow"
    check = not args.unsafe_no_cocycle_check
    if mode == "surface":
        if not isinstance(target, SurfaceDiagramData):
            raise ParseError("--mode surface needs surface data")
        value = state_sum_surface(target, X, phi, check=check, jobs=args.jobs)
    elif mode == "shadow":
        if isinstance(target, SurfaceDiagramData):
            raise ParseError("--mode shadow needs a classical diagram")
        value = state_sum_shadow(target, X, phi, check=check, jobs=args.jobs)
    else:
        if isinstance(target, SurfaceDiagramData):
            raise ParseError("--mode 2 needs a classical diagram")
        value = state_sum_2(target, X, phi, check=check, jobs=args.jobs)
    if not check:
        print("warning: cocycle check skipped; this value is not a knot invariant")
    print(value.render())
    print(f"#data invariant {value.modulus} " + " ".join(map(str, value.coeffs)))
    return 0


def _cmd_homology(args: argparse.Namespace) -> int:
    X = resolve_rack(args.rack, force_file=args.file)
    n, theory = args.degree, args.theory
    if args.mod is None:
        group = homology(X, n, theory)
        print(f"H_{n}^{theory}({X.label}) = {group}")
        factors = " ".join(map(str, group.invariant_factors))
        print(f"#data homology {group.rank}{(' ' + factors) if factors else ''}")
        return 0
    d = args.mod
    if d < 2:
        raise ParseError("--mod must be at least 2")
    if _is_prime(d):
        dim = homology_mod(X, n, theory, d)
        desc = "0" if dim == 0 else (f"Z_{d}" if dim == 1 else f"Z_{d}^{dim}")
        print(f"H_{n}^{theory}({X.label}; Z_{d}) = {desc}")
        print(f"#data homology-mod {d} {dim}")
    else:
        group = homology_with_coefficients(X, n, theory, d)
        print(f"H_{n}^{theory}({X.label}; Z_{d}) = {group}")
        factors = " ".join(map(str, group.invariant_factors))
        print(f"#data homology {group.rank}{(' ' + factors) if factors else ''}")
    return 0


def _is_prime(d: int) -> bool:
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % f == 0:
            return False
        f += 1
    return True


def _cmd_cocycles(args: argparse.Namespace) -> int:
    X = resolve_rack(args.rack, force_file=args.file)
    n, d = args.degree, args.mod
    if d < 2:
        raise ParseError("--mod must be at least 2")
    if args.verify is not None:
        phi = resolve_cochain(args.verify)
        if phi.degree != n:
            raise ParseError(
                f"cochain has degree {phi.degree}, but --degree {n} was requested"
            )
        if phi.modulus != d:
            raise ParseError(
                f"cochain has modulus {phi.modulus}, but --mod {d} was requested"
            )
        chk = is_cocycle(X, phi, "Q")
        if not chk.ok:
            witness = ",".join(map(str, chk.witness or ()))
            print(f"cocycle: no ({chk.reason} at ({witness}))")
            print("#data verify 0 -")
            return 1
        member = cohomology(X, n, "Q", d).contains_coboundary(phi)
        word = "yes" if member else "no"
        print(f"cocycle: yes; coboundary: {word}")
        print(f"#data verify 1 {1 if member else 0}")
        return 0
    spaces = cohomology(X, n, "Q", d)
    if spaces.prime:
        zc, bc = spaces.cocycle_dimension, spaces.coboundary_dimension
        print(f"cocycles: dimension {zc}; coboundaries: dimension {bc} (over Z_{d})")
        print(f"#data cocycles {zc} {bc}")
    else:
        zc, bc = len(spaces.cocycle_vectors), len(spaces.coboundary_vectors)
        print(
            f"cocycles: {zc} generators; coboundaries: {bc} generators "
            f"(composite modulus Z_{d})"
        )
        print(f"#data cocycles {zc} {bc}")
    return 0


_HANDLERS = {
    "check": _cmd_check,
    "color": _cmd_color,
    "invariant": _cmd_invariant,
    "homology": _cmd_homology,
    "cocycles": _cmd_cocycles,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    _echo(argv)
    file_args = [
        getattr(args, name, None)
        for name in ("rack", "diagram", "cochain", "verify")
    ]
    _digest_inputs([a for a in file_args if a and os.path.exists(a)])
    try:
        code = _HANDLERS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 2
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 3
    except QuandleKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 1
    elapsed = (time.perf_counter() - started) * 1000
    print(f"time: {elapsed:.0f} ms", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
