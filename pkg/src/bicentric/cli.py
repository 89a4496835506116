"""Command-line front end: solve, sweep, convert, render, verify.

Exit codes: 0 success, 1 verification failure, 2 usage or solver error.
The environment variable PONCELET_TOL overrides the default tolerance.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import os
import sys
from typing import Sequence

from . import io as bio
from .derived import (
    bicentric_from_confocal,
    confocal_ellipses_from_bicentric,
    confocal_frame_circles,
    confocal_hyperbolas_from_bicentric,
)
from .errors import BicentricError
from .family import closure_residual, poncelet_solve, tangency_residual, vertices
from .lab import FAMILIES, MEASUREMENTS, family_polygon, sweep, verify_all
from .svg import render_families

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TOL = 1e-9


class UsageError(Exception):
    pass


def _default_tol() -> float:
    raw = os.environ.get("PONCELET_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"PONCELET_TOL={raw!r} is not a number") from None
    if not tol > 0.0:
        raise UsageError("PONCELET_TOL must be positive")
    return tol


def _csv_list(values: Sequence[str] | None) -> list[str]:
    out: list[str] = []
    for v in values or []:
        out.extend(part.strip() for part in v.split(","))
    return out


@contextlib.contextmanager
def _open_output(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _pair_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=3, help="number of sides N (default 3)")
    p.add_argument("--tau", type=int, default=1, help="winding number (default 1)")
    p.add_argument("--R", type=float, default=2.0, help="outer radius (default 2)")
    p.add_argument("--d", type=float, default=1.0, help="distance between centres (default 1)")
    p.add_argument("--rho", type=float, default=1.0, help="polarity / inversion radius (default 1)")


def _solve(args):
    return poncelet_solve(args.R, args.d, args.n, args.tau, seed=args.seed)


# ---------------------------------------------------------------------------
# commands


def cmd_solve(args) -> int:
    pair = _solve(args)
    P = vertices(pair, 0.0)
    report = {
        "pair": pair.as_dict(),
        "k": pair.k,
        "K": pair.K,
        "sigma": pair.sigma,
        "l1": list(pair.l1),
        "l2": list(pair.l2),
        "closure_residual": closure_residual(pair, 0.0),
        "tangency_residual": tangency_residual(pair, P),
    }
    with _open_output(args.output) as out:
        if args.format == "json":
            out.write(json.dumps(report, indent=2) + "\n")
        else:
            out.write(f"N={pair.N} tau={pair.tau} R={pair.R!r} d={pair.d!r}\n")
            out.write(f"r = {pair.r!r}\nk = {pair.k!r}\nK = {pair.K!r}\nsigma = {pair.sigma!r}\n")
            out.write(f"l1 = ({pair.l1.x!r}, {pair.l1.y!r})\nl2 = ({pair.l2.x!r}, {pair.l2.y!r})\n")
            out.write(f"closure_residual = {report['closure_residual']:.3e}\n")
            out.write(f"tangency_residual = {report['tangency_residual']:.3e}\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    measures = [m.replace("-", "_") for m in _csv_list(args.measure)] or ["perimeter", "sum_of_cosines"]
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    for m in measures:
        if m not in MEASUREMENTS:
            raise UsageError(f"unknown measurement {m!r}; choose from {', '.join(MEASUREMENTS)}")
    pair = _solve(args)
    reports = sweep(args.family, pair, args.rho, measures, args.samples)
    fmt = args.format or "csv"
    if fmt == "svg":
        raise UsageError("sweep writes csv or json")
    with _open_output(args.output) as out:
        if fmt == "json":
            payload = bio.run_payload(args.family, pair, args.rho, [], reports)
            out.write(bio.dumps(payload) + "\n")
        else:
            bio.write_csv(reports, out)
    if args.output not in (None, "-"):
        for rep in reports:
            print(f"{rep.family} {rep.measurement}: mean={rep.mean:.15g} spread_rel={rep.spread_rel:.3e} excluded={len(rep.excluded)}")
    return EXIT_OK


def cmd_convert(args) -> int:
    """Bicentric pair -> confocal conics, or confocal ellipses -> circle pair with --a/--b/--a-prime/--b-prime."""
    given = [args.a, args.b, args.a_prime, args.b_prime]
    if any(v is not None for v in given):
        if any(v is None for v in given):
            raise UsageError("--a, --b, --a-prime and --b-prime must be given together")
        circles, l1, l2 = bicentric_from_confocal(args.a, args.b, args.a_prime, args.b_prime, args.rho)
        inner, outer = confocal_frame_circles(args.a, args.b, args.a_prime, args.b_prime, args.rho)
        report = {
            "R": circles.R,
            "r": circles.r,
            "d": circles.d,
            "rho": args.rho,
            # positions below are in the frame where the ellipses are centred at the origin
            "outer_center": list(outer.center),
            "inner_center": list(inner.center),
            "l1": list(l1),
            "l2": list(l2),
        }
    else:
        pair = _solve(args)
        E = confocal_ellipses_from_bicentric(pair, args.rho)
        H = confocal_hyperbolas_from_bicentric(pair, args.rho)

        def conic(c):
            return {"kind": c.kind, "center": list(c.center), "a": c.a, "b": c.b}

        report = {
            "pair": pair.as_dict(),
            "rho": args.rho,
            "ellipses": {"table": conic(E.outer), "caustic": conic(E.caustic), "c": E.c, "foci": [list(f) for f in E.foci]},
            "hyperbolas": {"table": conic(H.outer), "caustic": conic(H.caustic), "c": H.c, "foci": [list(f) for f in H.foci]},
        }
    with _open_output(args.output) as out:
        out.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_render(args) -> int:
    families = _csv_list(args.families) if args.families is not None else list(FAMILIES)
    if not families or any(f == "" for f in families):
        raise UsageError("empty family id")
    for f in families:
        if f not in FAMILIES:
            raise UsageError(f"unknown family {f!r}; choose from {', '.join(FAMILIES)}")
    pair = _solve(args)
    fmt = args.format or "svg"
    with _open_output(args.output) as out:
        if fmt == "svg":
            out.write(render_families(pair, args.u, args.rho, families))
        elif fmt == "json":
            polys = []
            for f in families:
                with contextlib.suppress(BicentricError):
                    polys.append((args.u, family_polygon(f, pair, args.u, args.rho)))
            out.write(bio.dumps(bio.run_payload(",".join(families), pair, args.rho, polys)) + "\n")
        else:
            raise UsageError("render writes svg or json")
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else _default_tol()
    n_subset = None
    if args.n:
        try:
            n_subset = {int(x) for x in _csv_list(args.n)}
        except ValueError:
            raise UsageError(f"--n expects integers, got {args.n!r}") from None
    verdicts = verify_all(tol=tol, n_subset=n_subset, samples=args.samples)
    width = max(len(v.claim) for v in verdicts)
    first_fail = None
    for v in verdicts:
        rel = ">" if v.witness else "<"
        status = "PASS" if v.holds else "FAIL"
        print(f"{status}  {v.claim:<{width}}  {v.spread_rel:.3e} {rel} {v.tolerance:.1e}  {v.detail}")
        if not v.holds and first_fail is None:
            first_fail = v
    print(f"{sum(v.holds for v in verdicts)}/{len(verdicts)} verdicts hold")
    if first_fail is not None:
        print(f"first failing claim: {first_fail.claim}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bicentric", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", "-o", help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized certification checks")

    p = sub.add_parser("solve", help="find r so the pair closes with N sides")
    _pair_args(p)
    common(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="measure a family over a u-grid")
    _pair_args(p)
    common(p)
    p.add_argument("--family", default="bicentric", help=f"one of {', '.join(FAMILIES)}")
    p.add_argument("--measure", action="append", help=f"comma list from {', '.join(MEASUREMENTS)}")
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--format", choices=("csv", "json", "svg"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("convert", help="bicentric pair <-> confocal conic parameters")
    _pair_args(p)
    common(p)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--a-prime", dest="a_prime", type=float)
    p.add_argument("--b-prime", dest="b_prime", type=float)
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("render", help="SVG of the bicentric polygon and its derived families at one u")
    _pair_args(p)
    common(p)
    p.add_argument("--u", type=float, default=0.0)
    p.add_argument("--families", action="append", help="comma list of families (default all)")
    p.add_argument("--format", choices=("csv", "json", "svg"))
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run every invariance check and print verdicts")
    p.add_argument("--tol", type=float, help="nominal tolerance (default 1e-9 or PONCELET_TOL)")
    p.add_argument("--n", action="append", help="restrict to these N (comma list)")
    p.add_argument("--samples", type=int, default=256)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "tol", None) is not None and not (args.tol > 0.0 and math.isfinite(args.tol)):
            raise UsageError("--tol must be a positive number")
        return args.func(args)
    except (UsageError, BicentricError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

if __name__ == "__main__":
    sys.exit(main())
