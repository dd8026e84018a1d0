"""Command-line surface.

Four subcommands: ``prox`` evaluates an operator at a point and emits JSON;
``region`` sweeps a plane grid and emits CSV rows (cell centers by default
so boundary ties are not hit accidentally); ``spectrum`` dumps the rank-2
eigenstructure as JSON; ``oracle`` compares an analytic result against the
brute-force grid and sets the exit code accordingly.

Exit codes: 0 success, 1 oracle mismatch, 2 usage/input errors, 3 degenerate
spectrum request.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import (
    Tolerances,
    as_vector,
    normalize,
    objective_F,
    h1_value,
    h2_value,
    l0_value,
    uniform_value,
)
from .h1 import prox_h1
from .h2 import h2_spectrum, prox_h2
from .l0 import prox_l0
from .oracle import brute_prox

_PENALTY = {"l0": l0_value, "h1": h1_value, "h2": h2_value}


def _parse_vector(text: str) -> np.ndarray:
    try:
        return as_vector([float(p) for p in text.split(",")])
    except ValueError as exc:
        raise ValueError(f"malformed vector {text!r}: {exc}") from exc


def _tolerances(args) -> Tolerances:
    kw = {}
    if getattr(args, "tie_tol", None) is not None:
        kw["tie_tol"] = args.tie_tol
    if getattr(args, "pgd_tol", None) is not None:
        kw["pgd_tol"] = args.pgd_tol
    if getattr(args, "max_iter", None) is not None:
        kw["max_iter"] = args.max_iter
    return Tolerances(**kw)


def _run_prox(fn: str, x: np.ndarray, rho: float, tol: Tolerances, init_fraction: float):
    if fn == "l0":
        return prox_l0(x, rho, tol)
    if fn == "h2":
        return prox_h2(x, rho, tol)
    return prox_h1(x, rho, tol, init_fraction=init_fraction)


def _fmt(v: float) -> str:
    return f"{v:.9g}"


def _cmd_prox(args) -> int:
    x = _parse_vector(args.x)
    ps = _run_prox(args.fn, x, args.rho, _tolerances(args), args.init_fraction)
    payload = {
        "contains_zero": ps.contains_zero,
        "points": [[float(c) for c in p] for p in ps.points],
        "family": ps.family,
        "certified": ps.certified,
        "g_value": float(ps.g_value),
    }
    print(json.dumps(payload))
    return 0


def _region_label(ps) -> str:
    if ps.contains_zero:
        return "tie" if ps.points else "zero"
    return "nonzero"


def _cmd_region(args) -> int:
    tol = _tolerances(args)
    if args.grid < 1 or args.xmax <= 0.0:
        raise ValueError("grid must be >= 1 and xmax positive")
    h = args.xmax / args.grid
    rows: list[tuple[float, float]] = [
        ((i + 0.5) * h, (j + 0.5) * h) for i in range(args.grid) for j in range(i + 1)
    ]
    if args.include_boundary:
        thr = float(np.sqrt(2.0 / args.rho))
        for k in range(args.grid):
            rows.append((thr, k * thr / max(args.grid - 1, 1)))
        diag = thr if args.fn in ("l0", "h2") else float(np.sqrt(np.sqrt(2.0) / args.rho))
        rows.append((diag, diag))
    out = sys.stdout
    for x1, x2 in rows:
        ps = _run_prox(args.fn, np.array([x1, x2]), args.rho, tol, 0.5)
        label = _region_label(ps)
        if args.mode == "prox-map":
            u = ps.points[0] if ps.points else np.zeros(2)
            out.write(f"{_fmt(x1)},{_fmt(x2)},{label},{_fmt(u[0])},{_fmt(u[1])}\n")
        else:
            out.write(f"{_fmt(x1)},{_fmt(x2)},{label}\n")
    return 0


def _cmd_spectrum(args) -> int:
    x = _parse_vector(args.x)
    xs, _ = normalize(x)
    if uniform_value(xs) is not None:
        print(
            "spectrum degenerates at multiples of the all-ones vector "
            "(single nonzero eigenvalue); nothing to report",
            file=sys.stderr,
        )
        return 3
    spec = h2_spectrum(xs, args.rho)
    w_lo = spec.w_lo / np.linalg.norm(spec.w_lo)
    w_hi = spec.w_hi / np.linalg.norm(spec.w_hi)
    payload = {
        "delta": spec.delta,
        "alpha_lo": spec.alpha_lo,
        "alpha_hi": spec.alpha_hi,
        "lambda_pos": spec.lambda_pos,
        "lambda_neg": spec.lambda_neg,
        "w_lo": [float(c) for c in w_lo],
        "w_hi": [float(c) for c in w_hi],
    }
    print(json.dumps(payload))
    return 0


def _cmd_oracle(args) -> int:
    x = _parse_vector(args.x)
    if x.size > 3:
        print("oracle comparison supports dimensions up to 3", file=sys.stderr)
        return 2
    rho = args.rho
    ps = _run_prox(args.fn, x, rho, _tolerances(args), 0.5)
    penalty = _PENALTY[args.fn]
    candidates = list(ps.points)
    if ps.contains_zero:
        candidates.append(np.zeros(x.size))
    rep = candidates[0]
    f_analytic = min(objective_F(u, x, rho, penalty(u)) for u in candidates)

    box = args.box if args.box is not None else float(np.linalg.norm(x)) + 1.0
    u_oracle, f_oracle = brute_prox(x, rho, args.fn, box, args.resolution)
    dist = min(float(np.linalg.norm(u_oracle - u)) for u in candidates)

    s2 = float(x @ x)
    tolerance = (
        args.tolerance
        if args.tolerance is not None
        else max(1e-5, 10.0 * args.resolution**2 * rho * s2)
    )
    ok = abs(f_analytic - f_oracle) <= tolerance
    print(f"analytic point:   {np.array2string(np.asarray(rep), precision=9)}")
    print(f"analytic F:       {f_analytic:.12g}")
    print(f"oracle point:     {np.array2string(u_oracle, precision=9)}")
    print(f"oracle F:         {f_oracle:.12g}")
    print(f"|F gap|:          {abs(f_analytic - f_oracle):.3e}  (tolerance {tolerance:.3e})")
    print(f"point distance:   {dist:.3e}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxinv",
        description="set-valued proximity operators of l0, l1/l2 and (l1/l2)^2",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prox", help="evaluate a proximity operator at a point")
    p.add_argument("--fn", required=True, choices=("l0", "h1", "h2"))
    p.add_argument("--rho", required=True, type=float)
    p.add_argument("--x", required=True)
    p.add_argument("--tie-tol", type=float, default=None)
    p.add_argument("--pgd-tol", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--init-fraction", type=float, default=0.5)
    p.set_defaults(run=_cmd_prox)

    p = sub.add_parser("region", help="plane region map as CSV rows")
    p.add_argument("--fn", required=True, choices=("l0", "h1", "h2"))
    p.add_argument("--rho", required=True, type=float)
    p.add_argument("--xmax", required=True, type=float)
    p.add_argument("--grid", required=True, type=int)
    p.add_argument("--mode", required=True, choices=("zero-map", "prox-map"))
    p.add_argument("--include-boundary", action="store_true")
    p.add_argument("--tie-tol", type=float, default=None)
    p.set_defaults(run=_cmd_region)

    p = sub.add_parser("spectrum", help="rank-2 direction-matrix eigenstructure as JSON")
    p.add_argument("--rho", required=True, type=float)
    p.add_argument("--x", required=True)
    p.set_defaults(run=_cmd_spectrum)

    p = sub.add_parser("oracle", help="compare an analytic prox against the grid oracle")
    p.add_argument("--fn", required=True, choices=("l0", "h1", "h2"))
    p.add_argument("--rho", required=True, type=float)
    p.add_argument("--x", required=True)
    p.add_argument("--resolution", type=float, default=1e-3)
    p.add_argument("--box", type=float, default=None)
    p.add_argument("--tolerance", type=float, default=None)
    p.set_defaults(run=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "rho", None) is not None and args.rho <= 0.0:
        print("rho must be positive", file=sys.stderr)
        return 2
    try:
        return args.run(args)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
