"""Command line entry point: ``cpforge {count,predict,compare,generate,curve}``.

Exit codes: 0 success, 1 budget exhausted or anomaly flagged, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys

from . import tables
from .cache import CountCache
from .cmcurves import CM_J_INVARIANTS, CurveConstructionError, build_curve
from .cockspinch import as_fraction, generate_one, verify_triple


def _grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", required=True, help="embedding degrees: '3..18' or '3,4,8'")
    p.add_argument("--d", required=True, help="CM discriminants D: '1,2,3' or '1..7'")
    p.add_argument("--rho", required=True, help="rho bound: decimal (1.8) or fraction (9/5)")
    p.add_argument("--r", required=True, help="prime range min:max for r")
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--cache-dir", default=None, help="defaults to $CPFORGE_CACHE")
    p.add_argument("--no-cache", action="store_true")


def _gen_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--rbits", type=int, required=True)
    p.add_argument("--rho-max", default="2")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--attempts", type=int, default=200)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    _grid_args(sub.add_parser("count", help="exact N1/N2/N3 census grid"))
    _grid_args(sub.add_parser("predict", help="heuristic I, I1, I2, I3"))
    _grid_args(sub.add_parser("compare", help="census against prediction"))
    _gen_args(sub.add_parser("generate", help="one random parameter set"))
    _gen_args(sub.add_parser("curve", help="parameter set plus explicit curve"))
    return parser


def _parse_grid(parser, args):
    try:
        k_list = tables.parse_int_list(args.k)
        d_list = tables.parse_int_list(args.d)
        rho = tables.parse_rho(args.rho)
        r_min, r_max = tables.parse_range(args.r)
        if min(k_list) < 3:
            raise ValueError("k must be >= 3")
    except ValueError as exc:
        parser.error(str(exc))
    return k_list, d_list, rho, r_min, r_max


def _triple_record(tr) -> str:
    return (
        f"r={tr.r}\nt={tr.t}\nu={tr.u_abs}\nq={tr.q}\nk={tr.k}\nD={tr.D}\n"
        f"rho_value={tr.rho_value:.4f}\n"
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout

    if args.command in ("count", "predict", "compare"):
        k_list, d_list, rho, r_min, r_max = _parse_grid(parser, args)
        cache = None if args.no_cache else CountCache(args.cache_dir)
        try:
            cells = tables.run_grid(
                k_list, d_list, rho, r_min, r_max,
                counts=args.command != "predict", cache=cache, workers=args.threads,
            )
        except ValueError as exc:
            parser.error(str(exc))
        if args.command == "count":
            out.write(tables.to_csv(cells) if args.format == "csv" else tables.count_markdown(cells))
            return 0
        if args.command == "predict":
            out.write(tables.predict_csv(cells) if args.format == "csv" else tables.predict_markdown(cells))
            return 0
        report, anomaly = tables.compare_report(cells)
        out.write(report)
        return 1 if anomaly else 0

    if args.command == "curve" and args.d not in CM_J_INVARIANTS:
        print(f"error: D={args.d} has class number > 1; curves need D in {sorted(CM_J_INVARIANTS)}",
              file=sys.stderr)
        return 2
    try:
        tr = generate_one(args.k, args.d, args.rbits, as_fraction(args.rho_max),
                          seed=args.seed, attempts=args.attempts)
    except ValueError as exc:
        parser.error(str(exc))
    if tr is None:
        print(f"error: no parameters found within {args.attempts} attempts", file=sys.stderr)
        return 1
    assert verify_triple(tr)
    out.write(_triple_record(tr))
    if args.command == "curve":
        if tr.q >= 1 << 63:
            print("error: q exceeds 2**63; lower --rbits for curve output", file=sys.stderr)
            return 2
        try:
            c = build_curve(tr)
        except CurveConstructionError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        out.write(f"a4={c.a4}\na6={c.a6}\norder={c.order}\nj={c.j}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
