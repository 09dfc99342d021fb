"""Command-line interface.

One binary, five subcommands: analyze, oscillation, search, verify and
capacity.  Reports go to standard output as JSON (sorted keys, stable
float formatting), diagnostics to standard error.  Exit codes: 0 ok,
2 invalid input, 3 precondition violation, 4 inequality violation,
5 internal numeric failure.

Reproducibility: every report embeds a manifest with the resolved
configuration; wall-clock timestamps are omitted unless --timestamp is
given, so identical invocations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from datetime import datetime, timezone

from . import __version__
from .bounds import best_lower_bound, depth_profile_check
from .capacity import (Segment, transfinite_diameter_exact,
                       transfinite_diameter_fekete)
from .geometry import ConvexDomain, DomainError, load_domain
from .norms import QuadratureConfig, oscillation_ratio
from .optimizer import SearchConfig, minimize_oscillation, verify_suite
from .polynomials import load_zeros

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_VIOLATION = 4
EXIT_NUMERIC = 5


def _manifest(command: str, inputs: list[str], config: dict,
              with_timestamp: bool) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "config": config,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat()
        if with_timestamp else None,
    }


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _write_csv(path: str, rows: list[dict]) -> None:
    if not rows:
        return
    keys = list(rows[0].keys())
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=keys)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def _parse_q(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    q = float(text)
    if q < 1.0:
        raise ValueError("q must be at least 1 (or 'inf')")
    return q


def _quad_config(args) -> QuadratureConfig:
    return QuadratureConfig(rel_tol=args.quad_tol)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_analyze(args) -> int:
    domain = load_domain(args.domain)
    summary = domain.summarize()
    report = {
        "manifest": _manifest("analyze", [args.domain], {}, args.timestamp),
        "summary": summary.as_dict(),
    }
    _emit(report)
    if args.csv:
        _write_csv(args.csv, [summary.as_dict()])
    return EXIT_OK


def _cmd_oscillation(args) -> int:
    domain = load_domain(args.domain)
    poly = load_zeros(args.zeros)
    offending = poly.offending_zeros(domain, args.tol)
    if offending:
        listed = ", ".join(f"{z.real:.12g}{z.imag:+.12g}i" for z in offending)
        print(f"error: zeros outside the domain: {listed}", file=sys.stderr)
        return EXIT_PRECONDITION
    q = _parse_q(args.q)
    rep = oscillation_ratio(domain, poly, q, _quad_config(args))
    report = {
        "manifest": _manifest(
            "oscillation", [args.domain, args.zeros],
            {"q": args.q, "tol": args.tol, "quad_tol": args.quad_tol},
            args.timestamp),
        "measure": rep.as_dict(),
    }
    _emit(report)
    if args.csv:
        row = rep.as_dict()
        row["h_intervals"] = len(rep.h_intervals)
        _write_csv(args.csv, [row])
    return EXIT_OK


def _cmd_search(args) -> int:
    domain = load_domain(args.domain)
    q = _parse_q(args.q)
    cfg = SearchConfig(restarts=args.restarts, max_iterations=args.max_iter,
                       seed=args.seed, tolerance=args.tol,
                       quadrature=QuadratureConfig(rel_tol=args.quad_tol))
    res = minimize_oscillation(domain, args.n, q, cfg)
    report = {
        "manifest": _manifest(
            "search", [args.domain],
            {"n": args.n, "q": args.q, "restarts": args.restarts,
             "seed": args.seed, "tol": args.tol, "max_iter": args.max_iter,
             "quad_tol": args.quad_tol},
            args.timestamp),
        "result": res.as_dict(),
    }
    _emit(report)
    if args.csv:
        _write_csv(args.csv, [t.as_dict() for t in res.trace])
    return EXIT_VIOLATION if res.bound_violated else EXIT_OK


def _cmd_verify(args) -> int:
    domain = load_domain(args.domain)
    q_list = [_parse_q(s) for s in args.q.split(",")]
    n_list = list(range(args.n_min, args.n_max + 1))
    cfg = SearchConfig(restarts=args.restarts, max_iterations=args.max_iter,
                       seed=args.seed, tolerance=args.tol,
                       quadrature=QuadratureConfig(rel_tol=args.quad_tol))
    suite = verify_suite(domain, n_list, q_list, cfg)
    profile = depth_profile_check(args.profile_grid)
    summary = domain.summarize()
    geometry_ok = summary.depth >= summary.mu - 1e-9
    lines = [ln.as_dict() for ln in suite.lines]
    lines.append({"check": "depth_profile_above_0.7", "degree": 0, "q": "",
                  "passed": profile.passed,
                  "margin": profile.grid_min - 0.7,
                  "detail": f"grid_min={profile.grid_min:.6f} "
                            f"line_floor={profile.supporting_line_bound:.6f}"})
    lines.append({"check": "depth_at_least_mu", "degree": 0, "q": "",
                  "passed": geometry_ok, "margin": summary.depth - summary.mu,
                  "detail": f"depth={summary.depth:.6g} mu={summary.mu:.6g}"})
    all_passed = suite.all_passed and profile.passed and geometry_ok
    report = {
        "manifest": _manifest(
            "verify", [args.domain],
            {"n_min": args.n_min, "n_max": args.n_max, "q": args.q,
             "seed": args.seed, "restarts": args.restarts,
             "profile_grid": args.profile_grid, "quad_tol": args.quad_tol},
            args.timestamp),
        "checks": lines,
        "all_passed": all_passed,
    }
    _emit(report)
    for ln in lines:
        status = "pass" if ln["passed"] else "FAIL"
        print(f"[{status}] {ln['check']} n={ln['degree']} q={ln['q']} "
              f"margin={ln['margin']:.3g}", file=sys.stderr)
    if args.csv:
        _write_csv(args.csv, lines)
    return EXIT_OK if all_passed else EXIT_VIOLATION


def _cmd_capacity(args) -> int:
    domain = load_domain(args.domain)
    exact = transfinite_diameter_exact(domain)
    fek = transfinite_diameter_fekete(domain, args.m, seed=args.seed,
                                      restarts=args.restarts)
    rel = (fek.value - exact) / exact if exact else None
    report = {
        "manifest": _manifest(
            "capacity", [args.domain],
            {"m": args.m, "seed": args.seed, "restarts": args.restarts},
            args.timestamp),
        "exact": exact,
        "fekete": {"m": fek.m, "value": fek.value,
                   "relative_excess": rel},
    }
    _emit(report)
    if args.csv:
        _write_csv(args.csv, [{"m": fek.m, "fekete_value": fek.value,
                               "exact": exact, "relative_excess": rel}])
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turanosc",
        description="Convex-domain geometry, boundary L^q norms, and "
                    "certified oscillation bounds.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--csv", default=None, help="also write a CSV table")
        p.add_argument("--timestamp", action="store_true",
                       help="embed a wall-clock timestamp (breaks "
                            "byte-for-byte reproducibility)")
        p.add_argument("--quad-tol", type=float, default=1e-9,
                       help="relative quadrature tolerance (default 1e-9)")

    p = sub.add_parser("analyze", help="geometry summary of a domain")
    p.add_argument("domain", help="domain JSON file")
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("oscillation", help="norms and M_q of a zero set")
    p.add_argument("domain")
    p.add_argument("zeros", help="zeros JSON file")
    p.add_argument("--q", default="2", help="norm exponent in [1, inf] "
                   "(accepts 'inf'; default 2)")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="membership tolerance for zeros (default 1e-9)")
    common(p)
    p.set_defaults(func=_cmd_oscillation)

    p = sub.add_parser("search", help="minimize M_q over zero placements")
    p.add_argument("domain")
    p.add_argument("--n", type=int, required=True, help="degree")
    p.add_argument("--q", default="2")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=2000)
    common(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("verify", help="run every inequality check")
    p.add_argument("domain")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--q", default="1,2", help="comma list, e.g. 1,2,inf")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=2000)
    p.add_argument("--profile-grid", type=int, default=100_000)
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("capacity", help="transfinite diameter estimates")
    p.add_argument("domain")
    p.add_argument("--m", type=int, default=64, help="point count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    common(p)
    p.set_defaults(func=_cmd_capacity)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
