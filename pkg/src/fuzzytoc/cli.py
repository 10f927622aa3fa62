"""Command line entry point: ``fuzzytoc {fuzzy,point,validate}``."""

from __future__ import annotations

import argparse
import logging
import math
import platform
import sys
import time
from dataclasses import asdict, replace

import numpy as np

from . import __version__, kernels
from .config import ConfigError, RunConfig, load_config
from .dynamics import simulate_plan
from .export import fmt, write_membership_csv, write_summary, write_trajectory
from .fuzzy_time import LevelSolveError, evaluate_level, fuzzy_optimal_time
from .oracle import OracleConfig, OracleMissError, brute_force_min_time
from .solver import UnreachablePairError, solve_point_to_point

log = logging.getLogger("fuzzytoc")

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def _load(args) -> RunConfig:
    cfg = load_config(args.config)
    return cfg.with_overrides(
        nodes_per_edge=args.nodes_per_edge,
        alpha_step=args.alpha_step,
        interior_grid=args.interior_grid,
        threads=args.threads,
        backend=args.backend,
        output_dir=getattr(args, "output_dir", None),
    )


def _summary(cfg: RunConfig, curve, elapsed: float) -> dict:
    p = cfg.problem
    return {
        "fuzzytoc_version": __version__,
        "backend": cfg.backend or kernels.BACKEND,
        "config": cfg.source,
        "problem": {
            "start": {"x1": list(asdict(p.start.x1).values()), "x2": list(asdict(p.start.x2).values())},
            "target": {"x1": list(asdict(p.target.x1).values()), "x2": list(asdict(p.target.x2).values())},
            "alpha_levels": list(p.alpha_levels),
            "nodes_per_edge": p.nodes_per_edge,
            "interior_grid": p.interior_grid,
        },
        "tolerances": {"verify": cfg.verify_tol, "radius_match": cfg.radius_tol},
        "core_time": curve.core,
        "support": list(curve.support),
        "levels": [
            {"alpha": r.alpha, "t_lower": r.t_lo, "t_upper": r.t_hi,
             "argmin_pair": [list(r.argmin_pair[0]), list(r.argmin_pair[1])],
             "argmax_pair": [list(r.argmax_pair[0]), list(r.argmax_pair[1])],
             "pairs": r.n_pairs}
            for r in curve.details
        ],
        "nesting_violations": [list(v) for v in curve.nesting_violations()],
        "elapsed_seconds": round(elapsed, 3),
        "python": platform.python_version(),
    }


def run_fuzzy(args) -> int:
    cfg = _load(args)
    t0 = time.perf_counter()
    curve = fuzzy_optimal_time(cfg.problem, verify_tol=cfg.verify_tol, radius_tol=cfg.radius_tol,
                               threads=cfg.threads, backend=cfg.backend)
    elapsed = time.perf_counter() - t0
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    csv_path = write_membership_csv(curve, cfg.output_dir / cfg.membership_csv)
    sum_path = write_summary(cfg.output_dir / cfg.summary, _summary(cfg, curve, elapsed))
    print(f"{'alpha':>6} {'t_lower':>10} {'t_upper':>10}")
    for a, lo, hi in curve.levels:
        print(f"{a:6.2f} {lo:10.6f} {hi:10.6f}")
    print(f"membership: {csv_path}")
    print(f"summary:    {sum_path}")
    log.info("fuzzy run finished in %.2fs on the %s backend", elapsed, cfg.backend or kernels.BACKEND)
    return EXIT_OK


def run_point(args) -> int:
    S, T = (args.sx, args.sy), (args.tx, args.ty)
    if not all(math.isfinite(v) for v in (*S, *T)):
        print("error: coordinates must be finite", file=sys.stderr)
        return EXIT_CONFIG
    res = solve_point_to_point(S, T)
    plan = res.plan
    print(f"time = {fmt(res.time)}")
    print(f"start_sign = {int(plan.start_sign)}")
    print(f"k = {plan.num_switches}")
    pts = " ".join(f"({fmt(x)}, {fmt(y)})" for x, y in plan.switch_points)
    print(f"switch_points = {pts}")
    print(f"endpoint_error = {res.endpoint_error:.3e}")
    if args.trajectory:
        endpoint, poly = simulate_plan(S, plan, args.resolution)
        write_trajectory(args.trajectory, S, T, plan, endpoint, poly)
        print(f"trajectory: {args.trajectory}")
    if args.oracle:
        ocfg = OracleConfig(tau_steps=args.tau_steps, sigma_steps=args.tau_steps)
        t_or = brute_force_min_time(S, T, ocfg)
        print(f"oracle = {fmt(t_or)} |diff| = {abs(t_or - res.time):.3e} (bound {ocfg.grid_bound:.3e})")
    return EXIT_OK


def run_validate(args) -> int:
    cfg = _load(args)
    ocfg = cfg.oracle or OracleConfig()
    val = cfg.validation
    if args.pairs is not None:
        val = replace(val, pairs=args.pairs)
    rng = np.random.default_rng(val.seed)
    pts = rng.uniform(-val.box, val.box, size=(val.pairs, 4))
    peak = (cfg.problem.start.peak, cfg.problem.target.peak)
    pairs = [peak] + [((a, b), (c, d)) for a, b, c, d in pts]
    worst = 0.0
    failures = 0
    for S, T in pairs:
        try:
            t_sol = solve_point_to_point(S, T, cfg.verify_tol).time
            t_or = brute_force_min_time(S, T, ocfg)
        except (UnreachablePairError, OracleMissError) as exc:
            print(f"FAIL {exc}")
            failures += 1
            continue
        diff = abs(t_sol - t_or)
        worst = max(worst, diff)
        if diff > val.tolerance:
            failures += 1
            print(f"FAIL S={S} T={T} solver={t_sol:.6f} oracle={t_or:.6f}")
    print(f"oracle agreement: {len(pairs)} pairs, worst |diff| = {worst:.3e}, "
          f"tolerance {val.tolerance}, failures {failures}")

    if cfg.problem.interior_grid:
        base = replace(cfg.problem, interior_grid=False)
        for a in cfg.problem.alpha_levels:
            kw = dict(verify_tol=cfg.verify_tol, radius_tol=cfg.radius_tol,
                      threads=cfg.threads, backend=cfg.backend)
            b = evaluate_level(base, a, **kw)
            g = evaluate_level(cfg.problem, a, **kw)
            flag = "interior beats boundary" if (g.t_hi > b.t_hi + 1e-9 or g.t_lo < b.t_lo - 1e-9) else "ok"
            print(f"alpha={a:.2f} boundary=[{b.t_lo:.6f}, {b.t_hi:.6f}] "
                  f"with-interior=[{g.t_lo:.6f}, {g.t_hi:.6f}] {flag}")
    return EXIT_OK if failures == 0 else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzytoc", description=(
        "Fuzzy optimal transfer time for time-optimal control of the pendulum."))
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("config", help="YAML run configuration")
        p.add_argument("--nodes-per-edge", type=int, help="override discretization.nodes_per_edge")
        p.add_argument("--alpha-step", type=float, help="override the alpha levels with a uniform step")
        p.add_argument("--interior-grid", action="store_true",
                       help="also sample the interior of the alpha-cut rectangles")
        p.add_argument("--threads", type=int, help="worker threads for the compiled kernel (0 = all)")
        p.add_argument("--backend", choices=sorted(kernels.BACKENDS), help="force a kernel backend")

    f = sub.add_parser("fuzzy", help="compute the membership curve of the fuzzy optimal time")
    common(f)
    f.add_argument("--output-dir", help="override outputs.directory")
    f.set_defaults(func=run_fuzzy)

    p = sub.add_parser("point", help="solve one crisp point-to-point transfer")
    for name in ("sx", "sy", "tx", "ty"):
        p.add_argument(name, type=float)
    p.add_argument("--trajectory", help="write the optimal trajectory to this file")
    p.add_argument("--resolution", type=float, default=0.01, help="trajectory sampling step in radians")
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    p.add_argument("--tau-steps", type=int, default=512, help="oracle grid size per arc duration")
    p.set_defaults(func=run_point)

    v = sub.add_parser("validate", help="cross-check the solver against the brute-force oracle")
    common(v)
    v.add_argument("--pairs", type=int, help="number of random pairs (default from config)")
    v.set_defaults(func=run_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except LevelSolveError as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except UnreachablePairError as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
