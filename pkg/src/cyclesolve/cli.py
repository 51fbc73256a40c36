"""Command-line front end: ``solve``, ``gen``, ``verify`` and ``bench``.

Exit codes: 0 converged / all checks pass, 1 input error or failed check,
2 iteration cap reached.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time

import numpy as np

from . import generators
from .analysis import run_invariant_battery
from .errors import CycleSolveError
from .io import format_float, read_graph, read_vector, write_graph, write_vector
from .operators import laplacian_apply
from .solver import RNG_ALGORITHM, SolverConfig, solve
from .tree import STRATEGIES

log = logging.getLogger("cyclesolve")

EXIT_OK, EXIT_INPUT, EXIT_MAX_ITERS = 0, 1, 2

SUMMARY_KEYS = (
    "n", "m", "p", "tau", "tree_strategy", "mode", "seed", "iterations",
    "final_energy", "final_gap", "termination", "wall_time_ms", "residual_inf",
)


def _add_solver_flags(p, tol=1e-8):
    p.add_argument("--tol", type=float, default=tol, help="relative flow-error tolerance")
    p.add_argument("--max-iters", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tree", choices=STRATEGIES, default="bfs")
    p.add_argument("--mode", choices=("random", "sweep"), default="random")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclesolve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve L u = f on a graph file")
    s.add_argument("graph_path")
    s.add_argument("f_path")
    _add_solver_flags(s)
    s.add_argument("--trace-out", help="write 'iter,energy,gap' rows here")
    s.add_argument("--u-out", default="u.txt", help="potentials output (default: u.txt)")
    s.add_argument("--a-out", help="write the final edge flow here")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="write a generated graph file")
    g.add_argument("kind", choices=("path", "cycle", "grid", "torus", "random"))
    g.add_argument("params", type=int, nargs="+")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out", dest="out_path", help="output file (default: stdout)")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run the invariant battery on a graph file")
    v.add_argument("graph_path")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="iterations-to-tolerance versus tau, as CSV")
    b.add_argument("--kind", choices=("path", "cycle", "grid", "torus", "random"), default="torus")
    b.add_argument("--size", type=int, default=8)
    b.add_argument("--seeds", type=int, default=10)
    b.add_argument("--mode", choices=("random", "sweep", "both"), default="random")
    b.add_argument("--tree", choices=STRATEGIES, default="bfs")
    b.add_argument("--tol", type=float, default=1e-8)
    b.add_argument("--max-iters", type=int, default=10_000_000)
    b.set_defaults(func=cmd_bench)
    return parser


def run_summary(g, f, cfg, result, wall_ms) -> dict:
    residual = laplacian_apply(g, result.u) - f
    values = dict(
        n=g.n,
        m=g.m,
        p=g.m - g.n + 1,
        tau=result.tau,
        tree_strategy=cfg.tree_strategy,
        mode=cfg.mode,
        seed=cfg.seed,
        iterations=result.iterations,
        final_energy=result.energy,
        final_gap=result.gap,
        termination=result.termination,
        wall_time_ms=wall_ms,
        residual_inf=float(np.max(np.abs(residual))),
    )
    out = {k: values[k] for k in SUMMARY_KEYS}
    out["rng_algorithm"] = RNG_ALGORITHM
    return out


def cmd_solve(args) -> int:
    g = read_graph(args.graph_path)
    f = read_vector(args.f_path, g.n)
    cfg = SolverConfig(
        tol=args.tol, max_iters=args.max_iters, seed=args.seed,
        mode=args.mode, tree_strategy=args.tree,
    )
    start = time.perf_counter()
    result = solve(g, f, cfg)
    wall_ms = (time.perf_counter() - start) * 1e3

    write_vector(result.u, args.u_out)
    if args.a_out:
        write_vector(result.A, args.a_out)
    if args.trace_out:
        with open(args.trace_out, "w") as fh:
            fh.write("iter,energy,gap\n")
            for it, energy, gap in result.trace:
                fh.write(f"{it},{format_float(energy)},{format_float(gap)}\n")
    json.dump(run_summary(g, f, cfg, result, wall_ms), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK if result.converged else EXIT_MAX_ITERS


def cmd_gen(args) -> int:
    g = generators.generate(args.kind, *args.params, seed=args.seed)
    if args.out_path:
        write_graph(g, args.out_path)
    else:
        sys.stdout.write(f"{g.n} {g.m}\n")
        sys.stdout.writelines(f"{a} {b}\n" for a, b in g.edges)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = read_graph(args.graph_path)
    results = run_invariant_battery(g, trials=args.trials, seed=args.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "SKIP" if r.skipped else ("PASS" if r.passed else "FAIL")
        if r.skipped:
            log.warning("skipped %s: %s", r.name, r.note)
        note = f"  ({r.note})" if r.note else ""
        print(f"{status}  {r.name:<{width}}  worst={r.worst:.3e}{note}")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_INPUT


def cmd_bench(args) -> int:
    params = {
        "path": (args.size,),
        "cycle": (args.size,),
        "grid": (args.size, args.size),
        "torus": (args.size,),
        "random": (args.size, 2 * args.size),
    }[args.kind]
    modes = ("random", "sweep") if args.mode == "both" else (args.mode,)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["seed", "n", "m", "tau", "mode", "iterations_to_tol", "converged", "wall_time_ms"])
    for seed in range(args.seeds):
        g = generators.generate(args.kind, *params, seed=seed)
        rng = np.random.Generator(np.random.PCG64(seed))
        f = rng.standard_normal(g.n)
        f -= f.mean()
        for mode in modes:
            cfg = SolverConfig(
                tol=args.tol, max_iters=args.max_iters, seed=seed,
                mode=mode, tree_strategy=args.tree,
            )
            start = time.perf_counter()
            res = solve(g, f, cfg)
            wall_ms = (time.perf_counter() - start) * 1e3
            writer.writerow([seed, g.n, g.m, res.tau, mode, res.iterations,
                             int(res.converged), f"{wall_ms:.3f}"])
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CycleSolveError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
