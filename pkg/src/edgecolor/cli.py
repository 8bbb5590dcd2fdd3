"""Command-line surface: gen, color, verify, oracle, bench.

Exit codes: 0 success, 1 failure or violation, 2 usage error.
The EDGECOLOR_SEED environment variable overrides the default seed; explicit
--seed flags win over both.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bench as bench_mod
from .engine import RunConfig, run_full
from .errors import EdgeColorError, Exhausted, TooLarge
from .fileio import read_coloring, read_edge_list, write_coloring, write_edge_list
from .generators import GenSpec, generate
from .oracle import brute_chromatic_index


def _default_seed() -> int:
    try:
        return int(os.environ.get("EDGECOLOR_SEED", "0"))
    except ValueError:
        return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgecolor")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a graph and write it as an edge list")
    p_gen.add_argument("--model", required=True,
                       choices=["gnp", "random_regular", "complete", "complete_bipartite", "hypercube"])
    p_gen.add_argument("--n", type=int, default=0)
    p_gen.add_argument("--p", type=float, default=0.0)
    p_gen.add_argument("--d", type=int, default=0)
    p_gen.add_argument("--a", type=int, default=0)
    p_gen.add_argument("--b", type=int, default=0)
    p_gen.add_argument("--dim", type=int, default=0)
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument("--out", default=None, help="output path (default: stdout)")

    p_color = sub.add_parser("color", help="edge-color a graph")
    p_color.add_argument("--input", required=True)
    p_color.add_argument("--epsilon", type=float, default=0.5)
    p_color.add_argument("--seed", type=int, default=None)
    p_color.add_argument("--output", default=None, help="coloring path (default: stdout)")
    p_color.add_argument("--kappa-const", type=float, default=4.0)
    p_color.add_argument("--ell-const", type=float, default=2.0)
    p_color.add_argument("--t-const", type=float, default=100.0)
    p_color.add_argument("--max-restarts", type=int, default=3)
    p_color.add_argument("--no-fallback", action="store_true")
    p_color.add_argument("--stats", default=None, help="write run counters to this path")

    p_verify = sub.add_parser("verify", help="check a coloring file against its graph")
    p_verify.add_argument("--input", required=True)
    p_verify.add_argument("--coloring", required=True)

    p_oracle = sub.add_parser("oracle", help="exact chromatic index (m <= 16)")
    p_oracle.add_argument("--input", required=True)

    p_bench = sub.add_parser("bench", help="run a benchmark sweep, emit CSV")
    p_bench.add_argument("--sizes", required=True, help="comma-separated target edge counts")
    p_bench.add_argument("--epsilons", required=True, help="comma-separated epsilons")
    p_bench.add_argument("--trials", type=int, required=True)
    p_bench.add_argument("--delta", type=int, default=100)
    p_bench.add_argument("--model", default="random_regular", choices=["random_regular", "gnp"])
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--out", required=True)
    return parser


def _cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    spec = GenSpec(args.model, n=args.n, p=args.p, d=args.d, a=args.a, b=args.b,
                   dim=args.dim, seed=seed)
    g = generate(spec)
    if args.out:
        write_edge_list(args.out, g)
    else:
        from .fileio import format_edge_list

        sys.stdout.write(format_edge_list(g))
    print(f"generated {args.model}: n={g.n} m={len(g.edges)} max_degree={g.max_degree}",
          file=sys.stderr)
    return 0


def _cmd_color(args) -> int:
    g, labels = read_edge_list(args.input)
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = RunConfig(
        epsilon=args.epsilon,
        kappa_const=args.kappa_const,
        ell_const=args.ell_const,
        t_const=args.t_const,
        seed=seed,
        max_restarts=args.max_restarts,
        small_delta_fallback=not args.no_fallback,
    )
    try:
        state, stats = run_full(g, cfg)
    except Exhausted as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 1
    if args.output:
        write_coloring(args.output, g, state.slot, labels)
    else:
        from .fileio import format_coloring

        sys.stdout.write(format_coloring(g, state.slot, labels))
    if args.stats:
        with open(args.stats, "w", encoding="utf-8") as fh:
            # Timings omitted so equal (graph, config, seed) gives equal bytes.
            fh.write(stats.to_text(include_timings=False))
    print(
        f"colored m={len(g.edges)} with {stats.max_color_used} colors "
        f"(budget {stats.q_cap}, restarts {stats.restarts_used}, "
        f"fallback {int(stats.fallback_used)}, {stats.total_us} us)",
        file=sys.stderr,
    )
    return 0


def _cmd_verify(args) -> int:
    g, labels = read_edge_list(args.input)
    colors = read_coloring(args.coloring, g, labels)
    problems = []
    for x in range(g.n):
        seen: dict[int, int] = {}
        for _, eid in g.adjacency[x]:
            c = colors[eid]
            if c > 0:
                if c in seen:
                    e1, e2 = seen[c], eid
                    problems.append(
                        f"conflict: edges {labels[g.edge_u[e1]]}-{labels[g.edge_v[e1]]} and "
                        f"{labels[g.edge_u[e2]]}-{labels[g.edge_v[e2]]} share color {c} "
                        f"at vertex {labels[x]}"
                    )
                else:
                    seen[c] = eid
    uncolored = sum(1 for c in colors if c == 0)
    if uncolored:
        problems.append(f"incomplete: {uncolored} edges have color 0")
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return 1
    print(f"OK: {len(colors)} edges, {max(colors, default=0)} max color")
    return 0


def _cmd_oracle(args) -> int:
    g, _ = read_edge_list(args.input)
    result = brute_chromatic_index(g)
    print(f"chromatic_index {result.chromatic_index}")
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    epsilons = [float(s) for s in args.epsilons.split(",") if s]
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = RunConfig(epsilon=epsilons[0], seed=seed)
    records = bench_mod.bench_sweep(
        sizes, epsilons, args.trials, cfg, delta=args.delta, model=args.model, out=args.out
    )
    sys.stdout.write(bench_mod.summarize(records))
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "color": _cmd_color,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "bench": _cmd_bench,
}


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except (EdgeColorError, TooLarge, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
