"""Command-line surface.

Subcommands: gen, threshold, diameter, oracle, bench. Global flags may
also come from the environment (TAPSP_OMEGA, TAPSP_SEED, TAPSP_KERNEL,
TAPSP_MODE, TAPSP_THREADS, TAPSP_VERIFY); explicit flags win.

Exit codes: 0 success, 2 verification mismatch, 3 input error,
4 negative cycle.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .config import KERNELS, MODES, RunConfig, config_from_env
from .diameter import diameter
from .graphs import (Graph, GraphParseError, NegativeCycleError, gen_random,
                     parse_graph, to_matrix, write_graph)
from .matrices import COUNTERS, INF, dist_product_naive, is_finite
from .oracle import brute_threshold, floyd_warshall
from .threshold_general import VerifyMismatchError, threshold_apsp_neg
from .threshold_positive import threshold_apsp_pos

BENCH_ALGOS = ("oracle", "naive_product", "threshold", "diameter")


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse's default exit status 2 is
    # reserved for verification mismatches here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega", type=float, default=None,
                   help="matrix multiplication exponent used by the schedule")
    p.add_argument("--seed", type=int, default=None, help="master seed")
    p.add_argument("--kernel", choices=KERNELS, default=None)
    p.add_argument("--mode", choices=MODES, default=None,
                   help="auto picks the deterministic path when all weights are >= 1")
    p.add_argument("--verify", action="store_true",
                   help="cross-check against the brute-force oracle (small instances)")
    p.add_argument("--trace", action="store_true", help="print extra run details")
    p.add_argument("--threads", type=int, default=None,
                   help="thread cap (the kernels are sequential; accepted for sweeps)")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--force-beta", type=float, default=None,
                   help="override the schedule beta (experiments)")
    p.add_argument("--force-levels", type=int, default=None,
                   help="override the schedule level count (experiments)")


def _config(args) -> RunConfig:
    cfg = config_from_env()
    if args.omega is not None:
        cfg = cfg.with_(omega=args.omega)
    if args.seed is not None:
        cfg = cfg.with_(seed=args.seed)
    if args.kernel is not None:
        cfg = cfg.with_(kernel=args.kernel)
    if args.mode is not None:
        cfg = cfg.with_(mode=args.mode)
    if args.threads is not None:
        cfg = cfg.with_(threads=args.threads)
    if args.verify:
        cfg = cfg.with_(verify=True)
    if args.trace:
        cfg = cfg.with_(trace=True)
    if args.json:
        cfg = cfg.with_(output="json")
    if args.force_beta is not None:
        cfg = cfg.with_(force_beta=args.force_beta)
    if args.force_levels is not None:
        cfg = cfg.with_(force_levels=args.force_levels)
    return cfg


def _read_graph(path: str) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_graph(fh.read())


def _emit(payload: dict, cfg: RunConfig, text_lines) -> None:
    if cfg.output == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _pick_mode(g: Graph, cfg: RunConfig) -> str:
    if cfg.mode == "auto":
        return "positive" if g.positive_weights() else "general"
    if cfg.mode == "positive" and not g.positive_weights():
        raise ValueError("positive mode needs all weights >= 1")
    return cfg.mode


def cmd_gen(args) -> int:
    g = gen_random(args.n, args.p, args.wmin, args.wmax, seed=args.seed or 0,
                   require_no_neg_cycle=args.no_neg_cycle)
    comment = (f"gen n={args.n} p={args.p} wmin={args.wmin} wmax={args.wmax} "
               f"seed={args.seed or 0}")
    text = write_graph(g, comment=comment)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _oracle_report(g: Graph, d: int) -> np.ndarray:
    dist = floyd_warshall(to_matrix(g))
    return brute_threshold(dist, d)


def cmd_threshold(args) -> int:
    cfg = _config(args)
    g = _read_graph(args.file)
    mode = _pick_mode(g, cfg)
    if mode == "positive":
        rep = threshold_apsp_pos(g, args.d, kernel=cfg.kernel,
                                 strassen_cutoff=cfg.strassen_cutoff)
        if cfg.verify:
            if g.n <= cfg.verify_bound:
                if not np.array_equal(rep.reported, _oracle_report(g, args.d)):
                    raise VerifyMismatchError(
                        "positive-path report disagrees with the oracle")
            else:
                print(f"verify skipped: n={g.n} above bound {cfg.verify_bound}",
                      file=sys.stderr)
    else:
        # verify-retry lives inside the general path
        rep = threshold_apsp_neg(g, args.d, config=cfg)
    payload = {
        "command": "threshold",
        "mode": mode,
        "n": g.n,
        "M": g.M,
        "d": args.d,
        "count": rep.count,
        "stats": {k: v for k, v in rep.stats.items()
                  if isinstance(v, (int, float, str, bool, type(None)))},
    }
    lines = [f"mode: {mode}", f"n: {g.n}", f"M: {g.M}", f"d: {args.d}",
             f"count: {rep.count}"]
    if cfg.trace:
        for k in sorted(payload["stats"]):
            lines.append(f"stat {k}: {payload['stats'][k]}")
    if args.pairs:
        pair_list = rep.pairs()
        payload["pairs"] = [list(p) for p in pair_list]
        lines.extend(f"pair: {u} {v}" for (u, v) in pair_list)
    _emit(payload, cfg, lines)
    return 0


def cmd_diameter(args) -> int:
    cfg = _config(args)
    g = _read_graph(args.file)
    if cfg.mode == "positive" and not g.positive_weights():
        raise ValueError("positive mode needs all weights >= 1")
    res = diameter(g, config=cfg)
    if cfg.verify and g.n <= cfg.verify_bound:
        dist = floyd_warshall(to_matrix(g))
        fin = is_finite(dist)
        want = int(dist[fin].max()) if fin.all() else math.inf
        if want != res.value:
            raise VerifyMismatchError(f"diameter {res.value} but oracle says {want}")
        if res.finite:
            arg = sorted((int(u) + 1, int(v) + 1)
                         for u, v in zip(*np.nonzero(dist == want)))
            if arg != sorted(res.witnesses):
                raise VerifyMismatchError("witness set disagrees with the oracle")
    value_str = "inf" if not res.finite else str(res.value)
    payload = {
        "command": "diameter",
        "n": g.n,
        "M": g.M,
        "diameter": value_str,
        "witnesses": [list(p) for p in res.witnesses],
        "probes": len(res.probes),
    }
    lines = [f"n: {g.n}", f"M: {g.M}", f"diameter: {value_str}"]
    lines.extend(f"witness: {u} {v}" for (u, v) in res.witnesses)
    if cfg.trace:
        lines.append(f"search range: [{res.lo}, {res.hi}]")
        lines.extend(f"probe: d={d} all={ok}" for (d, ok) in res.probes)
    _emit(payload, cfg, lines)
    return 0


def cmd_oracle(args) -> int:
    cfg = _config(args)
    g = _read_graph(args.file)
    dist = floyd_warshall(to_matrix(g))
    if args.d is not None:
        rep = brute_threshold(dist, args.d)
        count = int(rep.sum())
        payload = {"command": "oracle", "n": g.n, "M": g.M, "d": args.d,
                   "count": count}
        lines = [f"n: {g.n}", f"M: {g.M}", f"d: {args.d}", f"count: {count}"]
        if args.pairs:
            pair_list = [(int(u) + 1, int(v) + 1) for u, v in zip(*np.nonzero(rep))]
            payload["pairs"] = [list(p) for p in pair_list]
            lines.extend(f"pair: {u} {v}" for (u, v) in pair_list)
        _emit(payload, cfg, lines)
        return 0
    fin = is_finite(dist)
    rows = []
    for i in range(g.n):
        rows.append(" ".join("inf" if not fin[i, j] else str(int(dist[i, j]))
                             for j in range(g.n)))
    payload = {"command": "oracle", "n": g.n, "M": g.M, "matrix": rows}
    _emit(payload, cfg, rows)
    return 0


def _parse_grid(raw: str) -> list:
    try:
        return [int(tok) for tok in raw.split(",") if tok]
    except ValueError:
        raise ValueError(f"bad integer grid {raw!r}")


def cmd_bench(args) -> int:
    cfg = _config(args)
    ns = _parse_grid(args.ns)
    ms = _parse_grid(args.ms)
    densities = [float(tok) for tok in args.densities.split(",") if tok]
    algos = [tok for tok in args.algos.split(",") if tok]
    for algo in algos:
        if algo not in BENCH_ALGOS:
            raise ValueError(f"unknown algo {algo!r}; choose from {BENCH_ALGOS}")
    writer = sys.stdout
    writer.write("n,M,density,algo,seed,wall_s,ring_mults,minplus_relaxations,bool_ops\n")
    for n in ns:
        for m_bound in ms:
            for density in densities:
                wmin = args.wmin if args.wmin is not None else 1
                g = gen_random(n, density, wmin, m_bound, seed=cfg.seed,
                               require_no_neg_cycle=wmin < 0)
                w = to_matrix(g)
                for algo in algos:
                    COUNTERS.reset()
                    start = time.perf_counter()
                    if algo == "oracle":
                        floyd_warshall(w)
                    elif algo == "naive_product":
                        dist_product_naive(w, w)
                    elif algo == "threshold":
                        d = args.d if args.d is not None else (n * m_bound) // 4
                        mode = _pick_mode(g, cfg)
                        if mode == "positive":
                            threshold_apsp_pos(g, d, kernel=cfg.kernel,
                                               strassen_cutoff=cfg.strassen_cutoff)
                        else:
                            threshold_apsp_neg(g, d, config=cfg)
                    else:
                        diameter(g, config=cfg)
                    wall = time.perf_counter() - start
                    snap = COUNTERS.snapshot()
                    writer.write(
                        f"{n},{m_bound},{density},{algo},{cfg.seed},{wall:.6f},"
                        f"{snap['ring_mults']},{snap['minplus_relaxations']},"
                        f"{snap['bool_ops']}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tapsp",
                     description="Threshold shortest-path reports and exact "
                                 "diameter for integer-weighted digraphs.")
    parser.add_argument("--version", action="version", version=f"tapsp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a random instance")
    p_gen.add_argument("-n", type=int, required=True)
    p_gen.add_argument("-p", type=float, required=True, help="arc density in [0,1]")
    p_gen.add_argument("--wmin", type=int, required=True)
    p_gen.add_argument("--wmax", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument("--no-neg-cycle", action="store_true",
                       help="resample until free of negative cycles")
    p_gen.add_argument("-o", "--out", default=None, help="output file (default stdout)")
    p_gen.set_defaults(func=cmd_gen)

    p_thr = sub.add_parser("threshold", help="report all pairs within distance d")
    p_thr.add_argument("file")
    p_thr.add_argument("-d", type=int, required=True)
    p_thr.add_argument("--pairs", action="store_true", help="list the pairs")
    _add_common(p_thr)
    p_thr.set_defaults(func=cmd_threshold)

    p_dia = sub.add_parser("diameter", help="exact diameter with witnesses")
    p_dia.add_argument("file")
    _add_common(p_dia)
    p_dia.set_defaults(func=cmd_diameter)

    p_ora = sub.add_parser("oracle", help="brute-force distances or threshold")
    p_ora.add_argument("file")
    p_ora.add_argument("-d", type=int, default=None)
    p_ora.add_argument("--pairs", action="store_true")
    _add_common(p_ora)
    p_ora.set_defaults(func=cmd_oracle)

    p_ben = sub.add_parser("bench", help="sweep instance grids, emit CSV")
    p_ben.add_argument("--ns", default="16,32,64", help="comma-separated n grid")
    p_ben.add_argument("--ms", default="4", help="comma-separated M grid")
    p_ben.add_argument("--densities", default="0.3")
    p_ben.add_argument("--algos", default="oracle",
                       help=f"comma-separated subset of {','.join(BENCH_ALGOS)}")
    p_ben.add_argument("--wmin", type=int, default=None,
                       help="lower weight bound (default 1; negative forces general mode)")
    p_ben.add_argument("-d", type=int, default=None,
                       help="threshold for the threshold algo (default n*M/4)")
    _add_common(p_ben)
    p_ben.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerifyMismatchError as exc:
        print(f"tapsp: verify mismatch: {exc}", file=sys.stderr)
        return 2
    except NegativeCycleError as exc:
        print(f"tapsp: negative cycle: {exc}", file=sys.stderr)
        return 4
    except (GraphParseError, OSError, ValueError) as exc:
        print(f"tapsp: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
