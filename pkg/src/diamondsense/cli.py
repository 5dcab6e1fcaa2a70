"""Command-line front door: detect, census, gen, bench, 4sum.

Machine-readable JSON records go to stdout, one object per line; anything
meant for humans goes to stderr.  Exit codes: 0 found / pass, 1 not found /
gate failure, 2 input error.  Re-running a printed command with its seed
reproduces the verdict and witness.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from typing import Optional, Sequence

from . import bench as bench_mod
from .algebraic import detect_cid
from .foursum import (
    FourArrays,
    find4sum,
    reduce_single_to_four,
    sensitive_detect_4sum,
)
from .generators import (
    gen_clique_extreme,
    gen_gnp,
    gen_independent_extreme,
    gen_planted,
    gen_tripartite_lb,
)
from .graphcore import Graph, graph_sha256, random_coloring
from .heavy import detect_heavy_roundrobin
from .oracle import census
from .sensitive import (
    detect_diamond_combined,
    find_vertex_in_diamond,
    sensitive_detect_c4,
    sensitive_detect_diamond,
)

_ALGOS = ("combined", "heavy", "sensitive", "vertex", "cid", "c4")
_FAMILIES = ("clique-extreme", "indep-extreme", "tripartite-lb", "planted", "gnp")


def _emit(record: dict) -> None:
    print(json.dumps(record, sort_keys=True))


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load_graph(path: str) -> Graph:
    with open(path) as fh:
        return Graph.from_text(fh.read())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dsense",
        description="Witness-sensitive detection of induced diamonds, "
        "induced 4-cycles, and 4-SUM solutions.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    d = sub.add_parser("detect", help="run a detector on a graph file")
    d.add_argument("--graph", required=True)
    d.add_argument("--algo", choices=_ALGOS, default="combined")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--budget", type=int, default=None,
                   help="work-unit cap (sensitive and c4 only)")
    d.add_argument("--paper-constants", action="store_true",
                   help="restore the literal replica constant for fidelity runs")

    c = sub.add_parser("census", help="brute-force motif counts of a graph file")
    c.add_argument("--graph", required=True)
    c.add_argument("--max-n", type=int, default=16)
    c.add_argument("--force", action="store_true")

    g = sub.add_parser("gen", help="write an instance file plus a JSON sidecar")
    g.add_argument("--family", choices=_FAMILIES, required=True)
    g.add_argument("--param", action="append", default=[], metavar="K=V",
                   help="clique-extreme and indep-extreme take d; "
                   "tripartite-lb takes n, p, yes; "
                   "planted takes n, base_p, t_target; gnp takes n, p")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    b = sub.add_parser("bench", help="benchmark sweeps with CSV and figures")
    b.add_argument("--suite", choices=("trend", "oracle", "full"), required=True)
    b.add_argument("--seeds", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", default="bench.csv")
    b.add_argument("--jobs", type=int, default=1,
                   help="concurrency cap; sweeps currently run sequentially")

    f = sub.add_parser("4sum", help="4-SUM detection on an integer-array file")
    f.add_argument("--arrays", required=True)
    f.add_argument("--single", action="store_true",
                   help="file holds one array; apply the shift reduction")
    f.add_argument("--sensitive", action="store_true")
    f.add_argument("--seed", type=int, default=0)
    return p


def cmd_detect(args) -> int:
    try:
        g = _load_graph(args.graph)
    except (OSError, ValueError) as e:
        _diag(f"cannot load graph: {e}")
        return 2
    if args.budget is not None and args.algo not in ("sensitive", "c4"):
        _diag(f"--budget has no effect for --algo {args.algo}; ignoring")
    t0 = time.perf_counter()
    if args.algo == "combined":
        res = detect_diamond_combined(g, seed=args.seed)
    elif args.algo == "heavy":
        res = detect_heavy_roundrobin(g, seed=args.seed)
    elif args.algo == "sensitive":
        res = sensitive_detect_diamond(
            g, seed=args.seed, budget=args.budget,
            paper_constants=args.paper_constants,
        )
    elif args.algo == "vertex":
        res = find_vertex_in_diamond(g, seed=args.seed)
    elif args.algo == "cid":
        res = detect_cid(g, random_coloring(g, 4, args.seed), seed=args.seed)
    else:
        res = sensitive_detect_c4(
            g, seed=args.seed, budget=args.budget,
            paper_constants=args.paper_constants,
        )
    wall = (time.perf_counter() - t0) * 1000.0
    verdict = "found" if res.found else (
        "certified-free" if res.certified else "not-found"
    )
    _emit({
        "command": f"detect --algo {args.algo}",
        "instance": {"file": args.graph, "sha256": graph_sha256(g)},
        "seed": args.seed,
        "algorithm_tag": res.algorithm_tag,
        "verdict": verdict,
        "witness": list(res.witness) if res.witness else None,
        "work_units": res.work_units,
        "wall_ms": round(wall, 3),
    })
    return 0 if res.found else 1


def cmd_census(args) -> int:
    try:
        g = _load_graph(args.graph)
    except (OSError, ValueError) as e:
        _diag(f"cannot load graph: {e}")
        return 2
    if g.n > args.max_n and not args.force:
        _diag(
            f"census scans all C({g.n},4) quadruples; n={g.n} exceeds "
            f"--max-n {args.max_n}, pass --force to run anyway"
        )
        return 2
    t0 = time.perf_counter()
    c = census(g)
    wall = (time.perf_counter() - t0) * 1000.0
    _emit({
        "command": "census",
        "instance": {"file": args.graph, "sha256": graph_sha256(g)},
        "n": g.n,
        "m": g.m,
        "t": c.t,
        "s": c.s,
        "c4": c.c4,
        "x3": len(c.deg3_vertices),
        "r_max": c.r_max,
        "wall_ms": round(wall, 3),
    })
    return 0


def _parse_params(pairs: Sequence[str]) -> dict:
    out = {}
    for item in pairs:
        if "=" not in item:
            raise ValueError(f"--param needs K=V, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k] = int(v)
        except ValueError:
            out[k] = float(v)
    return out


def cmd_gen(args) -> int:
    try:
        params = _parse_params(args.param)
        family = args.family
        truth: dict = {}
        if family == "clique-extreme":
            d = int(params["d"])
            g = gen_clique_extreme(d)
            truth = {"t": d - 1, "x3": 2, "r_max": d + 1}
        elif family == "indep-extreme":
            d = int(params["d"])
            g = gen_independent_extreme(d)
            truth = {"t": math.comb(d, 2), "x3": 2, "r_max": 3}
        elif family == "tripartite-lb":
            yes = bool(params.get("yes", 1))
            g = gen_tripartite_lb(
                int(params["n"]), int(params["p"]), args.seed, yes_case=yes
            )
            truth = {"s": 0, "t_at_least": math.comb(int(params["p"]), 2) if yes else 0}
        elif family == "planted":
            g, achieved = gen_planted(
                int(params["n"]), float(params["base_p"]),
                int(params["t_target"]), args.seed,
            )
            truth = {"t": achieved}
        else:
            g = gen_gnp(int(params["n"]), float(params["p"]), args.seed)
    except KeyError as e:
        _diag(f"bad family parameters: missing {e} (see dsense gen --help)")
        return 2
    except ValueError as e:
        _diag(f"bad family parameters: {e}")
        return 2
    text = g.to_text()
    with open(args.out, "w") as fh:
        fh.write(text)
    sidecar = {
        "family": args.family,
        "params": params,
        "seed": args.seed,
        "n": g.n,
        "m": g.m,
        "sha256": graph_sha256(g),
        "ground_truth": truth,
    }
    with open(args.out + ".json", "w") as fh:
        fh.write(json.dumps(sidecar, sort_keys=True) + "\n")
    _emit({"command": "gen", "out": args.out, "sidecar": sidecar})
    return 0


def cmd_bench(args) -> int:
    code = 0
    if args.suite in ("oracle", "full"):
        failures = bench_mod.run_oracle_gate(base_seed=args.seed, progress=_diag)
        _emit({
            "command": "bench --suite oracle",
            "seed": args.seed,
            "verdict": "pass" if not failures else "fail",
            "failures": failures,
        })
        if failures:
            code = 1
    if args.suite in ("trend", "full"):
        rows = bench_mod.run_trend(
            seeds=args.seeds, base_seed=args.seed, progress=_diag
        )
        bench_mod.write_rows(args.out, rows)
        figures = bench_mod.render_figures(args.out, rows)
        _emit({
            "command": "bench --suite trend",
            "seed": args.seed,
            "out": args.out,
            "figures": figures,
            "rows": [
                {
                    "family": r.family, "n": r.n, "t": r.t, "algo": r.algo,
                    "median_work_units": r.median_work_units,
                    "median_wall_ms": r.median_wall_ms,
                }
                for r in rows
            ],
        })
    return code


def cmd_4sum(args) -> int:
    try:
        with open(args.arrays) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
        arrays = [[int(tok) for tok in ln.split()] for ln in lines]
        if args.single:
            if len(arrays) != 1:
                raise ValueError(f"--single expects 1 array line, got {len(arrays)}")
            f = reduce_single_to_four(arrays[0])
        else:
            f = FourArrays.of(arrays)
    except (OSError, ValueError) as e:
        _diag(f"cannot load arrays: {e}")
        return 2
    with open(args.arrays, "rb") as fh:
        sha = hashlib.sha256(fh.read()).hexdigest()
    t0 = time.perf_counter()
    if args.sensitive:
        res = sensitive_detect_4sum(f, seed=args.seed)
    else:
        res = find4sum(f)
    wall = (time.perf_counter() - t0) * 1000.0
    _emit({
        "command": "4sum" + (" --single" if args.single else "")
        + (" --sensitive" if args.sensitive else ""),
        "instance": {"file": args.arrays, "sha256": sha},
        "seed": args.seed,
        "algorithm_tag": res.algorithm_tag,
        "verdict": "found" if res.found else "not-found",
        "witness": list(res.witness) if res.witness else None,
        "work_units": res.work_units,
        "wall_ms": round(wall, 3),
    })
    return 0 if res.found else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    dispatch = {
        "detect": cmd_detect,
        "census": cmd_census,
        "gen": cmd_gen,
        "bench": cmd_bench,
        "4sum": cmd_4sum,
    }
    return dispatch[args.cmd](args)


if __name__ == "__main__":
    sys.exit(main())
