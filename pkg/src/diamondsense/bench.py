"""Benchmark sweeps: the work-vs-witness-count trend and the oracle gate.

The trend suite generates graphs whose diamond count is calibrated to a
target by inverting the expected count of a random graph, measures the
combined detector's work across seeds, and writes one CSV row of medians
per target.  Figures are rendered next to the CSV so a sweep leaves a
self-contained record.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from statistics import median
from typing import Callable, Optional, Sequence

from .foursum import FourArrays, find4sum
from .generators import exact_diamond_count, gen_gnp
from .graphcore import Graph, split_seed
from .oracle import census, foursum_census, verify_diamond
from .sensitive import detect_diamond_combined, find_vertex_in_diamond

CSV_HEADER = "# diamondsense-bench v1 columns=family,n,t,algo,median_work_units,median_wall_ms"

TREND_N = 512
# near n^(1/2), n, n^(3/2), n^2/8
TREND_TARGETS = (23, 512, 11585, 32768)


def expected_diamonds(n: int, p: float) -> float:
    """Mean diamond count of a density-p random graph."""
    return math.comb(n, 4) * 6.0 * p**5 * (1.0 - p)


def solve_density(n: int, t_target: int) -> float:
    """Density whose expected diamond count hits the target."""
    lo, hi = 1e-6, 0.8
    for _ in range(80):
        mid = (lo + hi) / 2
        if expected_diamonds(n, mid) < t_target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def trend_instance(
    n: int, t_target: int, seed: int, attempts: int = 8
) -> tuple[Graph, int]:
    """Random graph with measured diamond count near the target.

    Re-draws with a corrected density until the exact count lands within a
    factor of two of the target; the measured count is the ground truth.
    """
    p = solve_density(n, t_target)
    for k in range(attempts):
        g = gen_gnp(n, p, seed=split_seed(seed, "trend", k))
        t = exact_diamond_count(g)
        if t_target // 2 <= t <= 2 * t_target:
            return g, t
        # count scales like p^5, so correct on the fifth root
        ratio = t_target / max(t, 1)
        p = min(0.8, p * ratio**0.2)
    return g, t


@dataclass(frozen=True)
class BenchRow:
    family: str
    n: int
    t: int
    algo: str
    median_work_units: int
    median_wall_ms: float


def run_trend(
    n: int = TREND_N,
    targets: Sequence[int] = TREND_TARGETS,
    seeds: int = 5,
    base_seed: int = 0,
    progress: Optional[Callable[[str], None]] = None,
) -> list[BenchRow]:
    rows = []
    for t_target in targets:
        works = []
        walls = []
        counts = []
        for s in range(seeds):
            g, t = trend_instance(n, t_target, split_seed(base_seed, "inst", t_target, s))
            t0 = time.perf_counter()
            res = detect_diamond_combined(g, seed=split_seed(base_seed, "det", t_target, s))
            wall = (time.perf_counter() - t0) * 1000.0
            assert res.found and verify_diamond(g, res.witness), (t_target, s)
            works.append(res.work_units)
            walls.append(wall)
            counts.append(t)
            if progress is not None:
                progress(
                    f"trend t_target={t_target} seed={s}: t={t} "
                    f"work={res.work_units} wall={wall:.1f}ms tag={res.algorithm_tag}"
                )
        rows.append(
            BenchRow(
                family="gnp-trend",
                n=n,
                t=int(median(counts)),
                algo="combined",
                median_work_units=int(median(works)),
                median_wall_ms=round(median(walls), 3),
            )
        )
    return rows


def run_oracle_gate(
    instances: int = 120,
    base_seed: int = 0,
    progress: Optional[Callable[[str], None]] = None,
) -> list[str]:
    """Check the exact detectors against brute force on small instances.

    Returns disagreement descriptions; an empty list is a pass.
    """
    import random

    failures = []
    rnd = random.Random(split_seed(base_seed, "gate"))
    for k in range(instances):
        n = rnd.randrange(4, 13)
        p = rnd.choice([0.2, 0.5, 0.8])
        g = gen_gnp(n, p, seed=split_seed(base_seed, "gate-g", k))
        c = census(g)
        res = detect_diamond_combined(g, seed=split_seed(base_seed, "gate-d", k))
        if res.found != (c.t > 0):
            failures.append(f"combined verdict {res.found} vs oracle t={c.t} (k={k})")
        if res.found and not verify_diamond(g, res.witness):
            failures.append(f"combined witness invalid (k={k})")
        vres = find_vertex_in_diamond(g, seed=split_seed(base_seed, "gate-v", k))
        if vres.certified != (c.t == 0):
            failures.append(f"vertex certification {vres.certified} vs t={c.t} (k={k})")
        sizes = [rnd.randrange(1, 9) for _ in range(4)]
        arrs = [[rnd.randrange(-6, 7) for _ in range(sz)] for sz in sizes]
        f = FourArrays.of(arrs)
        fres = find4sum(f)
        if fres.found != (foursum_census(f.arrays()) > 0):
            failures.append(f"find4sum verdict {fres.found} disagrees (k={k})")
        if progress is not None and (k + 1) % 40 == 0:
            progress(f"oracle gate {k + 1}/{instances}, failures so far: {len(failures)}")
    return failures


def write_rows(path: str, rows: Sequence[BenchRow]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        w = csv.writer(fh)
        w.writerow(["family", "n", "t", "algo", "median_work_units", "median_wall_ms"])
        for r in rows:
            w.writerow(
                [r.family, r.n, r.t, r.algo, r.median_work_units, r.median_wall_ms]
            )


def render_figures(csv_path: str, rows: Sequence[BenchRow]) -> list[str]:
    """Log-log work and wall charts next to the CSV; returns written paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    stem = csv_path[:-4] if csv_path.endswith(".csv") else csv_path
    out = []
    series = [
        ("median_work_units", "work units", f"{stem}_work.png"),
        ("median_wall_ms", "wall ms", f"{stem}_wall.png"),
    ]
    for field, label, path in series:
        fig, ax = plt.subplots(figsize=(5.5, 4))
        ts = [r.t for r in rows]
        ys = [getattr(r, field) for r in rows]
        ax.plot(ts, ys, marker="o")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("diamond count t")
        ax.set_ylabel(label)
        ax.set_title(f"combined detector, n={rows[0].n if rows else 0}")
        ax.grid(True, which="both", alpha=0.3)
        fig.tight_layout()
        fig.savefig(path, dpi=120)
        plt.close(fig)
        out.append(path)
    return out
