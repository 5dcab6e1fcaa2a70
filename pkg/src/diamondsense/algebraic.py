"""Counting-based detection: the edge statistic Z and its colorful variants.

For the plain statistic, summing C(common(u,v), 2) over edges (u, v) counts
every K4 six times and every induced diamond once: Z = 6*s + t.  Restricting
to a 4-coloring and counting per-color common neighbors keeps the same
coefficients over colorful 4-sets, so Z mod 6 becomes a randomized witness
test: a nonzero residue certifies a colorful diamond, and repeated
half-density vertex subsamples turn "t is a multiple of 6" instances into
detections as well (a 4-set survives a subsample with probability 1/16, so
some surviving multiset has nonzero residue with constant probability per
round).

The 4-cycle variant signs the same per-pair product by adjacency:
sum over colorful non-adjacent pairs minus sum over colorful edges equals
2*(colorful induced 4-cycles) - 6*(colorful K4s) exactly; diamonds cancel
(chord against wing pair).  Nonzero mod 6 therefore certifies an induced
colorful 4-cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graphcore import (
    ColoringK,
    DetectionResult,
    Graph,
    bits_of,
    ceil_log2,
    rng_from,
)
from .linalg import IntMatrix, matmul, submatrix_product
from .work import Branch, BranchFactory, Budget, WorkMeter, drive

_COLOR_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def _complement_colors(a: int, b: int) -> tuple[int, int]:
    c, d = (x for x in (1, 2, 3, 4) if x != a and x != b)
    return c, d


def default_rounds(n: int) -> int:
    """Round count for the subsampled residue test: 100 * ceil(log2 n)."""
    if n < 2:
        return 0
    return 100 * ceil_log2(n)


def global_z(g: Graph, meter: Optional[WorkMeter] = None) -> int:
    """Z = sum over edges of C(#common neighbors, 2); equals 6*s + t."""
    if g.n == 0 or g.m == 0:
        return 0
    a = IntMatrix.adjacency(g)
    a2 = matmul(a, a, meter)
    uu, vv = zip(*g.edges())
    vals = a2.data[np.asarray(uu), np.asarray(vv)]
    if meter is not None:
        meter.add(g.m)
    return int((vals * (vals - 1) // 2).sum())


@dataclass(frozen=True)
class ZReport:
    """Colorful statistic value plus its per-pair decomposition.

    per_edge_y maps each colorful edge (u, v), u < v, to its product of
    per-complement-color common-neighbor counts.  For the 4-cycle variant,
    per_nonedge_y additionally maps colorful non-adjacent pairs, and
    z_value = sum(per_nonedge_y) - sum(per_edge_y).
    """

    z_value: int
    per_edge_y: dict[tuple[int, int], int]
    per_nonedge_y: Optional[dict[tuple[int, int], int]] = None


def _class_products(
    g: Graph,
    classes: tuple[tuple[int, ...], ...],
    meter: Optional[WorkMeter],
) -> dict[tuple[int, int, int], IntMatrix]:
    """Common-neighbor count matrices A[Va, Vc] @ A[Vc, Vb] per (a, c, b)."""
    out = {}
    for a, b in _COLOR_PAIRS:
        for c in _complement_colors(a, b):
            out[(a, c, b)] = submatrix_product(
                g, classes[a - 1], classes[c - 1], classes[b - 1], meter
            )
    return out


def _pair_index(classes: tuple[tuple[int, ...], ...]) -> list[dict[int, int]]:
    return [{v: i for i, v in enumerate(cl)} for cl in classes]


def get_z_colorful(
    g: Graph, coloring: ColoringK, meter: Optional[WorkMeter] = None
) -> ZReport:
    """Edge sum of per-complement-color common-neighbor products.

    Equals 6*(colorful K4s) + (colorful diamonds); the per-edge values are
    returned for witness extraction and audits.
    """
    if coloring.k != 4 or coloring.n != g.n:
        raise ValueError("need a 4-coloring matching the graph")
    classes = coloring.classes
    prods = _class_products(g, classes, meter)
    pos = _pair_index(classes)
    per_edge: dict[tuple[int, int], int] = {}
    z = 0
    for u, v in g.edges():
        a, b = coloring.color_of[u], coloring.color_of[v]
        if a == b:
            continue
        if a < b:
            ua, vb = u, v
        else:
            a, b = b, a
            ua, vb = v, u
        c, d = _complement_colors(a, b)
        i, j = pos[a - 1][ua], pos[b - 1][vb]
        y = prods[(a, c, b)][i, j] * prods[(a, d, b)][i, j]
        if meter is not None:
            meter.add(1)
        per_edge[(u, v)] = y
        z += y
    return ZReport(z_value=z, per_edge_y=per_edge)


def get_z_colorful_c4(
    g: Graph, coloring: ColoringK, meter: Optional[WorkMeter] = None
) -> ZReport:
    """Signed pair sum: colorful non-adjacent pairs minus colorful edges.

    Equals 2*(colorful induced 4-cycles) - 6*(colorful K4s) exactly;
    colorful diamonds cancel chord-against-wings.
    """
    if coloring.k != 4 or coloring.n != g.n:
        raise ValueError("need a 4-coloring matching the graph")
    classes = coloring.classes
    prods = _class_products(g, classes, meter)
    per_edge: dict[tuple[int, int], int] = {}
    per_nonedge: dict[tuple[int, int], int] = {}
    z = 0
    for a, b in _COLOR_PAIRS:
        c, d = _complement_colors(a, b)
        pc = prods[(a, c, b)].data
        pd = prods[(a, d, b)].data
        for i, u in enumerate(classes[a - 1]):
            for j, v in enumerate(classes[b - 1]):
                y = int(pc[i, j]) * int(pd[i, j])
                if meter is not None:
                    meter.add(1)
                if y == 0:
                    continue
                key = (u, v) if u < v else (v, u)
                if g.has_edge(u, v):
                    per_edge[key] = y
                    z -= y
                else:
                    per_nonedge[key] = y
                    z += y
    return ZReport(z_value=z, per_edge_y=per_edge, per_nonedge_y=per_nonedge)


def extract_colorful_diamond(
    g: Graph,
    color_masks: tuple[int, int, int, int],
    color_of,
    universe: int,
    meter: Optional[WorkMeter] = None,
):
    """Find a colorful diamond inside the vertex mask, chord-first order.

    Scans colorful edges; for each, looks for a non-adjacent pair of common
    neighbors in the two complement color classes.  Complete whenever a
    colorful diamond exists in the induced subgraph.
    """
    n = g.n
    for u in bits_of(universe):
        a = color_of[u]
        row = g.adj[u] & universe
        for v in bits_of(row):
            if v <= u:
                continue
            b = color_of[v]
            if a == b:
                continue
            cn = g.adj[u] & g.adj[v] & universe
            if meter is not None:
                meter.add(n)
            if not cn:
                continue
            c, d = _complement_colors(min(a, b), max(a, b))
            sc = cn & color_masks[c - 1]
            sd = cn & color_masks[d - 1]
            if not sc or not sd:
                continue
            for w in bits_of(sc):
                nonadj = sd & ~g.adj[w]
                if meter is not None:
                    meter.add(n)
                if nonadj:
                    x = next(bits_of(nonadj))
                    return (u, v, w, x)
    return None


def extract_colorful_c4(
    g: Graph,
    color_masks: tuple[int, int, int, int],
    color_of,
    universe: int,
    meter: Optional[WorkMeter] = None,
):
    """Find a colorful induced 4-cycle inside the mask, cyclic order.

    Scans colorful non-adjacent pairs as candidate diagonals; wings are
    non-adjacent common neighbors in the complement classes.
    """
    n = g.n
    for u in bits_of(universe):
        a = color_of[u]
        for v in bits_of(universe & ~g.adj[u]):
            if v <= u:
                continue
            b = color_of[v]
            if a == b:
                continue
            cn = g.adj[u] & g.adj[v] & universe
            if meter is not None:
                meter.add(n)
            if not cn:
                continue
            c, d = _complement_colors(min(a, b), max(a, b))
            sc = cn & color_masks[c - 1]
            sd = cn & color_masks[d - 1]
            if not sc or not sd:
                continue
            for w in bits_of(sc):
                nonadj = sd & ~g.adj[w]
                if meter is not None:
                    meter.add(n)
                if nonadj:
                    x = next(bits_of(nonadj))
                    return (u, w, v, x)
    return None


def _restricted_z(
    g: Graph,
    coloring: ColoringK,
    kept: list[int],
    meter: Optional[WorkMeter],
    c4: bool,
) -> int:
    """Z (or the signed 4-cycle Z) of the induced subgraph on kept vertices."""
    classes = tuple(
        tuple(v for v in coloring.classes[c] if kept[v]) for c in range(4)
    )
    dense = g.dense()
    z = 0
    for a, b in _COLOR_PAIRS:
        va, vb = classes[a - 1], classes[b - 1]
        if not va or not vb:
            continue
        c, d = _complement_colors(a, b)
        pc = submatrix_product(g, va, classes[c - 1], vb, meter)
        pd = submatrix_product(g, va, classes[d - 1], vb, meter)
        y = pc.data * pd.data
        adj = dense[np.ix_(np.asarray(va, dtype=np.intp), np.asarray(vb, dtype=np.intp))]
        if meter is not None:
            meter.add(len(va) * len(vb))
        if c4:
            z += int(y[adj == 0].sum()) - int(y[adj == 1].sum())
        else:
            z += int(y[adj == 1].sum())
    return z


def colorful_z_mask(
    g: Graph,
    coloring: ColoringK,
    mask: int,
    meter: Optional[WorkMeter] = None,
    c4: bool = False,
) -> int:
    """The (signed, for c4=True) colorful statistic on an induced vertex mask.

    Bitset evaluation: one row intersection per colorful pair touched.
    Agrees with the submatrix-product route entry for entry; used where many
    small restricted evaluations would drown in matrix bookkeeping.
    """
    cm = coloring.class_masks
    col = coloring.color_of
    n = g.n
    z = 0
    for u in bits_of(mask):
        a = col[u]
        targets = (mask if c4 else g.adj[u] & mask) >> (u + 1)
        for off in bits_of(targets):
            v = u + 1 + off
            b = col[v]
            if b == a:
                continue
            cn = g.adj[u] & g.adj[v] & mask
            if meter is not None:
                meter.add(n)
            if not cn:
                continue
            c, d = _complement_colors(min(a, b), max(a, b))
            y = (cn & cm[c - 1]).bit_count() * (cn & cm[d - 1]).bit_count()
            if not c4:
                z += y
            elif g.adj[u] >> v & 1:
                z -= y
            else:
                z += y
    return z


def cid_branch(
    g: Graph,
    coloring: ColoringK,
    rounds: Optional[int],
    seed: int,
    c4: bool = False,
) -> BranchFactory:
    """Budget-aware generator form of the subsampled residue detector."""
    if coloring.k != 4 or coloring.n != g.n:
        raise ValueError("need a 4-coloring matching the graph")
    total_rounds = default_rounds(g.n) if rounds is None else rounds

    def factory(budget: Budget, meter: WorkMeter) -> Branch:
        def run() -> Branch:
            if g.n < 4 or g.m == 0:
                return None
            sizes = [len(cl) for cl in coloring.classes]
            est = g.n + sum(
                sizes[a - 1] * sizes[b - 1] * (sizes[c - 1] + sizes[d - 1] + 1)
                for a, b in _COLOR_PAIRS
                for c, d in [_complement_colors(a, b)]
            )
            rng = rng_from(seed, "cid-c4" if c4 else "cid")
            for _ in range(total_rounds):
                while meter.total + est > budget.granted:
                    yield
                kept = [rng.getrandbits(1) == 0 for _ in range(g.n)]
                meter.add(g.n)
                z = _restricted_z(g, coloring, kept, meter, c4)
                if z % 6 != 0:
                    universe = 0
                    for v, k in enumerate(kept):
                        if k:
                            universe |= 1 << v
                    extract = extract_colorful_c4 if c4 else extract_colorful_diamond
                    witness = extract(
                        g, coloring.class_masks, coloring.color_of, universe, meter
                    )
                    # nonzero residue guarantees a colorful witness survives
                    assert witness is not None
                    return witness
            return None

        return run()

    return factory


def _drive_detection(factory: BranchFactory, tag: str, seed: int) -> DetectionResult:
    value, total = drive(factory)
    if value is None:
        return DetectionResult(
            found=False, witness=None, algorithm_tag=tag, work_units=total, seed=seed
        )
    return DetectionResult(
        found=True, witness=value, algorithm_tag=tag, work_units=total, seed=seed
    )


def detect_cid(
    g: Graph, coloring: ColoringK, rounds: Optional[int] = None, seed: int = 0
) -> DetectionResult:
    """Colorful-diamond detector: repeated half-density subsample + Z mod 6.

    One-sided: a witness is only returned after verification-grade
    extraction, so a diamond-free graph can never produce one.  Misses with
    probability at most (15/16) per round when a colorful diamond exists.
    """
    return _drive_detection(cid_branch(g, coloring, rounds, seed), "cid", seed)


def detect_colorful_c4(
    g: Graph, coloring: ColoringK, rounds: Optional[int] = None, seed: int = 0
) -> DetectionResult:
    """Induced colorful 4-cycle detector via the signed pair statistic."""
    return _drive_detection(
        cid_branch(g, coloring, rounds, seed, c4=True), "cid-c4", seed
    )
