"""Neighborhood clique-partition machinery and the degree-3-vertex search.

A vertex whose neighborhood is free of induced P3s sees a disjoint union of
cliques there.  This module clusters every sampled vertex's outside
neighborhood simultaneously with matrix products (halve incidence edges,
refine clusters by a reachability count, restore the zero-valued group), then
verifies the clusterings with three product-shaped checks.  A vertex whose
outside neighborhood cannot be clustered into cliques is flagged; running
this over a 4-wise isolating set family flags exactly the sampled vertices
whose full neighborhood hides a P3, i.e. the chord endpoints of diamonds.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Optional, Sequence

import numpy as np

from .graphcore import (
    DetectionResult,
    Graph,
    bits_of,
    ceil_log2,
    mask_of,
    rng_from,
    split_seed,
)
from .work import WorkMeter


@dataclass(frozen=True)
class Clustering:
    """Partition of one vertex's outside neighborhood into candidate cliques.

    clusters hold vertex ids; leaders[i] is the unique surviving incidence
    target inside clusters[i] (None when the survivor count differs from
    one); edge_counts[i] is that survivor count.
    """

    owner: int
    clusters: tuple[tuple[int, ...], ...]
    leaders: tuple[Optional[int], ...]
    edge_counts: tuple[int, ...]


@dataclass(frozen=True)
class UniversalFamily:
    """Subsets of a universe isolating any element from any other three."""

    universe: tuple[int, ...]
    sets: tuple[frozenset[int], ...]


def build_universal_family(
    universe: Sequence[int],
    seed: int,
    *,
    sets_per_log: int = 64,
    max_retries: int = 8,
) -> UniversalFamily:
    """Family with: for any distinct a, b, c, d there is a set containing a
    and none of b, c, d.

    Up to four elements, singletons already do it (and give pair separation
    for sizes 2 and 3).  Larger universes use random quarter-density sets,
    64 * ceil(log2 |U|) of them, rebuilt on verification failure.
    """
    uni = tuple(sorted(set(universe)))
    u = len(uni)
    if u <= 1:
        return UniversalFamily(universe=uni, sets=())
    if u <= 4:
        return UniversalFamily(
            universe=uni, sets=tuple(frozenset({a}) for a in uni)
        )
    n_sets = sets_per_log * ceil_log2(u)
    for attempt in range(max_retries):
        rng = rng_from(seed, "family", attempt)
        sets = []
        for _ in range(n_sets):
            members = frozenset(a for a in uni if rng.getrandbits(2) == 0)
            sets.append(members)
        fam = UniversalFamily(universe=uni, sets=tuple(sets))
        if verify_universal_family(fam, seed=split_seed(seed, "verify", attempt)):
            return fam
    raise RuntimeError(
        f"failed to build an isolating family over {u} elements "
        f"after {max_retries} attempts"
    )


def _verify_exhaustive(fam: UniversalFamily) -> bool:
    uni = fam.universe
    u = len(uni)
    if u < 4:
        return True
    n_sets = len(fam.sets)
    if n_sets == 0:
        return False
    member = np.zeros((u, n_sets), dtype=bool)
    for fi, fset in enumerate(fam.sets):
        for ai, a in enumerate(uni):
            if a in fset:
                member[ai, fi] = True
    packed = np.packbits(member, axis=1)
    inv = np.packbits(~member, axis=1)
    # T[a, b] has a bit per set with a inside and b outside
    t = packed[:, None, :] & inv[None, :, :]
    idx = np.arange(u)
    for c in range(u):
        for d in range(c + 1, u):
            mask = inv[c] & inv[d]
            ok = (t & mask).any(axis=2)
            ok[c, :] = True
            ok[d, :] = True
            ok[:, c] = True
            ok[:, d] = True
            ok[idx, idx] = True
            if not ok.all():
                return False
    return True


def _verify_sampled(fam: UniversalFamily, samples: int, seed: int) -> bool:
    uni = fam.universe
    pos = {a: i for i, a in enumerate(uni)}
    masks = [0] * len(uni)
    for fi, fset in enumerate(fam.sets):
        for a in fset:
            masks[pos[a]] |= 1 << fi
    full = (1 << len(fam.sets)) - 1
    rng = rng_from(seed, "spotcheck")
    for _ in range(samples):
        a, b, c, d = rng.sample(range(len(uni)), 4)
        if not masks[a] & ~masks[b] & ~masks[c] & ~masks[d] & full:
            return False
    return True


def verify_universal_family(
    fam: UniversalFamily, *, samples: int = 200_000, seed: int = 0
) -> bool:
    """Exhaustive check up to 64 elements, random quadruples above."""
    if len(fam.universe) <= 64:
        return _verify_exhaustive(fam)
    return _verify_sampled(fam, samples, seed)


def _refine_phases(n: int) -> int:
    return 2 * ceil_log2(max(2, n))


def find_clustering(
    g: Graph, s: Sequence[int], meter: Optional[WorkMeter] = None
) -> dict[int, Clustering]:
    """Cluster each sampled vertex's outside neighborhood, all at once.

    One incidence row per sampled vertex over the outside vertices.  Each
    phase halves the kept incidence edges per cluster (dropping the
    higher-indexed half, never the last edge), refines every cluster by the
    count reachable-in-one-step value (kept edge plus kept-edge-then-edge
    walks), keeps the zero-valued group as its own cluster, and restores the
    zero group's incidence edges.  When the outside neighborhood is a
    disjoint union of cliques, the final clusters are exactly those cliques
    and exactly one incidence edge per cluster survives.
    """
    svert = sorted(set(s))
    for v in svert:
        if not (0 <= v < g.n):
            raise ValueError(f"sampled vertex {v} out of range")
    sset = set(svert)
    outside = [v for v in range(g.n) if v not in sset]
    pos = {v: j for j, v in enumerate(outside)}
    ns, no = len(svert), len(outside)
    if ns == 0:
        return {}
    dense = g.dense()
    if no == 0:
        return {
            v: Clustering(owner=v, clusters=(), leaders=(), edge_counts=())
            for v in svert
        }
    out_idx = np.asarray(outside, dtype=np.intp)
    s_idx = np.asarray(svert, dtype=np.intp)
    a = dense[np.ix_(out_idx, out_idx)].astype(np.int64)
    incidence = dense[np.ix_(s_idx, out_idx)].astype(np.int64)
    clusters: list[list[np.ndarray]] = []
    for si in range(ns):
        nz = np.nonzero(incidence[si])[0]
        clusters.append([nz] if nz.size else [])
    phases = _refine_phases(g.n)
    for _ in range(phases):
        for si in range(ns):
            row = incidence[si]
            for cl in clusters[si]:
                kept = cl[row[cl] == 1]
                if kept.size >= 2:
                    drop = kept[ceil(kept.size / 2) :]
                    row[drop] = 0
        reach = incidence + incidence @ a
        if meter is not None:
            meter.add(ns * no * no + ns * no)
        for si in range(ns):
            row = incidence[si]
            new_clusters: list[np.ndarray] = []
            for cl in clusters[si]:
                vals = reach[si, cl]
                for y in np.unique(vals):
                    group = cl[vals == y]
                    new_clusters.append(group)
                    if y == 0:
                        row[group] = 1
            clusters[si] = new_clusters
    result = {}
    for si, v in enumerate(svert):
        row = incidence[si]
        cl_sorted = sorted(
            (tuple(int(outside[j]) for j in cl) for cl in clusters[si]),
            key=lambda t: t[0],
        )
        leaders = []
        counts = []
        for cl in cl_sorted:
            surv = [u for u in cl if row[pos[u]] == 1]
            counts.append(len(surv))
            leaders.append(surv[0] if len(surv) == 1 else None)
        result[v] = Clustering(
            owner=v,
            clusters=tuple(cl_sorted),
            leaders=tuple(leaders),
            edge_counts=tuple(counts),
        )
    return result


def verify_clustering(
    g: Graph,
    s: Sequence[int],
    clusterings: dict[int, Clustering],
    meter: Optional[WorkMeter] = None,
) -> dict[int, bool]:
    """Certify per sampled vertex that its clusters are its cliques.

    Three checks: each cluster has a unique surviving leader adjacent to the
    whole cluster; no edge joins different clusters of the same vertex
    (cluster-index bit masks against the adjacency product); every member's
    outside degree equals its cluster size minus one (full-indicator
    product).  Input clusterings must exactly partition each vertex's
    outside neighborhood; anything else raises.
    """
    svert = sorted(set(s))
    sset = set(svert)
    outside = [v for v in range(g.n) if v not in sset]
    pos = {v: j for j, v in enumerate(outside)}
    ns, no = len(svert), len(outside)
    for v in svert:
        if v not in clusterings:
            raise ValueError(f"missing clustering for vertex {v}")
        ground = [u for u in bits_of(g.adj[v]) if u not in sset]
        seen: set[int] = set()
        for cl in clusterings[v].clusters:
            for u in cl:
                if u in seen:
                    raise ValueError(f"vertex {u} in two clusters of {v}")
                seen.add(u)
        if seen != set(ground):
            raise ValueError(
                f"clusters of {v} do not cover its outside neighborhood"
            )
    ok = {v: True for v in svert}
    if no == 0:
        for v in svert:
            if clusterings[v].clusters:
                ok[v] = False
        return ok
    # leader check
    for v in svert:
        c = clusterings[v]
        for cl, leader, cnt in zip(c.clusters, c.leaders, c.edge_counts):
            if meter is not None:
                meter.add(len(cl))
            if cnt != 1 or leader is None or leader not in cl:
                ok[v] = False
                break
            lmask = g.adj[leader]
            if any(u != leader and not (lmask >> u & 1) for u in cl):
                ok[v] = False
                break
    dense = g.dense()
    out_idx = np.asarray(outside, dtype=np.intp)
    a = dense[np.ix_(out_idx, out_idx)].astype(np.int64)
    # inter-cluster check: bit masks of 1-based cluster indices
    max_clusters = max((len(clusterings[v].clusters) for v in svert), default=0)
    n_bits = max(1, (max_clusters).bit_length())
    cluster_index = np.zeros((ns, no), dtype=np.int64)
    for si, v in enumerate(svert):
        for ci, cl in enumerate(clusterings[v].clusters, start=1):
            for u in cl:
                cluster_index[si, pos[u]] = ci
    for h in range(n_bits):
        bmat = ((cluster_index >> h) & 1).astype(np.int64)
        prod = bmat @ a
        if meter is not None:
            meter.add(ns * no * no)
        viol = (bmat == 0) & (prod > 0) & (cluster_index > 0)
        for si in np.nonzero(viol.any(axis=1))[0]:
            ok[svert[si]] = False
    # clique check: outside degree inside the ground set is cluster size - 1
    ground_ind = (cluster_index > 0).astype(np.int64)
    deg = ground_ind @ a
    if meter is not None:
        meter.add(ns * no * no)
    for si, v in enumerate(svert):
        if not ok[v]:
            continue
        c = clusterings[v]
        for cl in c.clusters:
            want = len(cl) - 1
            if any(int(deg[si, pos[u]]) != want for u in cl):
                ok[v] = False
                break
    return ok


def find_partition(
    g: Graph, s: Sequence[int], seed: int, meter: Optional[WorkMeter] = None
) -> tuple[frozenset[int], dict[int, Clustering]]:
    """Flag exactly the sampled vertices whose neighborhood hides a P3.

    Runs the clustering over every set of an isolating family built on the
    sample (each run's outside ground is everything off that set, so in-
    sample P3 vertices are exposed by the set isolating their owner), plus
    one run on the full sample whose clusterings are returned for the
    unflagged vertices.
    """
    svert = tuple(sorted(set(s)))
    if not svert:
        return frozenset(), {}
    fam = build_universal_family(svert, split_seed(seed, "family"))
    flagged: set[int] = set()
    for fi, fset in enumerate(fam.sets):
        cl = find_clustering(g, tuple(fset), meter)
        ver = verify_clustering(g, tuple(fset), cl, meter)
        flagged.update(v for v, good in ver.items() if not good)
    cl_s = find_clustering(g, svert, meter)
    ver_s = verify_clustering(g, svert, cl_s, meter)
    flagged.update(v for v, good in ver_s.items() if not good)
    clusterings = {v: cl_s[v] for v in svert if v not in flagged}
    for v, c in clusterings.items():
        # for a verified vertex every cluster keeps exactly one incidence edge
        assert all(cnt == 1 for cnt in c.edge_counts), (v, c.edge_counts)
    return frozenset(flagged), clusterings


def find_deg3_vertex(g: Graph, seed: int) -> DetectionResult:
    """Doubling-density search for a vertex that is a diamond chord endpoint.

    Phase i samples vertices at min(1, 10*ceil(log2 n)/2**i), descending i,
    and flags the sample; a flagged vertex is expanded to a witness by the
    per-vertex scan.  Density-1 phases are identical, so the clamp runs
    once.
    """
    meter = WorkMeter()
    n = g.n
    if n < 4:
        return DetectionResult(
            found=False, witness=None, algorithm_tag="deg3", work_units=0, seed=seed
        )
    clog = ceil_log2(n)
    ran_full = False
    for i in range(clog, 0, -1):
        p = min(1.0, 10.0 * clog / (1 << i))
        if p >= 1.0:
            if ran_full:
                continue
            ran_full = True
            sample = tuple(range(n))
        else:
            rng = rng_from(seed, "deg3-phase", i)
            sample = tuple(v for v in range(n) if rng.random() < p)
            meter.add(n)
        if not sample:
            continue
        flagged, _ = find_partition(g, sample, split_seed(seed, "deg3-part", i), meter)
        if flagged:
            from .sensitive import is_v_in_diamond

            v = min(flagged)
            witness = is_v_in_diamond(g, v, meter)
            assert witness is not None, f"flagged vertex {v} has no witness"
            return DetectionResult(
                found=True,
                witness=witness,
                algorithm_tag="deg3",
                work_units=meter.total,
                seed=seed,
            )
    return DetectionResult(
        found=False,
        witness=None,
        algorithm_tag="deg3",
        work_units=meter.total,
        seed=seed,
    )
