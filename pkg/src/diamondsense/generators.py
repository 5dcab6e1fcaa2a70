"""Instance generators: extremes, lower-bound family, planted counts, G(n,p).

Each generator is deterministic in its seed.  gen_planted returns the exact
achieved diamond count, computable in polynomial time from the per-chord-edge
formula, so sweeps can label instances by true witness count at any scale.
"""

from __future__ import annotations

from math import ceil
from typing import Optional

import numpy as np

from .graphcore import Graph, bits_of, split_seed, rng_from
from .work import WorkMeter


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), each unordered pair independently an edge."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p must be in [0, 1], got {p}")
    if n < 2:
        return Graph(n, [])
    rng = np.random.Generator(np.random.PCG64(split_seed(seed, "gnp", n)))
    iu, iv = np.triu_indices(n, 1)
    keep = rng.random(iu.shape[0]) < p
    return Graph(n, list(zip(iu[keep].tolist(), iv[keep].tolist())))


def exact_diamond_count(g: Graph, meter: Optional[WorkMeter] = None) -> int:
    """Exact number of induced diamonds, counted at the chord edge.

    For each edge (u, v) the diamonds with that chord are exactly the
    non-adjacent pairs among the common neighbors, so the total is a
    polynomial-time sum.  Charges one bitset row (n units) per common
    neighbor inspected.
    """
    total = 0
    for u, v in g.edges():
        cn = g.adj[u] & g.adj[v]
        if meter is not None:
            meter.add(g.n)
        for w in bits_of(cn):
            above = (cn & ~g.adj[w]) >> (w + 1)
            total += above.bit_count()
            if meter is not None:
                meter.add(g.n)
    return total


def gen_clique_extreme(d: int) -> Graph:
    """Every diamond heavy: a (d+1)-clique plus one pendant wing.

    Vertices 0, 1 are the chord, vertex 2 the lone outside wing adjacent to
    both chord ends, vertices 3..d+1 fill the clique.  Exactly d-1 diamonds
    (chord (0,1), wings (2, w) for clique fill w), all of whose chord
    triangles live in the big clique.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    clique = [0, 1] + list(range(3, d + 2))
    edges = [(a, b) for i, a in enumerate(clique) for b in clique[i + 1 :]]
    edges.append((0, 2))
    edges.append((1, 2))
    return Graph(d + 2, edges)


def gen_independent_extreme(d: int) -> Graph:
    """Every diamond light: one chord edge plus d independent wings.

    Vertices 0, 1 adjacent; wings 2..d+1 each adjacent to both chord ends
    and to nothing else.  C(d, 2) diamonds, no clique beyond triangles.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    edges = [(0, 1)]
    for w in range(2, d + 2):
        edges.append((0, w))
        edges.append((1, w))
    return Graph(d + 2, edges)


def gen_tripartite_lb(n: int, p: int, seed: int, yes_case: bool) -> Graph:
    """Triangle-detection lower-bound shape with a duplicated middle part.

    Three parts: first part and third part of size n each, middle base part
    of size ceil(n/p) whose vertices are then duplicated p times (duplicates
    share their base neighborhood).  Cross-part pairs are edges with
    probability 1/2, then every first-to-third edge closing a triangle is
    deleted (one such edge per triangle, batched, repeated until none
    remain).  The No case stops there: triangle-free, hence zero diamonds.
    The Yes case plants one triangle before duplication, so the p duplicates
    of its middle vertex pairwise form diamonds on the planted cross edge:
    at least C(p, 2) diamonds, still zero K4s (any 4 vertices repeat a part,
    and parts plus duplicate groups are independent sets).

    Layout: first part 0..n-1, third part n..2n-1, duplicates of middle base
    vertex j as 2n + copy*ceil(n/p) + j.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if p < 1:
        raise ValueError("p must be at least 1")
    b = ceil(n / p)
    rng = rng_from(seed, "tripartite", n, p)
    ab = [[j for j in range(b) if rng.getrandbits(1)] for _ in range(n)]
    cb = [[j for j in range(b) if rng.getrandbits(1)] for _ in range(n)]
    ac = {(a, c) for a in range(n) for c in range(n) if rng.getrandbits(1)}

    ab_masks = [sum(1 << j for j in row) for row in ab]
    cb_masks = [sum(1 << j for j in row) for row in cb]
    while True:
        closing = [(a, c) for (a, c) in ac if ab_masks[a] & cb_masks[c]]
        if not closing:
            break
        ac.difference_update(closing)
    if yes_case:
        a0 = rng.randrange(n)
        c0 = rng.randrange(n)
        j0 = rng.randrange(b)
        if j0 not in ab[a0]:
            ab[a0].append(j0)
        if j0 not in cb[c0]:
            cb[c0].append(j0)
        ac.add((a0, c0))

    def mid(copy: int, j: int) -> int:
        return 2 * n + copy * b + j

    edges = [(a, n + c) for (a, c) in sorted(ac)]
    for a in range(n):
        for j in ab[a]:
            for copy in range(p):
                edges.append((a, mid(copy, j)))
    for c in range(n):
        for j in cb[c]:
            for copy in range(p):
                edges.append((n + c, mid(copy, j)))
    return Graph(2 * n + p * b, edges)


def gen_planted(n: int, base_p: float, t_target: int, seed: int) -> tuple[Graph, int]:
    """Random base plus isolated-vertex diamond gadgets to reach t_target.

    Starts from G(n, base_p), counts its diamonds exactly, then repeatedly
    spends four currently isolated vertices on a fresh diamond gadget (chord
    plus two non-adjacent wings, no outside edges), each adding exactly one
    diamond.  Returns (graph, achieved_t) with achieved_t >= t_target exact.
    Raises ValueError when the isolated-vertex supply cannot reach the
    target.
    """
    if t_target < 0:
        raise ValueError("t_target must be non-negative")
    base = gen_gnp(n, base_p, split_seed(seed, "planted-base"))
    achieved = exact_diamond_count(base)
    edges = list(base.edges())
    isolated = [v for v in range(n) if base.degree(v) == 0]
    idx = 0
    while achieved < t_target:
        if idx + 4 > len(isolated):
            raise ValueError(
                f"cannot reach t_target={t_target}: reached {achieved} diamonds "
                f"and the base graph has only {len(isolated)} isolated vertices "
                f"for gadgets"
            )
        a, b, c, d = isolated[idx : idx + 4]
        idx += 4
        edges.extend([(a, b), (a, c), (a, d), (b, c), (b, d)])
        achieved += 1
    return Graph(n, edges), achieved
