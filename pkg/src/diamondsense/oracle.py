"""Exhaustive ground truth: 4-vertex motif census, witness checks, 4-SUM count.

Everything here is brute force on purpose.  The detectors are probabilistic
and clever; this module is neither, which is what makes it a trustworthy
referee for them.  Intended for small instances (the quad scan is C(n,4)).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .graphcore import ColoringK, Graph, bits_of


def classify_four(g: Graph, a: int, b: int, c: int, d: int):
    """Classify the induced subgraph on four distinct vertices.

    Returns (kind, detail): kind in {"k4", "diamond", "c4", None}.  For a
    diamond, detail = (u, v, w, x) with chord edge (u, v) and non-adjacent
    wings (w, x).  For a 4-cycle, detail is a cyclic ordering.
    """
    quad = (a, b, c, d)
    missing = []
    for i in range(4):
        for j in range(i + 1, 4):
            if not g.has_edge(quad[i], quad[j]):
                missing.append((quad[i], quad[j]))
                if len(missing) > 2:
                    return (None, None)
    if not missing:
        return ("k4", None)
    if len(missing) == 1:
        w, x = missing[0]
        u, v = (t for t in quad if t != w and t != x)
        return ("diamond", (u, v, w, x))
    # two missing pairs: an induced C4 iff they are disjoint (the diagonals)
    (u, v), (p, q) = missing
    if u in (p, q) or v in (p, q):
        return (None, None)
    return ("c4", (u, p, v, q))


def _max_clique_size(g: Graph, cand: int) -> int:
    # plain branch and bound; candidate sets here are common neighborhoods
    # of a triangle, so they are small in practice
    best = 0

    def expand(size: int, rest: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while rest:
            if size + rest.bit_count() <= best:
                return
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            expand(size + 1, rest & g.adj[v])

    expand(0, cand)
    return best


def max_clique_with_triangle(g: Graph, a: int, b: int, c: int) -> int:
    """Size of the largest clique containing the triangle {a, b, c}."""
    cand = g.adj[a] & g.adj[b] & g.adj[c]
    return 3 + _max_clique_size(g, cand)


@dataclass(frozen=True)
class MotifCensus:
    """Full 4-vertex accounting for one graph.

    t: induced diamonds, s: K4s, c4: induced 4-cycles.  diamond_vertices is
    the union of all diamond vertex sets; deg3_vertices the union of chord
    endpoints (equivalently: vertices whose neighborhood contains an induced
    P3).  diamonds lists one witness per diamond, chord first; heaviness[i]
    is the largest clique containing either chord triangle of diamonds[i],
    and r_max is its maximum (0 when t == 0).
    """

    t: int
    s: int
    c4: int
    diamond_vertices: frozenset[int]
    deg3_vertices: frozenset[int]
    r_max: int
    diamonds: tuple[tuple[int, int, int, int], ...]
    heaviness: tuple[int, ...]

    def light_count(self, r: int) -> int:
        """Diamonds whose chord triangles both avoid every clique of size >= r."""
        return sum(1 for h in self.heaviness if h < r)


def census(g: Graph) -> MotifCensus:
    t = s = c4 = 0
    diamond_vertices: set[int] = set()
    deg3_vertices: set[int] = set()
    diamonds = []
    heaviness = []
    for quad in combinations(range(g.n), 4):
        kind, detail = classify_four(g, *quad)
        if kind == "k4":
            s += 1
        elif kind == "diamond":
            t += 1
            u, v, w, x = detail
            diamonds.append(detail)
            diamond_vertices.update(quad)
            deg3_vertices.add(u)
            deg3_vertices.add(v)
            h = max(
                max_clique_with_triangle(g, u, v, w),
                max_clique_with_triangle(g, u, v, x),
            )
            heaviness.append(h)
        elif kind == "c4":
            c4 += 1
    return MotifCensus(
        t=t,
        s=s,
        c4=c4,
        diamond_vertices=frozenset(diamond_vertices),
        deg3_vertices=frozenset(deg3_vertices),
        r_max=max(heaviness, default=0),
        diamonds=tuple(diamonds),
        heaviness=tuple(heaviness),
    )


def _check_quad(g: Graph, witness) -> tuple[int, int, int, int]:
    quad = tuple(witness)
    if len(quad) != 4:
        raise ValueError(f"witness must have 4 vertices, got {len(quad)}")
    for v in quad:
        if not isinstance(v, int) or not (0 <= v < g.n):
            raise ValueError(f"witness vertex {v!r} out of range")
    if len(set(quad)) != 4:
        raise ValueError(f"witness vertices must be distinct: {quad}")
    return quad  # type: ignore[return-value]


def verify_diamond(g: Graph, witness) -> bool:
    """True iff witness = (u, v, w, x) induces a diamond with chord (u, v).

    Malformed tuples (wrong arity, repeats, out of range) raise ValueError;
    a well-formed non-witness just returns False.
    """
    u, v, w, x = _check_quad(g, witness)
    return (
        g.has_edge(u, v)
        and g.has_edge(u, w)
        and g.has_edge(u, x)
        and g.has_edge(v, w)
        and g.has_edge(v, x)
        and not g.has_edge(w, x)
    )


def verify_induced_c4(g: Graph, witness) -> bool:
    """True iff witness = (a, b, c, d) is an induced 4-cycle in that cyclic order."""
    a, b, c, d = _check_quad(g, witness)
    return (
        g.has_edge(a, b)
        and g.has_edge(b, c)
        and g.has_edge(c, d)
        and g.has_edge(d, a)
        and not g.has_edge(a, c)
        and not g.has_edge(b, d)
    )


@dataclass(frozen=True)
class ColorfulCensus:
    """Counts restricted to 4-sets whose vertices carry 4 distinct colors."""

    t: int
    s: int
    c4: int


def colorful_census(g: Graph, coloring: ColoringK) -> ColorfulCensus:
    if coloring.k != 4:
        raise ValueError("colorful census needs a 4-coloring")
    if coloring.n != g.n:
        raise ValueError("coloring size does not match graph")
    t = s = c4 = 0
    col = coloring.color_of
    for quad in combinations(range(g.n), 4):
        if len({col[v] for v in quad}) != 4:
            continue
        kind, _ = classify_four(g, *quad)
        if kind == "k4":
            s += 1
        elif kind == "diamond":
            t += 1
        elif kind == "c4":
            c4 += 1
    return ColorfulCensus(t=t, s=s, c4=c4)


def is_deg3_vertex(g: Graph, v: int) -> bool:
    """Brute check: does N(v) contain an induced path on three vertices?

    Independent of the census route (which collects chord endpoints); the
    two agree because v sees a P3 (a, b, c) iff {v, b, a, c} is a diamond
    with chord (v, b).
    """
    for b in g.nbrs[v]:
        inside = g.adj[b] & g.adj[v]
        for a in bits_of(inside):
            # need some c in inside with c not adjacent to a
            if inside & ~g.adj[a] & ~(1 << a):
                return True
    return False


def deg3_vertices_brute(g: Graph) -> frozenset[int]:
    return frozenset(v for v in range(g.n) if is_deg3_vertex(g, v))


def foursum_census(arrays: Sequence[Sequence[int]]) -> int:
    """Number of index quadruples (i1, i2, i3, i4), one per array, summing to 0."""
    if len(arrays) != 4:
        raise ValueError("expected exactly four arrays")
    a1, a2, a3, a4 = arrays
    count = 0
    # partial-sum dict over the last array keeps this at O(n^3) for the
    # sizes the oracle sees
    from collections import Counter

    last = Counter(a4)
    for x in a1:
        for y in a2:
            for z in a3:
                count += last[-(x + y + z)]
    return count


def foursum_solutions(arrays: Sequence[Sequence[int]]):
    """All solution index quadruples, lexicographic."""
    if len(arrays) != 4:
        raise ValueError("expected exactly four arrays")
    a1, a2, a3, a4 = arrays
    out = []
    for i, x in enumerate(a1):
        for j, y in enumerate(a2):
            for k, z in enumerate(a3):
                target = -(x + y + z)
                for l, w in enumerate(a4):
                    if w == target:
                        out.append((i, j, k, l))
    return out
