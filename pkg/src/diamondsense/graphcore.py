"""Core types: bitmask graphs, 4-colorings, dyadic sampling vectors, seeds.

Adjacency lives in one Python int per vertex (bit v of adj[u] set iff uv is an
edge) so neighborhood intersections are single AND operations regardless of
degree.  Sorted neighbor tuples are kept alongside for degree-bounded scans.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 step; the mixer behind all seed derivation."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _fnv1a(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h = ((h ^ b) * 0x100000001B3) & _MASK64
    return h


def split_seed(seed: int, *tags: int | str) -> int:
    """Derive a 64-bit sub-seed from a seed and a path of int/str tags.

    Every randomized operation draws from a sub-seed produced here, so a run
    is reproducible from its top-level seed alone and sibling operations get
    independent streams.
    """
    h = splitmix64(seed & _MASK64)
    for tag in tags:
        if isinstance(tag, int):
            h = splitmix64(h ^ (tag & _MASK64))
        else:
            h = splitmix64(h ^ _fnv1a(tag.encode()))
    return h


def rng_from(seed: int, *tags: int | str) -> random.Random:
    return random.Random(split_seed(seed, *tags))


def ceil_log2(n: int) -> int:
    """Smallest j with 2**j >= n.  ceil_log2(1) == 0."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n - 1).bit_length()


def bits_of(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable undirected simple graph on vertices 0..n-1."""

    __slots__ = ("n", "m", "adj", "nbrs", "_dense")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            m += 1
        self.n = n
        self.m = m
        self.adj = adj
        self.nbrs = tuple(tuple(bits_of(row)) for row in adj)
        self._dense = None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.nbrs[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographic."""
        for u in range(self.n):
            for v in self.nbrs[u]:
                if v > u:
                    yield (u, v)

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", tuple[int, ...]]:
        """Subgraph on the given vertices; returns (graph, old-id of each new id)."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        es = []
        for i, v in enumerate(keep):
            for w in self.nbrs[v]:
                if w in pos and pos[w] > i:
                    es.append((i, pos[w]))
        return Graph(len(keep), es), tuple(keep)

    def dense(self):
        """Cached n x n uint8 adjacency matrix (numpy), built on demand."""
        if self._dense is None:
            import numpy as np

            nbytes = (self.n + 7) // 8
            if self.n == 0:
                self._dense = np.zeros((0, 0), dtype=np.uint8)
            else:
                raw = b"".join(row.to_bytes(nbytes, "little") for row in self.adj)
                packed = np.frombuffer(raw, dtype=np.uint8).reshape(self.n, nbytes)
                self._dense = np.unpackbits(packed, axis=1, bitorder="little")[:, : self.n]
        return self._dense

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        """Parse the edge-list format: header "n m", then m lines "u v".

        0-based endpoints, blank lines and '#' comments ignored.  Raises
        ValueError on malformed input, a count mismatch, self-loops,
        duplicates, or out-of-range endpoints.
        """
        rows: list[tuple[int, int]] = []
        header: Optional[tuple[int, int]] = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected two integers, got {raw!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: expected two integers, got {raw!r}") from exc
            if header is None:
                header = (a, b)
            else:
                rows.append((a, b))
        if header is None:
            raise ValueError("empty graph file")
        n, m = header
        if n < 0 or m < 0:
            raise ValueError(f"bad header n={n} m={m}")
        if len(rows) != m:
            raise ValueError(f"header says {m} edges, file has {len(rows)}")
        return cls(n, rows)


def graph_sha256(g: Graph) -> str:
    return hashlib.sha256(g.to_text().encode()).hexdigest()


def common_neighbors(g: Graph, u: int, v: int) -> set[int]:
    """N(u) intersect N(v).  u and v must be distinct, in-range vertices."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"vertex out of range: ({u}, {v})")
    if u == v:
        raise ValueError("vertices must be distinct")
    return set(bits_of(g.adj[u] & g.adj[v]))


def closed_common_neighborhood(g: Graph, u: int, v: int) -> set[int]:
    """W(uv) = (N(u) intersect N(v)) union {u, v}; requires the edge uv."""
    if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
        raise ValueError(f"bad vertex pair ({u}, {v})")
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    out = set(bits_of(g.adj[u] & g.adj[v]))
    out.add(u)
    out.add(v)
    return out


class ColoringK:
    """Vertex coloring with colors 1..k, k in {2, 3, 4}.  Not required proper."""

    __slots__ = ("k", "color_of", "classes", "class_masks")

    def __init__(self, k: int, color_of: Sequence[int]):
        if k not in (2, 3, 4):
            raise ValueError(f"k must be 2, 3, or 4, got {k}")
        colors = tuple(color_of)
        for v, c in enumerate(colors):
            if not (1 <= c <= k):
                raise ValueError(f"vertex {v} has color {c}, expected 1..{k}")
        self.k = k
        self.color_of = colors
        classes: list[list[int]] = [[] for _ in range(k)]
        for v, c in enumerate(colors):
            classes[c - 1].append(v)
        self.classes = tuple(tuple(cl) for cl in classes)
        self.class_masks = tuple(mask_of(cl) for cl in self.classes)

    @property
    def n(self) -> int:
        return len(self.color_of)

    def to_text(self) -> str:
        return "\n".join(str(c) for c in self.color_of) + ("\n" if self.color_of else "")

    @classmethod
    def from_text(cls, text: str, n: int, k: int = 4) -> "ColoringK":
        """One color per line, vertex order; '#' comments ignored."""
        vals = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                vals.append(int(line))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: expected an integer color") from exc
        if len(vals) != n:
            raise ValueError(f"coloring has {len(vals)} entries, graph has {n} vertices")
        return cls(k, vals)


def random_coloring(g: Graph, k: int, seed: int) -> ColoringK:
    """Uniform independent colors 1..k, deterministic in the seed."""
    rng = rng_from(seed, "coloring", k)
    return ColoringK(k, [rng.randrange(1, k + 1) for _ in range(g.n)])


class SamplingVector:
    """Per-color keep probabilities, each an exact dyadic 2**-j with j >= 0."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: Sequence[int]):
        exps = tuple(exponents)
        for j in exps:
            if j < 0:
                raise ValueError("exponents must be non-negative")
        self.exponents = exps

    @property
    def probs(self) -> tuple[float, ...]:
        return tuple(2.0 ** -j for j in self.exponents)

    def weight(self) -> float:
        """Product of the probabilities."""
        return 2.0 ** -sum(self.exponents)

    def w_heavy(self) -> float:
        """weight / min probability: the schedule key for the heavy side."""
        return 2.0 ** -(sum(self.exponents) - max(self.exponents))

    def __repr__(self) -> str:
        return f"SamplingVector{self.exponents}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SamplingVector) and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash(self.exponents)


def enumerate_sampling_family(n: int, k: int) -> list[SamplingVector]:
    """All k-vectors over {2**-j : 0 <= j <= ceil_log2(n)}, lexicographic.

    The family ranges over the original instance size n, so every per-color
    density down to 1/n is available; (ceil_log2(n)+1)**k vectors total.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    top = ceil_log2(n)
    return [SamplingVector(t) for t in product(range(top + 1), repeat=k)]


def sample_vertices(g: Graph, coloring: ColoringK, p: SamplingVector, seed: int) -> set[int]:
    """Keep each vertex independently with its color's probability.

    A vertex of color c survives iff a fresh j_c-bit draw is all zeros, which
    hits 2**-j_c exactly (no float thresholds).  Deterministic in seed.
    """
    if coloring.n != g.n:
        raise ValueError("coloring size does not match graph")
    if len(p.exponents) != coloring.k:
        raise ValueError("sampling vector arity does not match coloring")
    rng = rng_from(seed, "sample")
    kept = set()
    for v in range(g.n):
        j = p.exponents[coloring.color_of[v] - 1]
        if j == 0 or rng.getrandbits(j) == 0:
            kept.add(v)
    return kept


@dataclass(frozen=True)
class DetectionResult:
    """Outcome of one detector run.

    witness is a 4-tuple of vertices (ordering convention per detector), or
    None.  certified=True means the detector proved the target absent, not
    merely failed to find it.  work_units is the detector's metered total.
    """

    found: bool
    witness: Optional[tuple[int, int, int, int]]
    algorithm_tag: str
    work_units: int
    seed: int
    certified: bool = False
