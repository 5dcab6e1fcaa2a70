"""Window-filtered edge processing: the clique-or-witness heavy-side detector.

For a diamond whose chord triangle sits in a large clique, some edge of that
clique has a closed common neighborhood W(e) of size between r and 2r for the
right power-of-two r.  Sampling vertices at density ~log(n)/r and keeping
only sampled edges whose window lands in [r, 2r] leaves a short list; each
popped edge either exposes a witness directly (its window is not a clique),
catches an outside vertex with two window neighbors, or lets us discard every
remaining listed edge inside the sampled window.  A round-robin over the
log(n) values of r covers every possible heaviness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphcore import DetectionResult, Graph, bits_of, ceil_log2, rng_from
from .work import Branch, BranchFactory, Budget, WorkMeter, drive, race

SAMPLING_CONSTANT = 128


@dataclass(frozen=True)
class CandidateEdgeSet:
    """Output of the sampling pass for one window size r.

    edges are the surviving edges of the sampled subgraph (both endpoints
    sampled) whose full-graph window size |W(e)| lies in [r, 2r], in
    lexicographic order; w_sizes is parallel.  sample is the sampled vertex
    set.
    """

    r: int
    sample: frozenset[int]
    edges: tuple[tuple[int, int], ...]
    w_sizes: tuple[int, ...]


@dataclass(frozen=True)
class ProcessOutcome:
    witness: Optional[tuple[int, int, int, int]]
    edges_processed: int
    removed_part3: int


def build_candidates(
    g: Graph,
    r: int,
    seed: int,
    sampling_constant: int = SAMPLING_CONSTANT,
    meter: Optional[WorkMeter] = None,
) -> CandidateEdgeSet:
    """Sample vertices at min(1, c*ceil(log2 n)/r); keep windowed edges.

    The window |W(e)| counts common neighbors in the full graph plus the two
    endpoints, so discarding out-of-window edges never loses the windowed
    edge a heavy diamond is guaranteed to have.
    """
    if r < 1:
        raise ValueError("r must be positive")
    n = g.n
    if n < 2:
        return CandidateEdgeSet(r=r, sample=frozenset(range(n)), edges=(), w_sizes=())
    p = min(1.0, sampling_constant * ceil_log2(n) / r)
    rng = rng_from(seed, "heavy-sample", r)
    smask = 0
    for v in range(n):
        if p >= 1.0 or rng.random() < p:
            smask |= 1 << v
    if meter is not None:
        meter.add(n)
    edges = []
    sizes = []
    for u, v in g.edges():
        if meter is not None:
            meter.add(1)
        if not (smask >> u & 1 and smask >> v & 1):
            continue
        w = (g.adj[u] & g.adj[v]).bit_count() + 2
        if meter is not None:
            meter.add(n)
        if r <= w <= 2 * r:
            edges.append((u, v))
            sizes.append(w)
    return CandidateEdgeSet(
        r=r,
        sample=frozenset(bits_of(smask)),
        edges=tuple(edges),
        w_sizes=tuple(sizes),
    )


def _pop_edge(
    g: Graph,
    x: int,
    y: int,
    meter: Optional[WorkMeter],
) -> tuple[Optional[tuple[int, int, int, int]], int]:
    """Parts 1 and 2 for one edge.  Returns (witness or None, W mask)."""
    wmask = (g.adj[x] & g.adj[y]) | (1 << x) | (1 << y)
    if meter is not None:
        meter.add(g.n)
    # Part 1: W must be a clique; first missing pair (lexicographic) plus
    # the endpoints is a diamond with chord (x, y)
    for w in bits_of(wmask):
        missing = wmask & ~g.adj[w] & ~(1 << w)
        if meter is not None:
            meter.add(g.n)
        missing >>= w + 1
        if missing:
            z = (missing & -missing).bit_length() + w
            return (x, y, w, z), wmask
    # Part 2: an outside vertex adjacent to two window members closes a
    # diamond with those two as the chord and the endpoint it misses as the
    # second wing
    count: dict[int, int] = {}
    first: dict[int, int] = {}
    for w in bits_of(wmask):
        for z in g.nbrs[w]:
            if meter is not None:
                meter.add(1)
            if wmask >> z & 1:
                continue
            c = count.get(z, 0) + 1
            count[z] = c
            if c == 1:
                first[z] = w
            else:
                endpoint = x if not (g.adj[z] >> x & 1) else y
                return (first[z], w, z, endpoint), wmask
    return None, wmask


def process_edges(
    g: Graph, c: CandidateEdgeSet, meter: Optional[WorkMeter] = None
) -> ProcessOutcome:
    """Pop listed edges in order; witness, or discard within sampled windows.

    Edges removed because both endpoints lie inside a processed sampled
    window are never popped and do not count as processed.
    """
    smask = 0
    for v in c.sample:
        smask |= 1 << v
    alive = [True] * len(c.edges)
    processed = 0
    removed = 0
    for i, (x, y) in enumerate(c.edges):
        if not alive[i]:
            continue
        alive[i] = False
        processed += 1
        witness, wmask = _pop_edge(g, x, y, meter)
        if witness is not None:
            return ProcessOutcome(witness, processed, removed)
        # Part 3: every remaining listed edge inside S-intersect-W is covered
        # by the clique just certified and can be dropped
        sw = smask & wmask
        for j in range(i + 1, len(c.edges)):
            if not alive[j]:
                continue
            if meter is not None:
                meter.add(1)
            a, b = c.edges[j]
            if sw >> a & 1 and sw >> b & 1:
                alive[j] = False
                removed += 1
    return ProcessOutcome(None, processed, removed)


def _window_list(g: Graph, x: int, y: int, meter: WorkMeter) -> list[int]:
    """Common neighbors of x and y by probing the sparser endpoint's list."""
    a, b = (x, y) if len(g.nbrs[x]) <= len(g.nbrs[y]) else (y, x)
    row = g.adj[b]
    meter.add(len(g.nbrs[a]) + 1)
    return [w for w in g.nbrs[a] if row >> w & 1]


def _pop_edge_probes(
    g: Graph, x: int, y: int, wl: list[int], meter: WorkMeter
) -> Optional[tuple[int, int, int, int]]:
    """Parts 1 and 2 with per-pair probes; wl is W(x,y) sorted ascending.

    Visits pairs and outside vertices in the same order as _pop_edge, so
    the two forms return identical witnesses; only the charges differ.
    """
    for i, w in enumerate(wl):
        row = g.adj[w]
        for z in wl[i + 1 :]:
            meter.add(1)
            if not (row >> z & 1):
                return (x, y, w, z)
    wmask = 0
    for w in wl:
        wmask |= 1 << w
    count: dict[int, int] = {}
    first: dict[int, int] = {}
    for w in wl:
        for z in g.nbrs[w]:
            meter.add(1)
            if wmask >> z & 1:
                continue
            c = count.get(z, 0) + 1
            count[z] = c
            if c == 1:
                first[z] = w
            else:
                endpoint = x if not (g.adj[z] >> x & 1) else y
                return (first[z], w, z, endpoint)
    return None


def heavy_branch(
    g: Graph, r: int, seed: int, sampling_constant: int = SAMPLING_CONSTANT
) -> BranchFactory:
    """Racing form of one window size: discover and pop edges in one pass.

    Pops each in-window edge the moment the lex scan reaches it instead of
    listing all candidates first, and charges adjacency probes rather than
    whole-row scans, so a narrow window races at its true cost.  Pop order,
    part-3 skips, and witnesses match the build_candidates/process_edges
    pair exactly.
    """

    def factory(budget: Budget, meter: WorkMeter) -> Branch:
        def run() -> Branch:
            n = g.n
            if n < 4:
                return None
            if 2 * r < 4:
                # a window spans at most 2r vertices, too few to hold a
                # four-vertex witness; scanning would be pure overhead
                return None
            while meter.total + n > budget.granted:
                yield
            p = min(1.0, sampling_constant * ceil_log2(n) / r)
            rng = rng_from(seed, "heavy-sample", r)
            smask = 0
            for v in range(n):
                if p >= 1.0 or rng.random() < p:
                    smask |= 1 << v
            meter.add(n)
            certs: list[int] = []
            for x, y in g.edges():
                scan_est = min(len(g.nbrs[x]), len(g.nbrs[y])) + len(certs) + 2
                while meter.total + scan_est > budget.granted:
                    yield
                meter.add(1)
                if not (smask >> x & 1 and smask >> y & 1):
                    continue
                members = _window_list(g, x, y, meter)
                w = len(members) + 2
                if not (r <= w <= 2 * r):
                    continue
                # Part 3: skip edges inside a sampled window already
                # certified as a clique
                covered = False
                for sw in certs:
                    meter.add(1)
                    if sw >> x & 1 and sw >> y & 1:
                        covered = True
                        break
                if covered:
                    continue
                wl = sorted(members + [x, y])
                pop_est = w * w + sum(len(g.nbrs[u]) for u in wl) + 2
                meter.add(len(wl))
                while meter.total + pop_est > budget.granted:
                    yield
                witness = _pop_edge_probes(g, x, y, wl, meter)
                if witness is not None:
                    return witness
                wmask = 0
                for u in wl:
                    wmask |= 1 << u
                certs.append(smask & wmask)
            return None

        return run()

    return factory


def find_heavy_helper(g: Graph, r: int, seed: int) -> DetectionResult:
    """Run one window size to completion."""
    value, total = drive(heavy_branch(g, r, seed))
    return DetectionResult(
        found=value is not None,
        witness=value,
        algorithm_tag=f"heavy[r={r}]",
        work_units=total,
        seed=seed,
    )


def heavy_r_values(n: int) -> list[int]:
    """Window sizes raced: powers of two up to just past n."""
    if n < 2:
        return [1]
    return [1 << j for j in range(ceil_log2(n) + 1)]


def detect_heavy_roundrobin(g: Graph, seed: int) -> DetectionResult:
    """Race every power-of-two window size with doubling work slices."""
    entries = [
        (f"heavy[r={r}]", heavy_branch(g, r, seed)) for r in heavy_r_values(g.n)
    ]
    value, tag, total = race(entries)
    return DetectionResult(
        found=value is not None,
        witness=value,
        algorithm_tag=tag if tag is not None else "heavy-rr",
        work_units=total,
        seed=seed,
    )
