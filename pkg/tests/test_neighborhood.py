"""Isolating families, simultaneous clustering, and the flagged-set scan."""

from __future__ import annotations

from itertools import combinations

import pytest

from diamondsense.generators import (
    gen_clique_extreme,
    gen_gnp,
    gen_independent_extreme,
)
from diamondsense.graphcore import Graph, rng_from
from diamondsense.neighborhood import (
    Clustering,
    UniversalFamily,
    build_universal_family,
    find_clustering,
    find_deg3_vertex,
    find_partition,
    verify_clustering,
    verify_universal_family,
)
from diamondsense.oracle import deg3_vertices_brute, verify_diamond
from diamondsense.work import WorkMeter


def brute_isolating(fam: UniversalFamily) -> bool:
    uni = fam.universe
    if len(uni) < 4:
        return True
    for a in uni:
        for rest in combinations([x for x in uni if x != a], 3):
            if not any(a in s and not (set(rest) & s) for s in fam.sets):
                return False
    return True


def test_family_small_universes():
    assert build_universal_family([], 0).sets == ()
    assert build_universal_family([7], 0).sets == ()
    fam = build_universal_family([3, 1, 4, 1], 0)  # dupes collapse
    assert fam.universe == (1, 3, 4)
    assert fam.sets == (frozenset({1}), frozenset({3}), frozenset({4}))
    fam4 = build_universal_family([0, 1, 2, 3], 0)
    assert len(fam4.sets) == 4
    assert verify_universal_family(fam4, seed=0)


def test_family_random_sizes_are_isolating():
    for u in (5, 8, 16, 33):
        fam = build_universal_family(list(range(u)), seed=u)
        assert len(fam.sets) > 0
        assert verify_universal_family(fam, seed=1)
        if u <= 16:
            assert brute_isolating(fam)


def test_family_deterministic():
    a = build_universal_family(range(12), seed=5)
    b = build_universal_family(range(12), seed=5)
    assert a.sets == b.sets


def test_verify_rejects_non_isolating():
    # two sets cannot isolate anything among 5 elements
    bad = UniversalFamily(
        universe=tuple(range(5)),
        sets=(frozenset({0, 1}), frozenset({2, 3})),
    )
    assert not verify_universal_family(bad, seed=0)


def clusters_are_cliques(g: Graph, s, clusterings) -> bool:
    sset = set(s)
    for v, c in clusterings.items():
        nbrs_out = {u for u in g.nbrs[v] if u not in sset}
        got = {u for cl in c.clusters for u in cl}
        if got != nbrs_out:
            return False
        for cl in c.clusters:
            for a, b in combinations(cl, 2):
                if not g.has_edge(a, b):
                    return False
        for c1, c2 in combinations(c.clusters, 2):
            for a in c1:
                for b in c2:
                    if g.has_edge(a, b):
                        return False
    return True


def test_clustering_on_clique_union_neighborhood():
    # vertex 0 sees two disjoint triangles; they must come back as clusters
    edges = [(0, v) for v in range(1, 7)]
    edges += [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]
    g = Graph(7, edges)
    cl = find_clustering(g, [0])
    c = cl[0]
    assert sorted(tuple(sorted(x)) for x in c.clusters) == [(1, 2, 3), (4, 5, 6)]
    assert all(cnt == 1 for cnt in c.edge_counts)
    ver = verify_clustering(g, [0], cl)
    assert ver[0] is True


def test_clustering_flags_p3_neighborhood():
    # vertex 0's neighborhood is a path on 3 vertices: not a clique union
    g = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)])
    cl = find_clustering(g, [0])
    ver = verify_clustering(g, [0], cl)
    assert ver[0] is False


def outside_has_induced_p3(g: Graph, v: int, sset) -> bool:
    nbrs = [u for u in g.nbrs[v] if u not in sset]
    for a, b, c in combinations(nbrs, 3):
        deg = g.has_edge(a, b) + g.has_edge(b, c) + g.has_edge(a, c)
        if deg == 2:
            return True
    return False


def test_clustering_verified_iff_clique_union():
    for seed in range(20):
        g = gen_gnp(12, 0.35, 1700 + seed)
        s = sorted(rng_from(seed, "pick").sample(range(g.n), 4))
        cl = find_clustering(g, s)
        ver = verify_clustering(g, s, cl)
        sset = set(s)
        for v in s:
            assert ver[v] == (not outside_has_induced_p3(g, v, sset))
        assert clusters_are_cliques(g, s, {v: cl[v] for v in s if ver[v]})


def test_verify_clustering_rejects_bad_partition():
    g = Graph(4, [(0, 1), (0, 2), (1, 2)])
    cl = find_clustering(g, [0])
    broken = dict(cl)
    c = broken[0]
    broken[0] = Clustering(
        owner=c.owner, clusters=((1,),), leaders=c.leaders[:1], edge_counts=(1,)
    )
    with pytest.raises(ValueError):
        verify_clustering(g, [0], broken)


def test_find_partition_flags_exactly_sampled_deg3():
    for seed in range(15):
        g = gen_gnp(11, 0.4, 1800 + seed)
        s = sorted(rng_from(seed, "s").sample(range(g.n), 5))
        flagged, clusterings = find_partition(g, s, seed=seed)
        brute = deg3_vertices_brute(g)
        assert flagged == brute & set(s)
        assert set(clusterings) == set(s) - flagged
        assert clusters_are_cliques(g, s, clusterings)


def test_find_partition_empty_sample():
    g = gen_gnp(6, 0.5, 0)
    assert find_partition(g, [], seed=0) == (frozenset(), {})


def test_find_partition_meter():
    g = gen_gnp(10, 0.4, 3)
    meter = WorkMeter()
    find_partition(g, [0, 1, 2], seed=0, meter=meter)
    assert meter.total > 0


def test_find_deg3_vertex_polarity():
    for seed in range(15):
        g = gen_gnp(10, 0.4, 1900 + seed)
        res = find_deg3_vertex(g, seed)
        has = len(deg3_vertices_brute(g)) > 0
        assert res.found == has
        if res.found:
            assert verify_diamond(g, res.witness)
        assert res.algorithm_tag == "deg3"


def test_find_deg3_vertex_extremes():
    assert find_deg3_vertex(gen_clique_extreme(6), 0).found
    assert find_deg3_vertex(gen_independent_extreme(6), 0).found
    assert not find_deg3_vertex(Graph(3, [(0, 1)]), 0).found
