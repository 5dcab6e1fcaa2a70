"""Window-filtered edge processing and the round-robin over window sizes."""

from __future__ import annotations

import pytest

from diamondsense.generators import (
    gen_clique_extreme,
    gen_gnp,
    gen_independent_extreme,
)
from diamondsense.graphcore import Graph
from diamondsense.heavy import (
    build_candidates,
    detect_heavy_roundrobin,
    find_heavy_helper,
    heavy_r_values,
    process_edges,
)
from diamondsense.oracle import census, verify_diamond
from diamondsense.work import WorkMeter


def test_heavy_r_values():
    assert heavy_r_values(1) == [1]
    assert heavy_r_values(4) == [1, 2, 4]
    assert heavy_r_values(1000) == [1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]


def test_build_candidates_window_bounds():
    g = gen_gnp(30, 0.4, 9)
    for r in heavy_r_values(g.n):
        c = build_candidates(g, r, seed=1)
        assert c.r == r
        assert len(c.edges) == len(c.w_sizes)
        assert list(c.edges) == sorted(c.edges)
        for (u, v), w in zip(c.edges, c.w_sizes):
            assert u in c.sample and v in c.sample
            assert r <= w <= 2 * r
            cn = (g.adj[u] & g.adj[v]).bit_count()
            assert w == cn + 2


def test_build_candidates_full_sample_at_small_r():
    # density formula saturates at 1 for small r, so everything is sampled
    g = gen_gnp(12, 0.5, 2)
    c = build_candidates(g, 1, seed=0)
    assert c.sample == frozenset(range(g.n))


def test_build_candidates_deterministic():
    g = gen_gnp(25, 0.3, 4)
    a = build_candidates(g, 8, seed=3)
    b = build_candidates(g, 8, seed=3)
    assert (a.sample, a.edges, a.w_sizes) == (b.sample, b.edges, b.w_sizes)


def test_build_candidates_rejects_bad_r():
    with pytest.raises(ValueError):
        build_candidates(gen_gnp(5, 0.5, 0), 0, seed=0)


def test_process_edges_witnesses_verify():
    hits = 0
    for seed in range(12):
        g = gen_gnp(12, 0.55, 900 + seed)
        for r in heavy_r_values(g.n):
            c = build_candidates(g, r, seed=seed)
            out = process_edges(g, c)
            assert out.edges_processed + out.removed_part3 <= len(c.edges)
            if out.witness is not None:
                hits += 1
                assert verify_diamond(g, out.witness)
                assert census(g).t > 0
    assert hits > 0  # the corpus is dense enough that some window fires


def test_process_edges_sound_on_diamond_free():
    checked = 0
    for seed in range(30):
        g = gen_gnp(11, 0.25, 1000 + seed)
        if census(g).t != 0:
            continue
        checked += 1
        for r in heavy_r_values(g.n):
            c = build_candidates(g, r, seed=seed)
            assert process_edges(g, c).witness is None
    assert checked >= 5


def test_find_heavy_helper_on_clique_extreme():
    g = gen_clique_extreme(6)  # clique-edge windows have size 7 or 8
    res = find_heavy_helper(g, 4, seed=0)
    assert res.found
    assert verify_diamond(g, res.witness)
    assert res.algorithm_tag == "heavy[r=4]"
    assert res.work_units > 0


def test_find_heavy_helper_deterministic():
    g = gen_clique_extreme(6)
    a = find_heavy_helper(g, 4, seed=2)
    b = find_heavy_helper(g, 4, seed=2)
    assert (a.found, a.witness, a.work_units) == (b.found, b.witness, b.work_units)


def test_roundrobin_finds_on_both_extremes():
    for g in (gen_clique_extreme(7), gen_independent_extreme(7)):
        res = detect_heavy_roundrobin(g, seed=1)
        assert res.found
        assert verify_diamond(g, res.witness)
        assert res.algorithm_tag.startswith("heavy[r=")


def test_roundrobin_certifies_nothing_on_free_graphs():
    for seed in range(10):
        g = gen_gnp(12, 0.2, 1100 + seed)
        if census(g).t != 0:
            continue
        res = detect_heavy_roundrobin(g, seed=seed)
        assert not res.found
        assert res.witness is None
        assert res.work_units > 0


def test_process_edges_charges_meter():
    g = gen_gnp(14, 0.5, 5)
    c = build_candidates(g, 2, seed=5)
    meter = WorkMeter()
    process_edges(g, c, meter)
    if c.edges:
        assert meter.total >= g.n  # at least one window row scan


def test_heavy_small_graphs_never_crash():
    for n in range(0, 5):
        g = Graph(n, [])
        res = detect_heavy_roundrobin(g, seed=0)
        assert not res.found
