"""Instance generators and the exact per-chord diamond count."""

from __future__ import annotations

import math

import pytest

from diamondsense.generators import (
    exact_diamond_count,
    gen_clique_extreme,
    gen_gnp,
    gen_independent_extreme,
    gen_planted,
    gen_tripartite_lb,
)
from diamondsense.graphcore import Graph
from diamondsense.oracle import census
from diamondsense.work import WorkMeter


def test_gnp_determinism_and_bounds():
    a = gen_gnp(20, 0.3, 5)
    b = gen_gnp(20, 0.3, 5)
    assert a == b
    assert gen_gnp(20, 0.3, 6) != a
    assert gen_gnp(15, 0.0, 1).m == 0
    assert gen_gnp(15, 1.0, 1).m == 15 * 14 // 2
    assert gen_gnp(0, 0.5, 1).n == 0
    assert gen_gnp(1, 0.5, 1).m == 0


def test_gnp_rejects_bad_params():
    with pytest.raises(ValueError):
        gen_gnp(-1, 0.5, 0)
    with pytest.raises(ValueError):
        gen_gnp(5, 1.5, 0)


def test_exact_diamond_count_matches_census():
    for seed in range(10):
        g = gen_gnp(11, 0.5, 100 + seed)
        assert exact_diamond_count(g) == census(g).t


def test_exact_diamond_count_charges_meter():
    g = gen_gnp(10, 0.5, 1)
    meter = WorkMeter()
    exact_diamond_count(g, meter)
    assert meter.total >= g.m * g.n  # one row scan per edge at minimum


def test_clique_extreme_frozen():
    g = gen_clique_extreme(6)
    c = census(g)
    assert g.n == 8
    assert c.t == 5
    assert c.r_max == 7
    assert c.deg3_vertices == frozenset({0, 1})
    assert c.s == math.comb(7, 4)  # the (d+1)-clique's K4s
    assert census(gen_clique_extreme(3)).t == 2
    assert census(gen_clique_extreme(8)).t == 7


def test_clique_extreme_all_heavy():
    # every diamond's chord triangle sits inside the big clique
    c = census(gen_clique_extreme(5))
    assert all(h == 6 for h in c.heaviness)
    assert c.light_count(6) == 0 and c.light_count(7) == c.t


def test_independent_extreme_frozen():
    g = gen_independent_extreme(5)
    c = census(g)
    assert g.n == 7
    assert c.t == math.comb(5, 2) == 10
    assert c.r_max == 3
    assert c.s == 0
    assert c.deg3_vertices == frozenset({0, 1})
    assert census(gen_independent_extreme(4)).t == 6


def test_independent_extreme_all_light():
    c = census(gen_independent_extreme(6))
    assert all(h == 3 for h in c.heaviness)
    assert c.light_count(4) == c.t


def test_extreme_generators_reject_small_d():
    with pytest.raises(ValueError):
        gen_clique_extreme(1)
    with pytest.raises(ValueError):
        gen_independent_extreme(1)


def test_tripartite_no_case_diamond_free():
    for seed in range(4):
        g = gen_tripartite_lb(4, 2, seed, yes_case=False)
        c = census(g)
        assert c.t == 0 and c.s == 0


def test_tripartite_yes_case_plants_diamonds():
    for seed in range(4):
        p = 3
        g = gen_tripartite_lb(4, p, seed, yes_case=True)
        c = census(g)
        assert c.s == 0
        assert c.t >= math.comb(p, 2)


def test_tripartite_determinism_and_validation():
    assert gen_tripartite_lb(3, 2, 9, True) == gen_tripartite_lb(3, 2, 9, True)
    with pytest.raises(ValueError):
        gen_tripartite_lb(0, 2, 0, False)
    with pytest.raises(ValueError):
        gen_tripartite_lb(3, 0, 0, False)


def test_planted_reaches_target_exactly_counted():
    g, t = gen_planted(80, 0.01, 6, 3)
    assert t >= 6
    assert census(g).t == t
    g2, t2 = gen_planted(80, 0.01, 6, 3)
    assert g2 == g and t2 == t


def test_planted_zero_target_is_base_graph():
    g, t = gen_planted(20, 0.1, 0, 7)
    assert t == exact_diamond_count(g)


def test_planted_unreachable_target():
    # p = 1 leaves no isolated vertices to spend on gadgets
    with pytest.raises(ValueError):
        gen_planted(10, 1.0, 10**6, 0)
    with pytest.raises(ValueError):
        gen_planted(5, 0.0, -1, 0)
