"""Brute-force four-vertex census and witness verifiers.

The literal expected values here were computed once by hand / by the
exhaustive routines themselves on hand-checkable instances, then frozen.
"""

from __future__ import annotations

from itertools import combinations

import pytest

from diamondsense.generators import gen_gnp
from diamondsense.graphcore import ColoringK, Graph, random_coloring
from diamondsense.oracle import (
    census,
    classify_four,
    colorful_census,
    deg3_vertices_brute,
    foursum_census,
    foursum_solutions,
    is_deg3_vertex,
    verify_diamond,
    verify_induced_c4,
)


def k5_minus_edge() -> Graph:
    """K5 with the single edge (3, 4) removed."""
    edges = [(i, j) for i, j in combinations(range(5), 2) if (i, j) != (3, 4)]
    return Graph(5, edges)


def test_classify_four_kinds():
    g = k5_minus_edge()
    assert classify_four(g, 0, 1, 2, 3) == ("k4", None)
    kind, detail = classify_four(g, 0, 1, 3, 4)
    assert kind == "diamond"
    u, v, w, x = detail
    assert {w, x} == {3, 4} and {u, v} == {0, 1}
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    kind, cyc = classify_four(c4, 0, 1, 2, 3)
    assert kind == "c4"
    assert verify_induced_c4(c4, cyc)
    # a path on 4 vertices is neither
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert classify_four(p4, 0, 1, 2, 3) == (None, None)


def test_census_k5_minus_edge_frozen():
    c = census(k5_minus_edge())
    assert c.t == 3
    assert c.s == 2
    assert c.c4 == 0
    assert c.r_max == 4
    assert c.deg3_vertices == frozenset({0, 1, 2})
    assert c.diamond_vertices == frozenset(range(5))
    assert len(c.diamonds) == 3
    assert c.heaviness == (4, 4, 4)
    assert c.light_count(5) == 3 and c.light_count(4) == 0


def test_census_witnesses_verify():
    for seed in range(8):
        g = gen_gnp(10, 0.5, seed)
        c = census(g)
        for quad in c.diamonds:
            assert verify_diamond(g, quad)
        assert len(c.diamonds) == c.t


def test_census_empty_and_complete():
    c = census(Graph(6, []))
    assert (c.t, c.s, c.c4, c.r_max) == (0, 0, 0, 0)
    k6 = Graph(6, list(combinations(range(6), 2)))
    c = census(k6)
    assert (c.t, c.s, c.c4) == (0, 15, 0)
    assert c.deg3_vertices == frozenset()


def test_verify_diamond_chord_orientation():
    g = k5_minus_edge()
    assert verify_diamond(g, (0, 1, 3, 4))
    assert verify_diamond(g, (1, 0, 4, 3))
    # chord must be the adjacent pair, wings the missing edge
    assert not verify_diamond(g, (3, 4, 0, 1))
    assert not verify_diamond(g, (0, 3, 1, 4))
    assert not verify_diamond(g, (0, 1, 2, 3))  # that quad is a K4


def test_verify_rejects_malformed():
    g = k5_minus_edge()
    for bad in [(0, 1, 2), (0, 1, 2, 3, 4), (0, 1, 2, 2), (0, 1, 2, 5), (0, 1, 2, -1)]:
        with pytest.raises(ValueError):
            verify_diamond(g, bad)
        with pytest.raises(ValueError):
            verify_induced_c4(g, bad)


def test_verify_induced_c4_order_sensitivity():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert verify_induced_c4(g, (0, 1, 2, 3))
    assert verify_induced_c4(g, (1, 2, 3, 0))
    assert not verify_induced_c4(g, (0, 2, 1, 3))
    # a diamond is not an induced cycle
    assert not verify_induced_c4(k5_minus_edge(), (0, 3, 1, 4))


def test_colorful_census_rainbow_only():
    g = k5_minus_edge()
    # vertices 3 and 4 share a color, so no rainbow quad contains both
    col = ColoringK(4, [1, 2, 3, 4, 4])
    c = colorful_census(g, col)
    assert (c.t, c.s, c.c4) == (0, 2, 0)
    # all-distinct coloring on the K4-free part
    col2 = ColoringK(4, [1, 2, 3, 4, 1])
    c2 = colorful_census(g, col2)
    # quads with distinct colors: {0,1,2,3}, {1,2,3,4} -> one K4, one diamond
    assert (c2.t, c2.s, c2.c4) == (1, 1, 0)


def test_colorful_census_validates():
    g = k5_minus_edge()
    with pytest.raises(ValueError):
        colorful_census(g, ColoringK(3, [1, 2, 3, 1, 2]))
    with pytest.raises(ValueError):
        colorful_census(g, ColoringK(4, [1, 2, 3, 4]))


def test_colorful_census_never_exceeds_plain():
    for seed in range(6):
        g = gen_gnp(9, 0.5, 20 + seed)
        full = census(g)
        col = random_coloring(g, 4, seed)
        part = colorful_census(g, col)
        assert part.t <= full.t and part.s <= full.s and part.c4 <= full.c4


def test_deg3_vertices_brute_matches_pointwise():
    for seed in range(6):
        g = gen_gnp(9, 0.5, 40 + seed)
        brute = deg3_vertices_brute(g)
        for v in range(g.n):
            assert (v in brute) == is_deg3_vertex(g, v)
        assert brute == census(g).deg3_vertices


def test_foursum_census_frozen_values():
    assert foursum_census([[0, 0, 0, 0]] * 4) == 256
    assert foursum_census([[1, -1, 2, -2]] * 4) == 36
    assert foursum_census([[1, 2, 3, -6]] * 4) == 28
    assert foursum_census([[3, 5, -6, -2]] * 4) == 24
    assert foursum_census([[1], [2], [3], [4]]) == 0
    assert foursum_census([[1], [2], [3], [-6]]) == 1


def test_foursum_solutions_lexicographic():
    sols = foursum_solutions([[0, 1], [0, 1], [0, -1], [0, -1]])
    assert sols == sorted(sols)
    assert (0, 0, 0, 0) in sols
    for i, j, k, l in sols:
        arrays = [[0, 1], [0, 1], [0, -1], [0, -1]]
        assert arrays[0][i] + arrays[1][j] + arrays[2][k] + arrays[3][l] == 0
    assert len(sols) == foursum_census([[0, 1], [0, 1], [0, -1], [0, -1]])


def test_foursum_census_rejects_wrong_arity():
    with pytest.raises(ValueError):
        foursum_census([[1], [2], [3]])
    with pytest.raises(ValueError):
        foursum_solutions([[1]] * 5)
