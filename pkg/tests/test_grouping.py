import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import random_tree_graph, random_unimodular_graph
from treelattice.grouping import (CoverMap, DegreeMismatch, EmptySelector, FiniteGrouping, Group,
                                  Hom, NoTopologicalCover, NonIntegralOrdering, build_index_cover,
                                  canonical_cyclic_grouping, cover_degree, covolume,
                                  divisibility_report, induced_cover_grouping, is_effective_cyclic,
                                  units_mod, verify_cover, volume_ratio_check)
from treelattice.indexed_graph import EdgeIndexedGraph, compute_ordering
from treelattice.star_tree import AdmissibleSequence, build_star_ray

seeds = st.integers(0, 2**32 - 1)


def star_ray_graph(depth=3, n=3):
    return build_star_ray(4).truncate(depth).graph(AdmissibleSequence.canonical(n))


def test_units_mod():
    assert units_mod(1) == [1] and units_mod(2) == [1]
    assert units_mod(9) == [1, 2, 4, 5, 7, 8]


def test_group_law_and_json():
    G = Group((9, 3), unit_modulus=9, acted=1)
    assert G.order == 9 * 3 * 6 and G.kind == "semidirect"
    e = G.identity()
    for x in list(G.elements())[:40]:
        assert G.mul(x, e) == x and G.mul(e, x) == x
    assert Group.from_json(G.to_json()) == G
    for H in (Group.cyclic(5), Group((2, 4))):
        assert Group.from_json(H.to_json()) == H
    with pytest.raises(ValueError):
        Group((4,), unit_modulus=9, acted=1)


def test_hom_checks():
    A, B = Group.cyclic(3), Group.cyclic(6)
    assert not Hom.scale(A, B, 2).check()
    assert "not injective" in Hom.scale(A, B, 6).check()
    assert Hom.scale(Group.cyclic(4), Group.cyclic(6), 1).check()


def test_canonical_grouping_of_star_ray():
    g = star_ray_graph()
    N = compute_ordering(g, "v0")
    G = canonical_cyclic_grouping(g, N)
    assert not G.check()
    assert G.order_function() == N
    assert is_effective_cyclic(N)
    assert not is_effective_cyclic(N.scaled(2))
    with pytest.raises(NonIntegralOrdering):
        canonical_cyclic_grouping(g, N.scaled(Fraction(1, 2)))
    again = FiniteGrouping.from_json(json.loads(json.dumps(G.to_json())))
    assert again.order_function() == N and not again.check()


def test_covolume_selectors():
    g = EdgeIndexedGraph.from_pairs([("a", 0), ("b", 1)], [("a", "b", 3, 2)])
    N = compute_ordering(g, "a", 2)
    assert covolume(N, "v0") == Fraction(1, 2)
    assert covolume(N, "v1") == Fraction(1, 3)
    assert covolume(N, "all") == Fraction(5, 6)
    h = EdgeIndexedGraph.from_pairs(["a", "b"], [("a", "b", 1, 1)])
    with pytest.raises(EmptySelector):
        covolume(compute_ordering(h, "a"), "v0")


def test_no_topological_cover_of_a_tree():
    g = random_tree_graph(random.Random(1), 4)
    with pytest.raises(NoTopologicalCover):
        build_index_cover(g, 2, "topological")
    assert cover_degree(build_index_cover(g, 1, "topological")) == 1


@given(seeds, st.integers(1, 7), st.integers(1, 4), st.sampled_from(["group", "topological"]))
def test_covers_multiply_volume_by_degree(seed, size, d, mode):
    g, N = random_unimodular_graph(random.Random(seed), size, cyclic=(mode == "topological"))
    if mode == "group":
        N = N.scaled(d)
    cover = build_index_cover(g, d, mode)
    assert not verify_cover(cover)
    assert cover_degree(cover) == d
    A = canonical_cyclic_grouping(g, N)
    B = induced_cover_grouping(cover, A)
    assert not B.check()
    assert volume_ratio_check(cover, A, B)
    assert covolume(B) == d * covolume(A)
    assert not divisibility_report(cover, A, (2, 3, 5, 7))


def test_broken_covers_are_reported():
    g = star_ray_graph(2)
    cover = build_index_cover(g, 2, "group")
    bad = CoverMap(cover.source, cover.target, cover.vertex_map, cover.edge_map,
                   {**cover.vertex_index, "v0": 3}, cover.edge_index)
    assert {d.code for d in verify_cover(bad)} == {"local-index"}
    with pytest.raises(DegreeMismatch):
        cover_degree(bad)
    js = cover.to_json()
    assert not verify_cover(CoverMap.from_json(json.dumps(js)))
