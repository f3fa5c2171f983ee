import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import (naive_cover_sizes, naive_distances, naive_ordering, random_tree_graph,
                     random_unimodular_graph)
from treelattice.indexed_graph import (EdgeIndexedGraph, GraphError, NonUnimodular,
                                       compute_ordering, covers_biregular, is_unimodular,
                                       minimal_integral_ordering, to_dot, universal_cover_ball,
                                       validate)
from treelattice.star_tree import AdmissibleSequence, build_star_ray

seeds = st.integers(0, 2**32 - 1)


def two_cycle(i=(2, 1), j=(1, 1)):
    # a and b joined twice; indices (i at b, i at a) per pair
    return EdgeIndexedGraph.from_pairs(["a", "b"], [("a", "b", *i), ("a", "b", *j)])


def test_validate_messages():
    g = EdgeIndexedGraph.build(["a", "b"], [("e", "a", "b", 0, "f"), ("f", "b", "a", 1, "e")],
                               check=False)
    msgs = [d.message for d in validate(g)]
    assert any("index must be ≥ 1" in m for m in msgs)
    g = EdgeIndexedGraph.build(["a"], [("e", "a", "a", 1, "e")], check=False)
    assert any("involution has fixed point" in d.message for d in validate(g))
    with pytest.raises(GraphError):
        EdgeIndexedGraph.build(["a", "b"], [("e", "a", "b", 1, "f")])


def test_validate_endpoints_and_parts():
    g = EdgeIndexedGraph.build([("a", 0), ("b", 0)],
                               [("e", "a", "b", 1, "f"), ("f", "b", "a", 1, "e")], check=False)
    assert {d.code for d in validate(g)} == {"bipartite"}
    g = EdgeIndexedGraph.build(["a", "b", "c"],
                               [("e", "a", "b", 1, "f"), ("f", "c", "a", 1, "e")], check=False)
    assert "endpoints" in {d.code for d in validate(g)}


def test_nonunimodular_two_cycle():
    g = two_cycle()
    assert not is_unimodular(g)
    with pytest.raises(NonUnimodular) as exc:
        compute_ordering(g, "a")
    assert exc.value.vertex == "b"
    assert is_unimodular(two_cycle((2, 1), (2, 1)))


def test_single_edge_ordering():
    g = EdgeIndexedGraph.from_pairs(["a", "b"], [("a", "b", 3, 2)])
    N = compute_ordering(g, "a", 2)
    assert N["b"] == 3 and N["a>b"] == 1 and N["b>a"] == 1
    assert not N.check()


@given(seeds, st.integers(1, 8), st.booleans())
def test_ordering_agrees_with_naive_propagation(seed, size, cyclic):
    import random
    g, _ = random_unimodular_graph(random.Random(seed), size, cyclic)
    base = min(g.vertices)
    N = compute_ordering(g, base, 3)
    naive = naive_ordering(g, base, 3)
    assert naive is not None
    assert N.vertex_values() == naive
    assert not N.check()


@given(seeds, st.integers(1, 8), st.integers(1, 5))
def test_ordering_uniqueness_up_to_scale(seed, size, c):
    import random
    g, given_N = random_unimodular_graph(random.Random(seed), size, True)
    base = min(g.vertices)
    N = compute_ordering(g, base, given_N[base] * c)
    assert N == given_N.scaled(c)
    for v in g.vertices:
        assert compute_ordering(g, v, given_N[v]) == given_N


@given(seeds, st.integers(1, 10))
def test_trees_are_unimodular(seed, size):
    import random
    g = random_tree_graph(random.Random(seed), size)
    assert is_unimodular(g)
    M = minimal_integral_ordering(compute_ordering(g, min(g.vertices)))
    assert M.is_integral()
    from math import gcd
    total = 0
    for x in M.values.values():
        total = gcd(total, x.numerator)
    assert total == 1


@given(seeds, st.integers(1, 8))
def test_distances_match_bfs(seed, size):
    import random
    g, _ = random_unimodular_graph(random.Random(seed), size, True)
    for v in g.vertices:
        assert g.distances(v) == naive_distances(g, v)


@given(seeds, st.integers(1, 5), st.integers(0, 4))
def test_cover_ball_sizes_match_recursive_expansion(seed, size, radius):
    import random
    g = random_tree_graph(random.Random(seed), size, max_index=3)
    base = min(g.vertices)
    ball = universal_cover_ball(g, base, radius)
    sizes = [0] * (radius + 1)
    for d in ball.depth:
        sizes[d] += 1
    assert sizes == naive_cover_sizes(g, base, radius)


def test_cover_ball_interior_degree_is_index_sum():
    g = build_star_ray(4).truncate(3).graph(AdmissibleSequence.canonical(3))
    assert covers_biregular(g, 4, 3)
    ball = universal_cover_ball(g, "v0", 5)
    deg = ball.degrees()
    for t in ball.interior():
        assert deg[t] == g.index_sum(ball.projection[t])


def test_json_roundtrip_and_dot():
    g = build_star_ray(3).truncate(2).graph(AdmissibleSequence.canonical(3))
    again = EdgeIndexedGraph.from_json(json.loads(json.dumps(g.to_json())))
    assert again == g
    dot = to_dot(g, compute_ordering(g, "v0"))
    assert dot.startswith("digraph") or dot.startswith("graph")
    assert "v1" in dot


def test_integral_rescaling():
    g = EdgeIndexedGraph.from_pairs(["a", "b"], [("a", "b", 3, 2)])
    N = compute_ordering(g, "a", Fraction(1, 7))
    M = minimal_integral_ordering(N)
    assert M["a"] == 2 and M["b"] == 3 and M["a>b"] == 1
