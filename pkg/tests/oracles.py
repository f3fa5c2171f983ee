"""Independent brute-force oracles used by the tests.

None of these share code paths with the library beyond the basic data
types: distances are recomputed with a plain BFS over dicts, cover balls by
recursive expansion, covolumes by summing level counts term by term.
"""
from __future__ import annotations

import random
from collections import deque
from fractions import Fraction
from math import gcd

from treelattice.indexed_graph import EdgeIndexedGraph, Ordering


def naive_distances(graph: EdgeIndexedGraph, source: str) -> dict[str, int]:
    adj: dict[str, list[str]] = {v: [] for v in graph.vertices}
    for e in graph.edges.values():
        adj[e.origin].append(e.terminus)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def naive_cover_sizes(graph: EdgeIndexedGraph, base: str, radius: int) -> list[int]:
    """Number of lifts at each depth, by recursive expansion of the lift rule."""
    sizes = [0] * (radius + 1)

    def expand(v: str, came_by: str | None, depth: int) -> None:
        sizes[depth] += 1
        if depth == radius:
            return
        for e in graph.edges.values():
            if e.terminus != v:
                continue
            copies = e.index - (1 if came_by is not None and e.id == graph.edges[came_by].reverse else 0)
            for _ in range(copies):
                expand(e.origin, e.id, depth + 1)

    expand(base, None, 0)
    return sizes


def naive_ordering(graph: EdgeIndexedGraph, base: str, value=1) -> dict[str, Fraction] | None:
    """Propagate by depth-first search in insertion order; None if inconsistent."""
    N = {base: Fraction(value)}
    stack = [base]
    while stack:
        v = stack.pop()
        for e in graph.edges.values():
            if e.origin != v:
                continue
            # N(e) = N(terminus)/i(e) = N(origin)/i(reverse)
            want = N[v] / graph.edges[e.reverse].index * e.index
            if e.terminus in N:
                if N[e.terminus] != want:
                    return None
            else:
                N[e.terminus] = want
                stack.append(e.terminus)
    return N


def level_partial_sum(spec, weights, depth: int) -> Fraction:
    """Sum over levels L <= depth of (centers at level L) / h(L), block by block."""
    total = Fraction(0)
    parts = [(spec.spine, 0)] + [(g.block, g.level) for g in spec.gluings]
    rule = spec.digit_rule
    if rule is not None:
        for j in range(1, depth + 1):
            blk = rule.block(j)
            if blk is not None:
                parts.append((blk, j))
    for blk, q in parts:
        for L in range(q, depth + 1):
            c = blk.count(L - q)
            if blk.depth is not None and L - q >= blk.depth:
                break
            total += Fraction(c, weights(L))
    return total


def random_unimodular_graph(rng: random.Random, size: int, cyclic: bool = False):
    """Connected edge-indexed graph built from a random integral ordering.

    Returns (graph, ordering).  Indices are N(terminus)/N(e) for edge values
    N(e) dividing both endpoint values, so the graph is unimodular even when
    it has cycles.  With `cyclic`, at least one cycle is present.
    """
    values = [1, 2, 3, 4, 6, 12]
    names = [f"a{k}" for k in range(size)]
    N = {v: Fraction(rng.choice(values)) for v in names}
    pairs = []
    for k in range(1, size):
        pairs.append((names[rng.randrange(k)], names[k]))
    extra = rng.randint(1 if cyclic else 0, 2)
    for _ in range(extra):
        pairs.append((rng.choice(names), rng.choice(names)))
    edges = []
    vals = dict(N)
    for t, (u, v) in enumerate(pairs):
        g = gcd(int(N[u]), int(N[v]))
        divs = [d for d in range(1, g + 1) if g % d == 0]
        Ne = Fraction(rng.choice(divs))
        a, b = f"e{t}+", f"e{t}-"
        edges.append((a, u, v, int(N[v] / Ne), b))
        edges.append((b, v, u, int(N[u] / Ne), a))
        vals[a] = vals[b] = Ne
    g = EdgeIndexedGraph.build(names, edges)
    return g, Ordering(g, vals)


def random_tree_graph(rng: random.Random, size: int, max_index: int = 4) -> EdgeIndexedGraph:
    """Random tree with arbitrary indices (always unimodular)."""
    names = [f"t{k}" for k in range(size)]
    edges = []
    for k in range(1, size):
        u = names[rng.randrange(k)]
        a, b = f"f{k}+", f"f{k}-"
        edges.append((a, u, names[k], rng.randint(1, max_index), b))
        edges.append((b, names[k], u, rng.randint(1, max_index), a))
    return EdgeIndexedGraph.build(names, edges)
