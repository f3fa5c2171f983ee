"""Finite groupings, covolume sums, and coverings of edge-indexed graphs.

Groups are described structurally.  Every group used here has the form
(Z/a1 x ... x Z/ar) x| H where H is the unit group of Z/M acting by
multiplication on the first `acted` cyclic factors; M = 1 gives the plain
abelian cases (cyclic or direct product).  Elements are tuples of residues
with the unit appended.  Homomorphisms are integer matrices on the abelian
coordinates with the unit passed through, which covers every edge map the
constructions need.
"""
from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Mapping, NamedTuple

from .indexed_graph import (
    Diagnostic, EdgeIndexedGraph, Ordering, compute_ordering, is_connected,
)

ENUMERATION_BOUND = 10**6


class NonIntegralOrdering(ValueError):
    pass


class EmptySelector(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class NoTopologicalCover(ValueError):
    pass


def units_mod(M: int) -> list[int]:
    """Residues invertible mod M; the trivial group [1] when M <= 2."""
    if M <= 2:
        return [1]
    return [u for u in range(1, M) if gcd(u, M) == 1]


@dataclass(frozen=True)
class Group:
    """(Z/a1 x ... x Z/ar) x| (Z/M)^*, units acting on the first `acted` factors."""

    orders: tuple[int, ...]
    unit_modulus: int = 1
    acted: int = 0

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(a) for a in self.orders))
        if any(a < 1 for a in self.orders):
            raise ValueError("cyclic factor orders must be positive")
        if self.unit_modulus > 2:
            for a in self.orders[: self.acted]:
                if self.unit_modulus % a:
                    raise ValueError("acted factors must have order dividing the unit modulus")

    @classmethod
    def cyclic(cls, N: int) -> "Group":
        return cls((N,))

    @property
    def units(self) -> list[int]:
        return units_mod(self.unit_modulus)

    @property
    def order(self) -> int:
        return prod(self.orders) * len(self.units)

    @property
    def kind(self) -> str:
        if len(self.units) > 1:
            return "semidirect"
        return "cyclic" if len(self.orders) == 1 else "product"

    def identity(self) -> tuple:
        return tuple(0 for _ in self.orders) + (1,)

    def elements(self):
        if self.order > ENUMERATION_BOUND:
            raise ValueError(f"group of order {self.order} is above the enumeration bound")
        for g in itertools.product(*(range(a) for a in self.orders)):
            for u in self.units:
                yield g + (u,)

    def mul(self, x: tuple, y: tuple) -> tuple:
        u = x[-1]
        M = self.unit_modulus
        out = []
        for k, a in enumerate(self.orders):
            b = y[k] * u if k < self.acted else y[k]
            out.append((x[k] + b) % a)
        return tuple(out) + ((u * y[-1]) % M if M > 2 else 1,)

    def generators(self) -> list[tuple]:
        gens = []
        for k in range(len(self.orders)):
            g = [0] * len(self.orders)
            g[k] = 1 % self.orders[k]
            gens.append(tuple(g) + (1,))
        zero = tuple(0 for _ in self.orders)
        gens.extend(zero + (u,) for u in _unit_generators(self.unit_modulus))
        return gens

    def to_json(self) -> dict:
        kind = self.kind
        if kind == "cyclic":
            return {"kind": "cyclic", "order": self.orders[0]}
        if kind == "product":
            return {"kind": "product", "orders": list(self.orders)}
        return {"kind": "semidirect", "orders": list(self.orders),
                "unit_modulus": self.unit_modulus, "acted": self.acted}

    @classmethod
    def from_json(cls, d: Mapping) -> "Group":
        if d["kind"] == "cyclic":
            return cls((d["order"],))
        if d["kind"] == "product":
            return cls(tuple(d["orders"]))
        if d["kind"] == "semidirect":
            return cls(tuple(d["orders"]), d["unit_modulus"], d.get("acted", 1))
        raise ValueError(f"unknown group kind {d['kind']!r}")


def _unit_generators(M: int) -> list[int]:
    """A small generating set of (Z/M)^*, chosen greedily."""
    units = units_mod(M)
    if len(units) == 1:
        return []
    gens: list[int] = []
    span = {1}
    for u in units:
        if u in span:
            continue
        gens.append(u)
        frontier = list(span)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = (x * g) % M
                if y not in span:
                    span.add(y)
                    frontier.append(y)
    return gens


@dataclass(frozen=True)
class Hom:
    """Homomorphism given by an integer matrix on the abelian coordinates.

    `matrix[r][c]` is the coefficient of source coordinate c in target
    coordinate r; the unit coordinate is passed through unchanged.
    """

    source: Group
    target: Group
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def scale(cls, source: Group, target: Group, factor: int) -> "Hom":
        return cls(source, target, ((factor,),))

    @classmethod
    def include(cls, source: Group, target: Group, block=None) -> "Hom":
        """Place `block` (default identity) in the leading corner, zeros elsewhere."""
        r, c = len(target.orders), len(source.orders)
        if block is None:
            block = [[int(i == j) for j in range(c)] for i in range(c)]
        rows = []
        for i in range(r):
            rows.append(tuple(block[i][j] if i < len(block) else 0 for j in range(c)))
        return cls(source, target, tuple(rows))

    def __call__(self, x: tuple) -> tuple:
        out = []
        for i, a in enumerate(self.target.orders):
            out.append(sum(self.matrix[i][j] * x[j] for j in range(len(self.source.orders))) % a)
        u = x[-1] % self.target.unit_modulus if self.target.unit_modulus > 2 else 1
        return tuple(out) + (u,)

    def generator_images(self) -> list[list[int]]:
        return [list(self(g)) for g in self.source.generators()]

    def check(self) -> list[str]:
        """Exhaustive homomorphism and injectivity test (below the bound)."""
        S, T = self.source, self.target
        if len(S.units) > 1 and S.unit_modulus != T.unit_modulus:
            return ["unit groups differ"]
        if S.order > ENUMERATION_BOUND or S.order * len(S.generators()) > ENUMERATION_BOUND:
            # order arithmetic only
            return [] if T.order % S.order == 0 else ["order does not divide"]
        problems = []
        elems = list(S.elements())
        images = [self(x) for x in elems]
        if len(set(images)) != len(elems):
            problems.append("not injective")
        # multiplicativity against generators suffices
        for x, fx in zip(elems, images):
            for g in S.generators():
                if self(S.mul(x, g)) != T.mul(fx, self(g)):
                    problems.append(f"not a homomorphism at {x} * {g}")
                    return problems
        return problems

    def to_json(self) -> dict:
        return {"generator_images": self.generator_images(),
                "matrix": [list(r) for r in self.matrix]}


@dataclass(frozen=True, eq=False)
class FiniteGrouping:
    """A graph of finite groups over an edge-indexed graph.

    Edge groups are shared by an edge and its reverse; `injections[e]` maps
    the group of e into the group at terminus(e).
    """

    graph: EdgeIndexedGraph
    vertex_groups: Mapping[str, Group]
    edge_groups: Mapping[str, Group]
    injections: Mapping[str, Hom] = field(repr=False)

    def order(self, key: str) -> int:
        if key in self.vertex_groups:
            return self.vertex_groups[key].order
        return self.edge_groups[key].order

    def order_function(self) -> Ordering:
        vals = {v: Fraction(g.order) for v, g in self.vertex_groups.items()}
        vals.update({e: Fraction(g.order) for e, g in self.edge_groups.items()})
        return Ordering(self.graph, vals)

    def check(self, exhaustive: bool = True) -> list[str]:
        problems = []
        G = self.graph
        for eid, e in G.edges.items():
            ge, gr = self.edge_groups[eid], self.edge_groups[e.reverse]
            if ge != gr:
                problems.append(f"{eid}: edge group differs from its reverse")
            gv = self.vertex_groups[e.terminus]
            if gv.order != ge.order * e.index:
                problems.append(f"{eid}: |A_v| / |A_e| != i(e)")
            hom = self.injections[eid]
            if hom.source != ge or hom.target != gv:
                problems.append(f"{eid}: injection has wrong source or target")
            elif exhaustive:
                problems.extend(f"{eid}: {p}" for p in hom.check())
        problems.extend(self.order_function().check())
        return problems

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "vertex_groups": {v: g.to_json() for v, g in sorted(self.vertex_groups.items())},
            "edge_groups": {e: g.to_json() for e, g in sorted(self.edge_groups.items())},
            "injections": {e: h.to_json() for e, h in sorted(self.injections.items())},
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "FiniteGrouping":
        graph = EdgeIndexedGraph.from_json(d["graph"])
        vg = {v: Group.from_json(x) for v, x in d["vertex_groups"].items()}
        eg = {e: Group.from_json(x) for e, x in d["edge_groups"].items()}
        inj = {}
        for eid, e in graph.edges.items():
            spec = d["injections"][eid]
            inj[eid] = Hom(eg[eid], vg[e.terminus], tuple(tuple(r) for r in spec["matrix"]))
        return cls(graph, vg, eg, inj)


def canonical_cyclic_grouping(graph: EdgeIndexedGraph, ordering: Ordering) -> FiniteGrouping:
    """Cyclic groups of order N(.), edge maps [1] -> [i(e)]."""
    if not ordering.is_integral():
        raise NonIntegralOrdering("ordering has non-integer values")
    vg = {v: Group.cyclic(int(ordering[v])) for v in graph.vertices}
    eg = {e: Group.cyclic(int(ordering[e])) for e in graph.edges}
    inj = {eid: Hom.scale(eg[eid], vg[e.terminus], e.index) for eid, e in graph.edges.items()}
    return FiniteGrouping(graph, vg, eg, inj)


def is_effective_cyclic(ordering: Ordering) -> bool:
    if not ordering.is_integral():
        raise NonIntegralOrdering("ordering has non-integer values")
    g = 0
    for x in ordering.values.values():
        g = gcd(g, x.numerator)
    return g == 1


def _orders(source) -> tuple[EdgeIndexedGraph, dict[str, Fraction]]:
    if isinstance(source, FiniteGrouping):
        return source.graph, {v: Fraction(g.order) for v, g in source.vertex_groups.items()}
    if isinstance(source, Ordering):
        return source.graph, source.vertex_values()
    raise TypeError("expected a FiniteGrouping or an Ordering")


def select_vertices(graph: EdgeIndexedGraph, selector) -> list[str]:
    if selector in ("v0", "V0", 0):
        return [v for v, p in graph.vertices.items() if p == 0]
    if selector in ("v1", "V1", 1):
        return [v for v, p in graph.vertices.items() if p == 1]
    if selector in ("all", "V", None):
        return list(graph.vertices)
    if isinstance(selector, str):
        raise ValueError(f"unknown selector {selector!r}")
    return [v for v in selector if v in graph.vertices]


def covolume(source, selector="all") -> Fraction:
    """Sum of 1/|group| over the selected vertices of a finite grouping."""
    graph, orders = _orders(source)
    chosen = select_vertices(graph, selector)
    if not chosen:
        raise EmptySelector(f"selector {selector!r} selects no vertices")
    return sum((1 / orders[v] for v in chosen), Fraction(0))


@dataclass(frozen=True, eq=False)
class CoverMap:
    """Covering q: (B, j) -> (A, i) with local index data.

    `vertex_index[b]` is [A_q(b) : B_b]; `edge_index[f]` is [A_q(f) : B_f].
    """

    source: EdgeIndexedGraph
    target: EdgeIndexedGraph
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    vertex_index: Mapping[str, int]
    edge_index: Mapping[str, int]

    def to_json(self, include_graphs: bool = True) -> dict:
        d = {
            "vertex_map": dict(sorted(self.vertex_map.items())),
            "edge_map": dict(sorted(self.edge_map.items())),
            "vertex_index": dict(sorted(self.vertex_index.items())),
            "edge_index": dict(sorted(self.edge_index.items())),
        }
        if include_graphs:
            d["source"] = self.source.to_json()
            d["target"] = self.target.to_json()
        return d

    @classmethod
    def from_json(cls, d: Mapping, source: EdgeIndexedGraph | None = None,
                  target: EdgeIndexedGraph | None = None) -> "CoverMap":
        if isinstance(d, str):
            d = json.loads(d)
        source = source or EdgeIndexedGraph.from_json(d["source"])
        target = target or EdgeIndexedGraph.from_json(d["target"])
        return cls(source, target,
                   {str(k): str(v) for k, v in d["vertex_map"].items()},
                   {str(k): str(v) for k, v in d["edge_map"].items()},
                   {str(k): v for k, v in d["vertex_index"].items()},
                   {str(k): v for k, v in d["edge_index"].items()})


def verify_cover(cover: CoverMap) -> list[Diagnostic]:
    """Graph-map commutation, the index-sum identity, and index compatibility."""
    out: list[Diagnostic] = []
    A, B = cover.target, cover.source
    qv, qe = cover.vertex_map, cover.edge_map
    for b in B.vertices:
        if b not in qv or qv[b] not in A.vertices:
            out.append(Diagnostic("vertex-map", f"vertex {b!r} is not mapped into the target", (b,)))
        vi = cover.vertex_index.get(b)
        if not isinstance(vi, int) or vi < 1:
            out.append(Diagnostic("vertex-index", f"vertex {b!r}: missing or nonpositive local index", (b,)))
    for f, fe in B.edges.items():
        if f not in qe or qe[f] not in A.edges:
            out.append(Diagnostic("edge-map", f"edge {f!r} is not mapped into the target", (f,)))
            continue
        ei = cover.edge_index.get(f)
        if not isinstance(ei, int) or ei < 1:
            out.append(Diagnostic("edge-index", f"edge {f!r}: missing or nonpositive local index", (f,)))
        e = A.edges[qe[f]]
        if qv.get(fe.origin) != e.origin or qv.get(fe.terminus) != e.terminus:
            out.append(Diagnostic("commute", f"edge {f!r}: endpoints do not commute with q", (f,)))
        if qe.get(fe.reverse) != e.reverse:
            out.append(Diagnostic("commute", f"edge {f!r}: reverse does not commute with q", (f,)))
        if cover.edge_index.get(fe.reverse) != ei:
            out.append(Diagnostic("edge-index", f"edge {f!r}: local index differs from its reverse", (f,)))
    if out:
        return out
    # fibres q_b^{-1}(e) over edges e ending at q(b)
    fibre: dict[tuple[str, str], list[str]] = defaultdict(list)
    for f, fe in B.edges.items():
        fibre[(fe.terminus, qe[f])].append(f)
    for b in sorted(B.vertices):
        a = qv[b]
        for e in A.incoming[a]:
            fs = fibre.get((b, e), [])
            jsum = sum(B.edges[f].index for f in fs)
            if jsum != A.edges[e].index:
                out.append(Diagnostic(
                    "index-sum", f"vertex {b!r}, edge {e!r}: i(e)={A.edges[e].index} but fibre sums to {jsum}",
                    (b, e)))
            isum = sum(cover.edge_index[f] for f in fs)
            if isum != cover.vertex_index[b]:
                out.append(Diagnostic(
                    "local-index", f"vertex {b!r}, edge {e!r}: [A_a:B_b]={cover.vertex_index[b]} "
                    f"but edge indices sum to {isum}", (b, e)))
    return out


def cover_degree(cover: CoverMap) -> int:
    """Sum of [A_a : B_b] over the fibre of a; must agree for every a."""
    per_vertex: dict[str, int] = {a: 0 for a in cover.target.vertices}
    for b, a in cover.vertex_map.items():
        per_vertex[a] += cover.vertex_index[b]
    values = set(per_vertex.values())
    if len(values) != 1:
        raise DegreeMismatch(f"degree differs across vertices: {sorted(values)}")
    return values.pop()


def degrees_by_vertex(cover: CoverMap) -> dict[str, int]:
    per_vertex: dict[str, int] = {a: 0 for a in cover.target.vertices}
    for b, a in cover.vertex_map.items():
        per_vertex[a] += cover.vertex_index[b]
    return per_vertex


def pullback_orders(cover: CoverMap, base) -> Ordering:
    """Group orders |B_x| = |A_q(x)| / [A_q(x) : B_x] induced on the source."""
    if isinstance(base, FiniteGrouping):
        base = base.order_function()
    vals = {b: base[a] / cover.vertex_index[b] for b, a in cover.vertex_map.items()}
    vals.update({f: base[e] / cover.edge_index[f] for f, e in cover.edge_map.items()})
    return Ordering(cover.source, vals)


def volume_ratio_check(cover: CoverMap, grouping_A, grouping_B) -> bool:
    """deg(q) * Vol(A) == Vol(B) over all vertices, exactly."""
    _, oa = _orders(grouping_A)
    _, ob = _orders(grouping_B)
    for b, a in cover.vertex_map.items():
        if oa[a] != ob[b] * cover.vertex_index[b]:
            raise ValueError(f"groupings do not match the local index at {b!r}")
    return cover_degree(cover) * covolume(grouping_A, "all") == covolume(grouping_B, "all")


def build_index_cover(graph: EdgeIndexedGraph, d: int, mode: str = "group") -> CoverMap:
    """Degree-d cover fixture: `group` (isomorphism, indices d) or `topological`."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    if mode == "group":
        vmap = {v: v for v in graph.vertices}
        emap = {e: e for e in graph.edges}
        return CoverMap(graph, graph, vmap, emap,
                        {v: d for v in graph.vertices}, {e: d for e in graph.edges})
    if mode != "topological":
        raise ValueError(f"unknown mode {mode!r}")
    if not is_connected(graph):
        raise ValueError("graph must be connected")
    voltage = _cycle_voltage(graph)
    if voltage is None and d > 1:
        raise NoTopologicalCover("trees have no connected topological covers of degree > 1")
    voltage = voltage or {}
    vertices, edges = [], []
    vmap, emap = {}, {}
    for v, part in graph.vertices.items():
        for t in range(d):
            vid = f"{v}@{t}"
            vertices.append((vid, part))
            vmap[vid] = v
    for eid, e in graph.edges.items():
        shift = voltage.get(eid, 0)
        back = graph.edges[e.reverse]
        for t in range(d):
            fid = f"{eid}@{t}"
            rid = f"{e.reverse}@{(t + shift) % d}"
            edges.append((fid, f"{e.origin}@{t}", f"{e.terminus}@{(t + shift) % d}", e.index, rid))
            emap[fid] = eid
        assert voltage.get(back.id, 0) == -shift
    B = EdgeIndexedGraph.build(vertices, edges)
    return CoverMap(B, graph, vmap, emap, {b: 1 for b in vmap}, {f: 1 for f in emap})


def _cycle_voltage(graph: EdgeIndexedGraph) -> dict[str, int] | None:
    """+1/-1 on one edge pair outside a BFS spanning tree, or None for trees."""
    start = min(graph.vertices)
    seen = {start}
    tree_edges = set()
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for eid in graph.outgoing[v]:
                w = graph.edges[eid].terminus
                if w not in seen:
                    seen.add(w)
                    tree_edges.add(eid)
                    tree_edges.add(graph.edges[eid].reverse)
                    nxt.append(w)
        frontier = sorted(nxt)
    for eid in sorted(graph.edges):
        if eid not in tree_edges:
            return {eid: 1, graph.edges[eid].reverse: -1}
    return None


def divisibility_report(cover: CoverMap, base, primes: Iterable[int] = (2, 3, 5)) -> list[str]:
    """Check that |B_b| divides |A_a| (also p-parts) with ratios in [1, deg q]."""
    from .growth import p_order

    deg = cover_degree(cover)
    if isinstance(base, FiniteGrouping):
        base = base.order_function()
    pulled = pullback_orders(cover, base)
    problems = []
    for b, a in cover.vertex_map.items():
        A_ord, B_ord = base[a], pulled[b]
        if A_ord.denominator != 1 or B_ord.denominator != 1:
            problems.append(f"{b}: non-integral orders")
            continue
        A_ord, B_ord = A_ord.numerator, B_ord.numerator
        if A_ord % B_ord or not 1 <= A_ord // B_ord <= deg:
            problems.append(f"{b}: |B_b|={B_ord} vs |A_a|={A_ord}")
        for p in primes:
            pa, pb = p_order(A_ord, p), p_order(B_ord, p)
            if pa % pb or not 1 <= pa // pb <= deg:
                problems.append(f"{b}: {p}-orders {pb} vs {pa}")
    return problems


def induced_cover_grouping(cover: CoverMap, base: FiniteGrouping) -> FiniteGrouping:
    """Cyclic grouping on the source with orders pulled back from `base`."""
    orders = pullback_orders(cover, base)
    return canonical_cyclic_grouping(cover.source, orders)


def grouping_ordering_from(graph: EdgeIndexedGraph, base_vertex: str, value: int = 1) -> FiniteGrouping:
    return canonical_cyclic_grouping(graph, compute_ordering(graph, base_vertex, value))
