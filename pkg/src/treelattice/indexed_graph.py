"""Edge-indexed graphs, orderings and universal-cover expansion.

An edge-indexed graph stores oriented edges as explicit records with a
reverse pointer, an origin and a terminus, plus a positive integer index
i(e).  For a lift of v in the universal covering tree, each edge e with
terminus v has exactly i(e) lifts ending there.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import kernels


class GraphError(ValueError):
    """Raised when a graph fails structural validation."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics))


class NonUnimodular(ValueError):
    """Some cycle forces two different ordering values at one vertex."""

    def __init__(self, vertex, first: Fraction, second: Fraction, edge):
        self.vertex, self.first, self.second, self.edge = vertex, first, second, edge
        super().__init__(
            f"not unimodular: vertex {vertex!r} gets {first} and {second} (via edge {edge!r})")


class Diagnostic(NamedTuple):
    code: str
    message: str
    where: tuple = ()


@dataclass(frozen=True)
class Edge:
    id: str
    origin: str
    terminus: str
    index: int
    reverse: str


@dataclass(frozen=True, eq=False)
class EdgeIndexedGraph:
    """Locally finite graph with oriented edge pairs and an index per edge.

    `vertices` maps vertex id -> part (0, 1, or None when untagged).
    """

    vertices: Mapping[str, int | None]
    edges: Mapping[str, Edge]

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable, check: bool = True) -> "EdgeIndexedGraph":
        """Construct from vertex ids (or (id, part) pairs) and edge tuples.

        Edge tuples are ``(id, origin, terminus, index, reverse)``.
        """
        vmap: dict[str, int | None] = {}
        for v in vertices:
            if isinstance(v, tuple):
                vmap[str(v[0])] = v[1]
            else:
                vmap[str(v)] = None
        emap = {}
        for e in edges:
            eid, o, t, i, r = e
            emap[str(eid)] = Edge(str(eid), str(o), str(t), i, str(r))
        g = cls(vmap, emap)
        if check:
            diags = validate(g)
            if diags:
                raise GraphError(diags)
        return g

    @classmethod
    def from_pairs(cls, vertices: Iterable, pairs: Iterable, check: bool = True) -> "EdgeIndexedGraph":
        """Build from undirected pairs ``(u, v, i_at_v, i_at_u)``.

        The pair yields edge ``u>v`` with terminus v and index i_at_v, and its
        reverse ``v>u``.  Repeated pairs get a ``#k`` suffix.
        """
        edges = []
        seen: dict[tuple, int] = {}
        for u, v, i_v, i_u in pairs:
            u, v = str(u), str(v)
            k = seen.get((u, v), 0)
            seen[(u, v)] = k + 1
            suffix = f"#{k}" if k else ""
            a, b = f"{u}>{v}{suffix}", f"{v}>{u}{suffix}"
            if a == b:
                b = b + "'"
            edges.append((a, u, v, i_v, b))
            edges.append((b, v, u, i_u, a))
        return cls.build(vertices, edges, check=check)

    def __eq__(self, other) -> bool:
        return (isinstance(other, EdgeIndexedGraph)
                and dict(self.vertices) == dict(other.vertices)
                and dict(self.edges) == dict(other.edges))

    def __repr__(self) -> str:
        return f"EdgeIndexedGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    @cached_property
    def incoming(self) -> dict[str, list[str]]:
        """vertex -> sorted ids of edges e with terminus(e) = vertex."""
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            out.setdefault(self.edges[e].terminus, []).append(e)
        return out

    @cached_property
    def outgoing(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            out.setdefault(self.edges[e].origin, []).append(e)
        return out

    def index(self, e: str) -> int:
        return self.edges[e].index

    def degree(self, v: str) -> int:
        return len(self.incoming[v])

    def index_sum(self, v: str) -> int:
        """Degree of any lift of v in the universal covering tree."""
        return sum(self.edges[e].index for e in self.incoming[v])

    def edge_pairs(self) -> list[tuple[str, str]]:
        """One (e, reverse(e)) per geometric edge, e the smaller id."""
        return [(e, r.reverse) for e, r in sorted(self.edges.items()) if e < r.reverse]

    def is_tree(self) -> bool:
        return is_connected(self) and len(self.edges) == 2 * (len(self.vertices) - 1)

    def with_indices(self, index: Mapping[str, int]) -> "EdgeIndexedGraph":
        edges = {e: Edge(r.id, r.origin, r.terminus, index.get(e, r.index), r.reverse)
                 for e, r in self.edges.items()}
        return EdgeIndexedGraph(dict(self.vertices), edges)

    @cached_property
    def _csr(self):
        """Integer encodings used by the kernels."""
        vids = sorted(self.vertices)
        vpos = {v: k for k, v in enumerate(vids)}
        eids = sorted(self.edges)
        epos = {e: k for k, e in enumerate(eids)}
        origin = np.array([vpos[self.edges[e].origin] for e in eids], dtype=np.int64)
        index = np.array([self.edges[e].index for e in eids], dtype=np.int64)
        reverse = np.array([epos[self.edges[e].reverse] for e in eids], dtype=np.int64)
        in_ptr = [0]
        in_edges = []
        nbr_ptr = [0]
        nbrs = []
        for v in vids:
            in_edges.extend(epos[e] for e in self.incoming[v])
            in_ptr.append(len(in_edges))
            nbrs.extend(vpos[self.edges[e].origin] for e in self.incoming[v])
            nbr_ptr.append(len(nbrs))
        return {
            "vids": vids, "vpos": vpos, "eids": eids, "epos": epos,
            "origin": origin, "index": index, "reverse": reverse,
            "in_ptr": np.array(in_ptr, dtype=np.int64),
            "in_edges": np.array(in_edges, dtype=np.int64),
            "nbr_ptr": np.array(nbr_ptr, dtype=np.int64),
            "nbrs": np.array(nbrs, dtype=np.int64),
        }

    def distances(self, source: str, max_dist: int = -1) -> dict[str, int]:
        """Combinatorial distances from `source` (vertices within max_dist)."""
        csr = self._csr
        limit = max_dist if max_dist >= 0 else len(csr["vids"])
        dist = kernels.bfs_distances(csr["nbr_ptr"], csr["nbrs"], csr["vpos"][source], limit)
        return {csr["vids"][k]: int(d) for k, d in enumerate(dist) if d >= 0}

    # serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "part": p} for v, p in sorted(self.vertices.items())],
            "edges": [
                {"id": e.id, "origin": e.origin, "terminus": e.terminus,
                 "index": e.index, "reverse": e.reverse}
                for _, e in sorted(self.edges.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EdgeIndexedGraph":
        if isinstance(data, str):
            data = json.loads(data)
        vertices = [(str(v["id"]), v.get("part")) for v in data["vertices"]]
        edges = [(e["id"], e["origin"], e["terminus"], e["index"], e["reverse"])
                 for e in data["edges"]]
        return cls.build(vertices, edges, check=True)


def validate(graph: EdgeIndexedGraph) -> list[Diagnostic]:
    """Structural invariant violations; an empty list means valid."""
    out: list[Diagnostic] = []
    V, E = graph.vertices, graph.edges
    for v, part in V.items():
        if part not in (None, 0, 1):
            out.append(Diagnostic("bad-part", f"vertex {v!r}: part must be 0, 1 or null", (v,)))
    for eid, e in sorted(E.items()):
        if e.origin not in V or e.terminus not in V:
            out.append(Diagnostic("dangling", f"edge {eid!r}: endpoint is not a vertex", (eid,)))
        if isinstance(e.index, bool) or not isinstance(e.index, int) or e.index < 1:
            out.append(Diagnostic("index", f"edge {eid!r}: index must be ≥ 1", (eid,)))
        if e.reverse == eid:
            out.append(Diagnostic("fixed-point", f"edge {eid!r}: involution has fixed point", (eid,)))
            continue
        r = E.get(e.reverse)
        if r is None:
            out.append(Diagnostic("reverse", f"edge {eid!r}: reverse {e.reverse!r} missing", (eid,)))
            continue
        if r.reverse != eid:
            out.append(Diagnostic("involution", f"edge {eid!r}: reverse is not an involution", (eid,)))
        if r.terminus != e.origin or r.origin != e.terminus:
            out.append(Diagnostic("endpoints", f"edge {eid!r}: origin differs from terminus of reverse", (eid,)))
        if e.origin in V and e.terminus in V:
            po, pt = V[e.origin], V[e.terminus]
            if po is not None and pt is not None and po == pt:
                out.append(Diagnostic("bipartite", f"edge {eid!r}: joins two vertices of part {po}", (eid,)))
    tagged = [p is not None for p in V.values()]
    if any(tagged) and not all(tagged):
        out.append(Diagnostic("bipartite", "bipartition tags must be on all vertices or none"))
    return out


def is_connected(graph: EdgeIndexedGraph) -> bool:
    if not graph.vertices:
        return True
    start = min(graph.vertices)
    return len(graph.distances(start)) == len(graph.vertices)


@dataclass(frozen=True, eq=False)
class Ordering:
    """Positive rational values on vertices and oriented edges."""

    graph: EdgeIndexedGraph
    values: Mapping[str, Fraction] = field(repr=False)

    def __getitem__(self, key: str) -> Fraction:
        return self.values[key]

    def vertex_values(self) -> dict[str, Fraction]:
        return {v: self.values[v] for v in self.graph.vertices}

    def edge_values(self) -> dict[str, Fraction]:
        return {e: self.values[e] for e in self.graph.edges}

    def scaled(self, c) -> "Ordering":
        c = Fraction(c)
        return Ordering(self.graph, {k: x * c for k, x in self.values.items()})

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.values.values())

    def check(self) -> list[str]:
        """Violations of N(e) = N(reverse e) = N(terminus e) / i(e)."""
        bad = []
        for eid, e in self.graph.edges.items():
            Ne = self.values[eid]
            if Ne <= 0 or self.values[e.terminus] <= 0:
                bad.append(f"{eid}: nonpositive value")
            if Ne != self.values[e.reverse]:
                bad.append(f"{eid}: N(e) != N(reverse e)")
            if Ne * e.index != self.values[e.terminus]:
                bad.append(f"{eid}: N(e) * i(e) != N(terminus)")
        return bad

    def __eq__(self, other) -> bool:
        return isinstance(other, Ordering) and dict(self.values) == dict(other.values)


def compute_ordering(graph: EdgeIndexedGraph, base_vertex: str, base_value=1) -> Ordering:
    """The unique ordering with N(base_vertex) = base_value.

    Values are propagated breadth-first along a spanning tree in sorted
    edge order; every edge is then checked, so a cycle with inconsistent
    indices raises `NonUnimodular`.
    """
    base_value = Fraction(base_value)
    if base_value <= 0:
        raise ValueError("base value must be positive")
    if base_vertex not in graph.vertices:
        raise KeyError(base_vertex)
    E = graph.edges
    N: dict[str, Fraction] = {base_vertex: base_value}
    queue = deque([base_vertex])
    while queue:
        v = queue.popleft()
        for eid in graph.outgoing[v]:
            e = E[eid]
            # N(terminus) = N(origin) * i(e) / i(reverse e)
            w_val = N[v] * e.index / E[e.reverse].index
            if e.terminus not in N:
                N[e.terminus] = w_val
                queue.append(e.terminus)
            elif N[e.terminus] != w_val:
                raise NonUnimodular(e.terminus, N[e.terminus], w_val, eid)
    if len(N) != len(graph.vertices):
        raise ValueError("graph is not connected")
    values = dict(N)
    for eid, e in E.items():
        values[eid] = N[e.terminus] / e.index
    return Ordering(graph, values)


def is_unimodular(graph: EdgeIndexedGraph) -> bool:
    if not graph.vertices:
        return True
    try:
        compute_ordering(graph, min(graph.vertices))
    except NonUnimodular:
        return False
    return True


def minimal_integral_ordering(ordering: Ordering) -> Ordering:
    """Rescale so that every value is an integer and the overall gcd is 1."""
    vals = list(ordering.values.values())
    den = lcm(*(x.denominator for x in vals)) if vals else 1
    num = 0
    for x in vals:
        num = gcd(num, (x * den).numerator)
    return ordering.scaled(Fraction(den, num or 1))


class CoverBall(NamedTuple):
    """Ball in the universal covering tree.

    `labels[t]` is the path of (edge id, copy) pairs from the root; node t
    projects to `projection[t]` and hangs off `parent[t]`.
    """

    labels: list[tuple]
    projection: list[str]
    parent: list[int]
    depth: list[int]

    def degrees(self) -> list[int]:
        deg = [0] * len(self.parent)
        for t, p in enumerate(self.parent):
            if p >= 0:
                deg[t] += 1
                deg[p] += 1
        return deg

    def interior(self) -> list[int]:
        """Nodes strictly inside the ball (all neighbours present)."""
        radius = max(self.depth)
        return [t for t, d in enumerate(self.depth) if d < radius]


def universal_cover_ball(graph: EdgeIndexedGraph, base_vertex: str, radius: int) -> CoverBall:
    """Combinatorial ball of radius `radius` in the universal covering tree."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    csr = graph._csr
    proj, parent, via, copy, depth = kernels.expand_cover(
        csr["in_ptr"], csr["in_edges"], csr["origin"], csr["index"], csr["reverse"],
        csr["vpos"][base_vertex], radius)
    vids, eids = csr["vids"], csr["eids"]
    labels: list[tuple] = [()]
    for t in range(1, len(proj)):
        labels.append(labels[parent[t]] + ((eids[via[t]], int(copy[t])),))
    return CoverBall(labels, [vids[p] for p in proj], parent.tolist(), depth.tolist())


def covers_biregular(graph: EdgeIndexedGraph, m: int, n: int) -> bool:
    """Local test that the universal cover is the (m, n)-biregular tree."""
    for v, part in graph.vertices.items():
        if part is None:
            raise ValueError("graph has no bipartition tags")
        want = m if part == 0 else n
        if graph.index_sum(v) != want:
            return False
    return True


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_dot(graph: EdgeIndexedGraph, ordering: Ordering | None = None, name: str = "A") -> str:
    """Graphviz text: one undirected edge per edge pair, indices at the ends."""
    lines = [f"graph {name} {{"]
    for v, part in sorted(graph.vertices.items()):
        label = _fmt(ordering[v]) if ordering is not None else v
        shape = "circle" if part == 0 else "point" if part == 1 and ordering is None else "ellipse"
        lines.append(f'  "{v}" [label="{label}", shape={shape}];')
    for a, b in graph.edge_pairs():
        e, r = graph.edges[a], graph.edges[b]
        lines.append(f'  "{e.origin}" -- "{e.terminus}" '
                     f'[taillabel="{r.index}", headlabel="{e.index}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
