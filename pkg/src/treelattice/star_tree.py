"""Star trees: finite descriptions, indexings, truncations and covolumes.

A star tree of degree m is a bipartite tree whose V0 vertices ("centers")
have degree m and whose V1 vertices have degree 1 ("leaves") or 2
("joints").  A spec is a spine block rooted at the basepoint v0, plus
blocks glued on.  Gluing a block at level q turns a free leaf of a spine
center at level q-1 into the joint above the block's root, which then has
level q.  Every block is described by its number of centers per relative
level; children are spread as evenly as possible over the parents.

The level l(v) of a center is the number of V1 vertices on its path to
v0.  Under the indexing of an admissible sequence s the ordering takes the
value h(l(v)) = (s_1 - 1) ... (s_l - 1) at v; the canonical indexing is the
constant sequence s = n, where h(l) = (n-1)^l.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Mapping, Protocol, Sequence

import numpy as np

from .growth import GrowthFunction, Polynomial, _summable_against, is_acceptable, parse_growth
from .indexed_graph import EdgeIndexedGraph, Ordering
from .sequences import EventuallyPeriodic, Weights


class StarTreeError(ValueError):
    pass


class DivergentCovolume(ValueError):
    pass


# sequences -----------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibleSequence:
    """s = (s_k), k >= 1, with s_k | n and 2 < s_k <= n."""

    n: int
    s: EventuallyPeriodic

    def __post_init__(self):
        if self.n < 3:
            raise StarTreeError("n must be at least 3")
        for x in self.s.values():
            if self.n % x or not 2 < x <= self.n:
                raise StarTreeError(f"s_k = {x} is not admissible for n = {self.n}")

    @classmethod
    def canonical(cls, n: int) -> "AdmissibleSequence":
        return cls(n, EventuallyPeriodic.constant(n))

    @classmethod
    def of(cls, n: int, values) -> "AdmissibleSequence":
        if isinstance(values, str):
            return cls(n, EventuallyPeriodic.parse(values))
        if isinstance(values, EventuallyPeriodic):
            return cls(n, values)
        return cls(n, EventuallyPeriodic((), tuple(values)))

    @property
    def is_canonical(self) -> bool:
        return self.s.values() == {self.n}

    def __getitem__(self, k: int) -> int:
        return self.s[k]

    def r(self, k: int) -> int:
        return self.n // self.s[k]

    @cached_property
    def weights(self) -> Weights:
        return Weights.from_sequence(self.s)

    def h(self, k: int) -> int:
        return self.weights(k)

    def near_index(self, k: int) -> int:
        """Index of the edge from the level k-1 center into the joint."""
        return self.n - self.r(k)

    def far_index(self, k: int) -> int:
        """Index of the edge from the level k center into the joint."""
        return self.r(k)

    def to_json(self) -> dict:
        return {"n": self.n, "s": self.s.notation()}


# blocks --------------------------------------------------------------------

class Block:
    """Finite or infinite star tree described by centers per relative level."""

    kind = "block"
    depth: int | None = None  # number of levels; None when infinite

    def count(self, i: int) -> int:
        raise NotImplementedError

    def counts(self, upto: int) -> list[int]:
        top = upto if self.depth is None else min(upto, self.depth - 1)
        return [self.count(i) for i in range(top + 1)]

    def check(self, m: int) -> None:
        """Raise unless each level fits under the previous one."""
        top = self.depth - 1 if self.depth is not None else 64
        for i in range(top):
            a, b = self.count(i), self.count(i + 1)
            if b > (m - 1) * a:
                raise StarTreeError(
                    f"{self.kind}: {b} centers at level {i + 1} cannot hang off {a} "
                    f"centers of degree {m}")

    def contribution(self, q: int, weights: Weights) -> Fraction | None:
        """Exact sum of count(i) / h(q + i), or None if no closed form."""
        if self.depth is None:
            return None
        return sum((Fraction(self.count(i), weights(q + i)) for i in range(self.depth)), Fraction(0))

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class BpBlock(Block):
    """b^i centers at relative level i for i < p."""

    p: int
    b: int
    kind = "Bp"

    def __post_init__(self):
        if self.p < 1 or self.b < 1:
            raise StarTreeError("B_p needs p >= 1 and b >= 1")

    @property
    def depth(self) -> int:
        return self.p

    def count(self, i: int) -> int:
        return self.b ** i if 0 <= i < self.p else 0

    def check(self, m: int) -> None:
        if self.p > 1 and self.b > m - 1:
            raise StarTreeError(f"branching {self.b} exceeds m - 1 = {m - 1}")

    def to_json(self) -> dict:
        return {"kind": "Bp", "p": self.p, "b": self.b}


@dataclass(frozen=True)
class BpqBlock(Block):
    """h(q+i)/h(q) centers at relative level i for i < p."""

    p: int
    q: int
    seq: AdmissibleSequence
    kind = "Bpq"

    def __post_init__(self):
        if self.p < 1 or self.q < 0:
            raise StarTreeError("B_{p,q} needs p >= 1 and q >= 0")

    @property
    def depth(self) -> int:
        return self.p

    def count(self, i: int) -> int:
        if not 0 <= i < self.p:
            return 0
        return self.seq.h(self.q + i) // self.seq.h(self.q)

    def check(self, m: int) -> None:
        for i in range(1, self.p):
            if self.seq.weights.ratio(self.q + i) > m - 1:
                raise StarTreeError(
                    f"branching {self.seq.weights.ratio(self.q + i)} exceeds m - 1 = {m - 1}")

    def to_json(self) -> dict:
        return {"kind": "Bpq", "p": self.p, "q": self.q, "s": self.seq.s.notation()}


@dataclass(frozen=True)
class TfBlock(Block):
    """f(i) centers at relative level i, for all i."""

    f: GrowthFunction
    kind = "Tf"

    def count(self, i: int) -> int:
        return self.f(i)

    def check(self, m: int) -> None:
        if self.f(0) != 1:
            raise StarTreeError("T_f needs f(0) = 1")
        # beyond doubling_from the ratio is at most 2 <= m - 1
        try:
            start = self.f.doubling_from()
        except ValueError:
            start = None  # table without tail rule: only the prefix is known
        top = max(start or 0, 64)
        for i in range(top):
            a, b = self.f(i), self.f(i + 1)
            if not 1 <= b <= (m - 1) * a:
                raise StarTreeError(f"T_f: f({i + 1}) = {b} does not fit under f({i}) = {a}")
        if start is not None and start < 0 and self.f.ratio_bound(top) > m - 1:
            raise StarTreeError("T_f: f grows faster than m - 1 allows")

    def contribution(self, q: int, weights: Weights) -> Fraction | None:
        f = self.f
        if isinstance(f, Polynomial) and f.degree == 0:
            return f(0) * weights.tail(q - 1) if q >= 1 else f(0) * weights.kappa0
        return None

    def to_json(self) -> dict:
        return {"kind": "Tf", "f": self.f.describe()}


@dataclass(frozen=True)
class ExplicitBlock(Block):
    """Finite star tree given by its centers per level."""

    level_counts: tuple[int, ...]
    kind = "explicit"

    def __post_init__(self):
        if not self.level_counts or self.level_counts[0] != 1 or min(self.level_counts) < 1:
            raise StarTreeError("explicit block needs counts (1, c1, c2, ...) all positive")

    @property
    def depth(self) -> int:
        return len(self.level_counts)

    def count(self, i: int) -> int:
        return self.level_counts[i] if 0 <= i < len(self.level_counts) else 0

    def to_json(self) -> dict:
        return {"kind": "explicit", "counts": list(self.level_counts)}


RAY = TfBlock(Polynomial((1,)))


def block_from_json(d: Mapping) -> Block:
    kind = d["kind"]
    if kind == "Bp":
        return BpBlock(d["p"], d["b"])
    if kind == "Bpq":
        return BpqBlock(d["p"], d["q"], AdmissibleSequence.of(d["n"], d["s"]))
    if kind == "Tf":
        f = d["f"]
        return TfBlock(parse_growth(f) if isinstance(f, str) else _growth_from_desc(f))
    if kind == "explicit":
        return ExplicitBlock(tuple(d["counts"]))
    if kind == "ray":
        return RAY
    raise StarTreeError(f"unknown block kind {kind!r}")


def _growth_from_desc(d: Mapping) -> GrowthFunction:
    from . import growth as g

    fam = d["family"]
    if fam == "polynomial":
        return g.Polynomial(tuple(d["coeffs"]))
    if fam == "exponential":
        return g.Exponential(Fraction(d["base"]))
    if fam == "stretched":
        return g.StretchedExponential(Fraction(d["beta"]))
    if fam == "product":
        return g.ProductForm(EventuallyPeriodic.parse(d["s"]))
    if fam == "envelope":
        return g.Envelope(_growth_from_desc(d["inner"]))
    raise StarTreeError(f"unknown growth family {fam!r}")


# digit rules ----------------------------------------------------------------

class DigitSource(Protocol):
    def __getitem__(self, j: int) -> int: ...


@dataclass(frozen=True)
class DigitRule:
    """Glue one block with e_j levels at every level j >= 1, j != skip.

    The block is B_{e_j} with branching b, or B_{e_j, j} under `seq` when
    `seq` is given.  `bound` caps every digit.
    """

    digits: DigitSource
    bound: int
    b: int | None = None
    seq: AdmissibleSequence | None = None
    skip: int | None = None

    def __post_init__(self):
        if (self.b is None) == (self.seq is None):
            raise StarTreeError("digit rule needs exactly one of b or seq")

    def block(self, j: int) -> Block | None:
        if j < 1 or j == self.skip:
            return None
        e = self.digits[j]
        if e == 0:
            return None
        if self.seq is not None:
            return BpqBlock(e, j, self.seq)
        return BpBlock(e, self.b)

    @property
    def periodic(self) -> bool:
        return isinstance(self.digits, EventuallyPeriodic)

    def matches(self, weights: Weights) -> bool:
        """Does every block contribute exactly e_j / h(j) under these weights?"""
        if self.seq is not None:
            return self.seq.weights == weights
        return weights.ratios.values() == {self.b} or self.bound <= 1

    def to_json(self) -> dict:
        d = {"bound": self.bound, "skip": self.skip}
        if self.periodic:
            d["digits"] = self.digits.notation()
        else:
            d["digits"] = {"lazy": True, "prefix": [self.digits[j] for j in range(1, 21)]}
        if self.seq is not None:
            d["block"] = "Bpq"
            d["s"] = self.seq.s.notation()
            d["n"] = self.seq.n
        else:
            d["block"] = "Bp"
            d["b"] = self.b
        return d


# specs ------------------------------------------------------------------------

@dataclass(frozen=True)
class Gluing:
    block: Block
    level: int


@dataclass(frozen=True, eq=False)
class StarTreeSpec:
    m: int
    spine: Block = RAY
    gluings: tuple[Gluing, ...] = ()
    digit_rule: DigitRule | None = None

    def __post_init__(self):
        if self.m < 3:
            raise StarTreeError("star trees need m >= 3")
        self.spine.check(self.m)
        for g in self.gluings:
            g.block.check(self.m)
            if g.level < 1:
                raise StarTreeError("gluing level must be at least 1")

    @property
    def is_infinite(self) -> bool:
        blocks = [self.spine] + [g.block for g in self.gluings]
        return any(b.depth is None for b in blocks) or (
            self.digit_rule is not None and not (
                self.digit_rule.periodic and self.digit_rule.digits.is_finite))

    @property
    def max_level(self) -> int | None:
        """Deepest level of a finite spec, None when infinite."""
        if self.is_infinite:
            return None
        top = self.spine.depth - 1
        for g in self.gluings:
            top = max(top, g.level + g.block.depth - 1)
        if self.digit_rule is not None:
            for j in range(1, self.digit_rule.digits.support_end + 1):
                blk = self.digit_rule.block(j)
                if blk is not None:
                    top = max(top, j + blk.depth - 1)
        return top

    def free_sites(self, q: int) -> int:
        """Unused leaves on spine centers of level q - 1."""
        if q < 1:
            return 0
        c_prev, c_here = self.spine.count(q - 1), self.spine.count(q)
        if c_prev == 0:
            return 0
        leaves = (self.m - 1) * c_prev + (1 if q == 1 else 0) - c_here
        used = sum(1 for g in self.gluings if g.level == q)
        if self.digit_rule is not None and q != self.digit_rule.skip:
            used += 1
        return leaves - used

    def glue(self, block: Block, level: int) -> "StarTreeSpec":
        block.check(self.m)
        if self.free_sites(level) < 1:
            raise StarTreeError(f"no free attachment site at level {level}")
        return StarTreeSpec(self.m, self.spine, self.gluings + (Gluing(block, level),),
                            self.digit_rule)

    def with_digits(self, rule: DigitRule) -> "StarTreeSpec":
        if self.digit_rule is not None:
            raise StarTreeError("spec already has a digit rule")
        spec = StarTreeSpec(self.m, self.spine, self.gluings, rule)
        for j in range(1, 8):
            if spec.free_sites(j) < 0:
                raise StarTreeError(f"no free attachment site at level {j}")
        return spec

    def placed_blocks(self, max_level: int) -> Iterator[tuple[str, Block, int]]:
        """(root name, block, level) for every glued block with level <= max_level."""
        for gi, g in enumerate(self.gluings):
            if g.level <= max_level:
                yield f"g{gi}", g.block, g.level
        rule = self.digit_rule
        if rule is not None:
            for j in range(1, max_level + 1):
                blk = rule.block(j)
                if blk is not None:
                    yield f"d{j}", blk, j

    def level_count(self, L: int) -> int:
        """Number of centers at level L."""
        total = self.spine.count(L)
        for g in self.gluings:
            if L >= g.level:
                total += g.block.count(L - g.level)
        rule = self.digit_rule
        if rule is not None:
            for j in range(max(1, L - rule.bound + 1), L + 1):
                blk = rule.block(j)
                if blk is not None:
                    total += blk.count(L - j)
        return total

    def level_counts(self, depth: int) -> list[int]:
        return [self.level_count(L) for L in range(depth + 1)]

    def truncate(self, depth: int) -> "Truncation":
        return Truncation.build(self, depth)

    # serialization

    def to_json(self) -> dict:
        if self.spine == RAY:
            spine = "ray"
        elif self.spine == BpBlock(1, 1):
            spine = "star"
        else:
            spine = self.spine.to_json()
        d = {"m": self.m, "spine": spine,
             "gluings": [{"block": _block_json(g.block), "level": g.level} for g in self.gluings]}
        if self.digit_rule is not None:
            d["generator_rule"] = self.digit_rule.to_json()
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "StarTreeSpec":
        spine = d.get("spine", "ray")
        if spine == "ray":
            spine_block = RAY
        elif spine == "star":
            spine_block = BpBlock(1, 1)
        else:
            spine_block = block_from_json(spine)
        gl = []
        for g in d.get("gluings", ()):
            bd = dict(g["block"])
            if bd.get("kind") == "Bpq" and "n" not in bd:
                raise StarTreeError("Bpq block needs n")
            gl.append(Gluing(block_from_json(bd), g["level"]))
        spec = cls(d["m"], spine_block, tuple(gl))
        rule = d.get("generator_rule")
        if rule:
            digits = rule["digits"]
            if isinstance(digits, dict):
                raise StarTreeError("lazy digit rules cannot be loaded from JSON")
            digits = EventuallyPeriodic.parse(digits)
            if rule["block"] == "Bpq":
                r = DigitRule(digits, rule["bound"], seq=AdmissibleSequence.of(rule["n"], rule["s"]),
                              skip=rule.get("skip"))
            else:
                r = DigitRule(digits, rule["bound"], b=rule["b"], skip=rule.get("skip"))
            spec = spec.with_digits(r)
        return spec


def _block_json(b: Block) -> dict:
    d = b.to_json()
    if isinstance(b, BpqBlock):
        d["n"] = b.seq.n
    return d


def build_star_ray(m: int) -> StarTreeSpec:
    return StarTreeSpec(m, RAY)


def build_star(m: int) -> StarTreeSpec:
    """A single star of degree m."""
    return StarTreeSpec(m, BpBlock(1, 1))


def build_Bp(p: int, m: int, b: int) -> StarTreeSpec:
    """Finite star tree with b^j centers at level j < p; v0/l0 is c0."""
    blk = BpBlock(p, b)
    blk.check(m)
    return StarTreeSpec(m, blk)


def build_Bpq(p: int, q: int, seq: AdmissibleSequence, m: int) -> StarTreeSpec:
    blk = BpqBlock(p, q, seq)
    blk.check(m)
    return StarTreeSpec(m, blk)


def build_Tf(f: GrowthFunction, m: int, n: int | None = None) -> StarTreeSpec:
    """Star tree with f(j) centers at level j; v0/l0 is kept free as c0.

    With `n` given, the covolume series only has to converge against
    (n-1)^j rather than 2^j.
    """
    verdict = is_acceptable(f)
    if not verdict.ok:
        # with n given, only convergence against (n-1)^j is required
        others = [r for r in verdict.reasons if "diverges" not in r and "f(j+1) <= 2" not in r
                  and "growth step" not in r]
        if n is None or others or not _summable_against(f, Fraction(n - 1)):
            raise StarTreeError("f is not acceptable: " + "; ".join(verdict.reasons))
    blk = TfBlock(f)
    blk.check(m)
    return StarTreeSpec(m, blk)


def glue(spec: StarTreeSpec, block: Block | StarTreeSpec, level: int) -> StarTreeSpec:
    if isinstance(block, StarTreeSpec):
        if block.gluings or block.digit_rule is not None:
            raise StarTreeError("only single-block specs can be glued")
        block = block.spine
    return spec.glue(block, level)


# truncations -------------------------------------------------------------------

@dataclass(eq=False)
class Truncation:
    """All centers of level <= depth, as integer arrays plus names."""

    spec: StarTreeSpec
    depth: int
    names: list[str]
    level: np.ndarray
    parent: np.ndarray
    nchildren: np.ndarray

    @classmethod
    def build(cls, spec: StarTreeSpec, depth: int) -> "Truncation":
        m = spec.m
        names: list[str] = []
        level: list[int] = []
        parent: list[int] = []

        def grow(root_name: str, block: Block, base_level: int, root_parent: int) -> list[list[int]]:
            rows = [[len(names)]]
            names.append(root_name)
            level.append(base_level)
            parent.append(root_parent)
            i = 0
            while base_level + i + 1 <= depth:
                want = block.count(i + 1)
                if want == 0:
                    break
                prev = rows[-1]
                row = []
                seen: dict[int, int] = {}
                for t in range(want):
                    p = prev[t * len(prev) // want]
                    k = seen.get(p, 0)
                    seen[p] = k + 1
                    row.append(len(names))
                    names.append(f"{names[p]}.{k}")
                    level.append(base_level + i + 1)
                    parent.append(p)
                rows.append(row)
                i += 1
            return rows

        if spec.spine == RAY:
            for L in range(depth + 1):
                names.append(f"v{L}")
                level.append(L)
                parent.append(L - 1)
            spine_rows = [[L] for L in range(depth + 1)]
        else:
            spine_rows = grow("v0", spec.spine, 0, -1)
        used = [0] * len(names)
        for root, blk, q in spec.placed_blocks(depth):
            # first spine center at level q-1 with a free leaf
            host = None
            for c in spine_rows[q - 1] if q - 1 < len(spine_rows) else []:
                kids = sum(1 for x in spine_rows[q] if parent[x] == c) if q < len(spine_rows) else 0
                cap = m - (0 if c == 0 else 1) - kids
                if used[c] < cap:
                    host = c
                    break
            if host is None:
                raise StarTreeError(f"no free attachment site at level {q}")
            used[host] += 1
            start = len(names)
            grow(root, blk, q, host)
            used.extend([0] * (len(names) - start))
        par = np.asarray(parent, dtype=np.int64)
        nch = np.bincount(par[par >= 0], minlength=len(names)).astype(np.int64)
        lev = np.asarray(level, dtype=np.int64)
        slack = m - nch - (par >= 0)
        if (slack < 0).any():
            bad = int(np.argmin(slack))
            raise StarTreeError(f"center {names[bad]} has more than m neighbours")
        return cls(spec, depth, names, lev, par, nch)

    @property
    def n_centers(self) -> int:
        return len(self.names)

    def level_counts(self) -> list[int]:
        return np.bincount(self.level, minlength=self.depth + 1).tolist()

    def leaf_count(self, c: int) -> int:
        return self.spec.m - int(self.nchildren[c]) - (1 if self.parent[c] >= 0 else 0)

    def graph(self, seq: AdmissibleSequence) -> EdgeIndexedGraph:
        """The truncated star tree with the indexing I(A, s)."""
        n = seq.n
        vertices = []
        pairs = []
        for c, name in enumerate(self.names):
            vertices.append((name, 0))
            p = int(self.parent[c])
            if p >= 0:
                k = int(self.level[c])
                joint = f"{name}^"
                vertices.append((joint, 1))
                pairs.append((self.names[p], joint, seq.near_index(k), 1))
                pairs.append((name, joint, seq.far_index(k), 1))
            for t in range(self.leaf_count(c)):
                leaf = f"{name}/l{t}"
                vertices.append((leaf, 1))
                pairs.append((name, leaf, n, 1))
        return EdgeIndexedGraph.from_pairs(vertices, pairs, check=False)

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(indptr, indices, part) adjacency without building names.

        Vertex numbering: centers 0..C-1 first, then joints, then leaves.
        """
        C = self.n_centers
        has_parent = self.parent >= 0
        joint_of = np.full(C, -1, dtype=np.int64)
        joint_of[has_parent] = C + np.arange(int(has_parent.sum()), dtype=np.int64)
        n_joints = int(has_parent.sum())
        leaves = self.spec.m - self.nchildren - has_parent.astype(np.int64)
        V = C + n_joints + int(leaves.sum())
        src = []
        dst = []
        # center - parent joint, joint - parent center
        cs = np.nonzero(has_parent)[0]
        src += [cs, joint_of[cs], joint_of[cs], self.parent[cs]]
        dst += [joint_of[cs], cs, self.parent[cs], joint_of[cs]]
        # center - leaves
        owner = np.repeat(np.arange(C, dtype=np.int64), leaves)
        leaf_ids = np.arange(C + n_joints, V, dtype=np.int64)
        src += [owner, leaf_ids]
        dst += [leaf_ids, owner]
        src_a = np.concatenate(src)
        dst_a = np.concatenate(dst)
        order = np.argsort(src_a, kind="stable")
        indices = dst_a[order]
        indptr = np.concatenate([[0], np.cumsum(np.bincount(src_a, minlength=V))]).astype(np.int64)
        part = np.zeros(V, dtype=np.int64)
        part[C:] = 1
        return indptr, indices.astype(np.int64), part


@dataclass(frozen=True, eq=False)
class IndexedStarTree:
    """A star-tree spec together with the indexing of an admissible sequence."""

    spec: StarTreeSpec
    seq: AdmissibleSequence

    @property
    def n(self) -> int:
        return self.seq.n

    @property
    def weights(self) -> Weights:
        return self.seq.weights

    def truncation(self, depth: int | None = None) -> Truncation:
        if depth is None:
            depth = self.spec.max_level
            if depth is None:
                raise StarTreeError("infinite spec: give a truncation depth")
        return self.spec.truncate(depth)

    def graph(self, depth: int | None = None) -> EdgeIndexedGraph:
        return self.truncation(depth).graph(self.seq)

    def expected_ordering(self, graph: EdgeIndexedGraph, levels: Mapping[str, int]) -> dict[str, int]:
        """N(v) = h(l(v)) at every center."""
        return {v: self.seq.h(levels[v]) for v in levels}


def canonical_indexing(spec: StarTreeSpec, n: int) -> IndexedStarTree:
    return IndexedStarTree(spec, AdmissibleSequence.canonical(n))


def admissible_indexing(spec: StarTreeSpec, seq: AdmissibleSequence) -> IndexedStarTree:
    return IndexedStarTree(spec, seq)


def levels_by_path(graph: EdgeIndexedGraph, basepoint: str = "v0") -> dict[str, int]:
    """Level of each center: V1 vertices on its path to the basepoint."""
    dist = graph.distances(basepoint)
    return {v: d // 2 for v, d in dist.items() if graph.vertices[v] == 0}


# covolume ----------------------------------------------------------------------

@dataclass(frozen=True)
class CovolumeInterval:
    """Rigorous bracket: partial sum over levels <= depth, plus a tail bound."""

    lo: Fraction
    hi: Fraction
    depth: int
    provenance: str = "partial sum + tail bound"

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def scaled(self, c: Fraction) -> "CovolumeInterval":
        return CovolumeInterval(self.lo * c, self.hi * c, self.depth, self.provenance)

    def __str__(self) -> str:
        return f"[{_q(self.lo)}, {_q(self.hi)}]"


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def selector_factor(selector, m: int, n: int) -> Fraction:
    """Covolume over V1 or V relative to V0.

    Each center at level l carries one V0 vertex of weight 1/h(l) and V1
    vertices of total weight m / (n h(l)), whatever the admissible indexing.
    """
    if selector in ("v0", "V0", 0):
        return Fraction(1)
    if selector in ("v1", "V1", 1):
        return Fraction(m, n)
    if selector in ("all", "V", None):
        return Fraction(n + m, n)
    raise ValueError(f"selector {selector!r} is not available for star-tree specs")


def _as_seq(indexing) -> AdmissibleSequence:
    if isinstance(indexing, AdmissibleSequence):
        return indexing
    if isinstance(indexing, IndexedStarTree):
        return indexing.seq
    return AdmissibleSequence.canonical(int(indexing))


def _tf_tail(f: GrowthFunction, q: int, start: int, weights: Weights) -> Fraction:
    """Upper bound for sum over i >= start of f(i) / h(q + i)."""
    rho = Fraction(weights.min_ratio)
    J = start
    exact = Fraction(0)
    for _ in range(4096):
        theta = f.ratio_bound(J)
        if theta < rho:
            return exact + Fraction(f(J), weights(q + J)) / (1 - theta / rho)
        exact += Fraction(f(J), weights(q + J))
        J += 1
    raise DivergentCovolume("growth too fast for these weights")


def _parts(spec: StarTreeSpec, weights: Weights):
    """Placed components as (block, level) including the spine at level 0."""
    yield spec.spine, 0
    for g in spec.gluings:
        yield g.block, g.level


def covolume_exact(spec: StarTreeSpec, indexing, selector="v0"):
    """Exact rational covolume when a closed form exists, else an interval.

    `indexing` is n (canonical), an AdmissibleSequence, or an
    IndexedStarTree.  The interval fallback uses depth 40.
    """
    seq = _as_seq(indexing)
    w = seq.weights
    factor = selector_factor(selector, spec.m, seq.n)
    total = Fraction(0)
    for blk, q in _parts(spec, w):
        c = blk.contribution(q, w)
        if c is None:
            return covolume_bracket(spec, seq, 40, selector)
        total += c
    rule = spec.digit_rule
    if rule is not None:
        if not (rule.periodic and rule.matches(w)):
            return covolume_bracket(spec, seq, 40, selector)
        total += w.series(rule.digits, skip=rule.skip)
    return total * factor


def covolume_bracket(spec: StarTreeSpec, indexing, depth: int, selector="v0") -> CovolumeInterval:
    """Partial sum over levels <= depth and an independent tail bound."""
    seq = _as_seq(indexing)
    w = seq.weights
    factor = selector_factor(selector, spec.m, seq.n)
    partial = sum((Fraction(spec.level_count(L), w(L)) for L in range(depth + 1)), Fraction(0))
    tail = Fraction(0)
    for blk, q in _parts(spec, w):
        start = max(depth + 1 - q, 0)
        if blk.depth is None:
            if blk == RAY:
                tail += w.tail(q + start - 1) if q + start >= 1 else w.kappa0
            else:
                tail += _tf_tail(blk.f, q, start, w)
        else:
            tail += sum((Fraction(blk.count(i), w(q + i)) for i in range(start, blk.depth)),
                        Fraction(0))
    rule = spec.digit_rule
    if rule is not None:
        if not rule.matches(w):
            raise StarTreeError("digit blocks do not match the indexing weights")
        for j in range(max(1, depth - rule.bound + 2), depth + 1):
            blk = rule.block(j)
            if blk is not None:
                tail += sum((Fraction(blk.count(i), w(j + i))
                             for i in range(depth + 1 - j, blk.depth)), Fraction(0))
        tail += rule.bound * w.tail(depth, skip=rule.skip)
    provenance = "partial sum over levels <= depth + tail bound"
    return CovolumeInterval(partial * factor, (partial + tail) * factor, depth, provenance)


def glue_increment(block: Block, level: int, indexing) -> Fraction:
    """Covolume added by gluing `block` at `level` (V0 selector)."""
    c = block.contribution(level, _as_seq(indexing).weights)
    if c is None:
        raise StarTreeError("block has no closed-form contribution")
    return c


def ball_counts(spec: StarTreeSpec, k_max: int) -> list[int]:
    """Vertices within half-edge radius k of v0, from level counts alone."""
    c = spec.level_counts(k_max)
    out = []
    centers = 0
    v1 = 0
    for k in range(k_max + 1):
        centers += c[k]
        out.append(centers + v1)
        # V1 neighbours of level-k centers, minus their parent joints
        v1 += spec.m * c[k] - (c[k] if k >= 1 else 0)
    return out
