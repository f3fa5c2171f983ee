"""Realization algorithms.

* digit sequences: greedy expansions of a rational against level weights
* realize_covolume / realize_covolume_growth / realize_full: star-tree
  specs whose covolume is a prescribed rational, optionally with a
  prescribed quotient growth type and stabilizer growth type
* the semidirect tower G_j x| H and shrink_covolume, which divide the
  covolume of an infinite spec by |H|
* a seeded sampler of bounded digit sequences with a fixed sum
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Callable

import numpy as np

from . import kernels
from .growth import (GrowthFunction, Polynomial, ball_growth, equivalent, is_acceptable,
                     stabilizer_growth)
from .grouping import ENUMERATION_BOUND, FiniteGrouping, Group, Hom, units_mod
from .indexed_graph import compute_ordering
from .sequences import EventuallyPeriodic, Weights
from .star_tree import (RAY, AdmissibleSequence, CovolumeInterval, DigitRule, StarTreeSpec,
                        TfBlock, _tf_tail, build_star_ray, covolume_bracket, covolume_exact)


class RealizationError(ValueError):
    """A mathematical precondition of a realization step fails."""


class DigitRepresentationError(RealizationError):
    pass


class NotFaithful(RealizationError):
    pass


def _weights(h) -> Weights:
    if isinstance(h, Weights):
        return h
    if isinstance(h, AdmissibleSequence):
        return h.weights
    if isinstance(h, int):
        return Weights.canonical(h)
    return Weights(h)


def kappa0(h) -> Fraction:
    """Sum of 1/h(j) over j >= 0.  An int h means the canonical weights of n = h."""
    return _weights(h).kappa0


# digit sequences ---------------------------------------------------------------

def required_bound(rho: Fraction, weights: Weights, skip: int | None = None) -> int:
    """Smallest digit bound D for which the capped greedy always succeeds.

    Needs rho <= D * S_1 and D >= 1 / (h(j) S_{j+1}) at every level, where
    S_j = sum over i >= j, i != skip of 1/h(i).
    """
    D = ceil(Fraction(rho) / weights.tail(0, skip=skip))
    top = max(weights.preperiod, skip or 0) + 2 * len(weights.ratios.period) + 2
    for j in range(1, top + 1):
        if j == skip:
            continue
        D = max(D, ceil(1 / (weights(j) * weights.tail(j, skip=skip))))
    return max(D, 1)


def default_bound(rho: Fraction, weights: Weights, skip: int | None = None,
                  n: int | None = None) -> int:
    base = 2 * (n - 1) if n is not None else 2 * weights.max_ratio
    return max(base, required_bound(rho, weights, skip))


@dataclass(frozen=True)
class DigitSequence:
    """Digits e_j with sum over j of e_j / h(j) equal to `target`."""

    digits: EventuallyPeriodic
    weights: Weights
    target: Fraction
    bound: int
    skip: int | None = None

    def __getitem__(self, j: int) -> int:
        return self.digits[j]

    def total(self) -> Fraction:
        return self.weights.series(self.digits, skip=self.skip)

    def partial(self, d: int) -> Fraction:
        return sum((Fraction(self.digits[j], self.weights(j)) for j in range(1, d + 1)
                    if j != self.skip), Fraction(0))

    def notation(self) -> str:
        return self.digits.notation()

    def to_json(self) -> dict:
        return {"digits": self.notation(), "bound": self.bound, "skip": self.skip,
                "target": _q(self.target), "weights": self.weights.ratios.notation()}


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _greedy(rho: Fraction, weights: Weights, bound: int, skip: int | None,
            head: tuple[int, ...], horizon: int) -> EventuallyPeriodic:
    """Greedy digits for levels > len(head), appended to `head`."""
    start = len(head) + 1
    y = Fraction(rho) * weights(start - 1)  # before multiplying by ratio(start)
    digits = list(head)
    a = max(weights.preperiod, skip or 0, start - 1)
    P = len(weights.ratios.period)
    seen: dict[tuple[Fraction, int], int] = {}
    cap: dict[int, Fraction] = {}  # phase -> bound * h(j-1) * tail(j-1)
    j = start
    while j <= horizon:
        if j > a + 1:
            phase = (j - a - 1) % P
            if phase not in cap:
                cap[phase] = bound * weights(j - 1) * weights.tail(j - 1, skip=skip)
            if y > cap[phase]:
                raise DigitRepresentationError(
                    f"digit bound {bound} cannot represent {_q(rho)}: remainder outgrows the bound")
        y *= weights.ratio(j)
        if j > a:
            if y == 0:
                return EventuallyPeriodic(tuple(digits), (0,)).normalized()
            key = (y, (j - a - 1) % P)
            if key in seen:
                j0 = seen[key]
                return EventuallyPeriodic(tuple(digits[: j0 - 1]),
                                          tuple(digits[j0 - 1:])).normalized()
            seen[key] = j
        e = 0 if j == skip else min(bound, floor(y))
        digits.append(e)
        y -= e
        j += 1
    raise DigitRepresentationError(f"greedy expansion did not cycle within {horizon} levels")


def digit_sequence(rho, h, digit_bound: int | None = None, skip: int | None = None,
                   horizon: int = 100_000, n: int | None = None) -> DigitSequence:
    """Greedy bounded expansion of rho against the weights h.

    The result is eventually periodic and its closed-form sum is checked to
    equal rho exactly.  The default bound is max(2(n-1), required_bound).
    """
    rho = Fraction(rho)
    if rho <= 0:
        raise RealizationError("rho must be positive")
    w = _weights(h)
    if n is None and isinstance(h, int):
        n = h
    D = digit_bound if digit_bound is not None else default_bound(rho, w, skip, n)
    digits = _greedy(rho, w, D, skip, (), horizon)
    seq = DigitSequence(digits, w, rho, D, skip)
    if seq.total() != rho:
        raise DigitRepresentationError(
            f"digit bound {D} cannot represent {_q(rho)} (greedy sum is {_q(seq.total())})")
    return seq


class TfMass:
    """Brackets on nu = sum over i >= 0 of f(i) / h(q + i)."""

    def __init__(self, f: GrowthFunction, weights: Weights, q: int):
        self.f, self.weights, self.q = f, weights, q
        self._partial = [Fraction(0)]

    def partial(self, J: int) -> Fraction:
        p = self._partial
        while len(p) <= J:
            i = len(p) - 1
            p.append(p[-1] + Fraction(self.f(i), self.weights(self.q + i)))
        return p[J]

    def bracket(self, J: int) -> tuple[Fraction, Fraction]:
        lo = self.partial(J)
        return lo, lo + _tf_tail(self.f, self.q, J, self.weights)

    def exact(self) -> Fraction | None:
        return TfBlock(self.f).contribution(self.q, self.weights)


class LazyDigits:
    """Greedy digits of A - nu computed on demand from brackets on nu.

    Each digit is fixed once the bracket on nu is narrow enough that the
    capped floor no longer depends on where nu lies inside it.
    """

    def __init__(self, A: Fraction, nu: TfMass, weights: Weights, bound: int,
                 skip: int | None, max_refine: int = 4096):
        self.A, self.nu, self.weights, self.bound, self.skip = Fraction(A), nu, weights, bound, skip
        self.max_refine = max_refine
        self._digits: list[int] = []
        self._used = Fraction(0)  # sum of e_i / h(i) so far

    def __getitem__(self, j: int) -> int:
        if j < 1:
            raise IndexError("digits are indexed from 1")
        while len(self._digits) < j:
            self._step()
        return self._digits[j - 1]

    def _step(self) -> None:
        j = len(self._digits) + 1
        if j == self.skip:
            self._digits.append(0)
            return
        hj = self.weights(j)
        extra = 8
        while True:
            lo_nu, hi_nu = self.nu.bracket(j + extra)
            rest = self.A - self._used
            lo = min(self.bound, floor((rest - hi_nu) * hj))
            hi = min(self.bound, floor((rest - lo_nu) * hj))
            if lo == hi:
                break
            extra *= 2
            if extra > self.max_refine:
                raise DigitRepresentationError(f"digit {j} undetermined after refinement")
        if lo < 0:
            raise DigitRepresentationError("remainder became negative")
        self._digits.append(lo)
        self._used += Fraction(lo, hj)

    def prefix(self, d: int) -> list[int]:
        return [self[j] for j in range(1, d + 1)]

    def notation(self, d: int = 20) -> str:
        return ",".join(map(str, self.prefix(d))) + ",..."

    # the digits are never finite nor declared periodic
    is_finite = False


# covolume realization -------------------------------------------------------------

def _branching_ok(seq: AdmissibleSequence, m: int) -> None:
    top = max(x - 1 for x in seq.s.values())
    if top > m - 1:
        raise RealizationError(
            f"blocks branch by up to {top}, which needs m >= {top + 1} (got m = {m})")


def realize_covolume(kappa, m: int, n: int, digit_bound: int | None = None) -> StarTreeSpec:
    """Star ray plus one B_{e_j} at each level j, with covolume exactly kappa."""
    kappa = Fraction(kappa)
    seq = AdmissibleSequence.canonical(n)
    k0 = seq.weights.kappa0
    if kappa <= k0:
        raise RealizationError(f"kappa must exceed kappa0 = {_q(k0)}; use shrink_covolume")
    _branching_ok(seq, m)
    ds = digit_sequence(kappa - k0, seq.weights, digit_bound, n=n)
    return build_star_ray(m).with_digits(DigitRule(ds.digits, ds.bound, b=n - 1))


def _choose_level(rho: Fraction, mass_at: Callable[[int], TfMass], limit: int = 10_000) -> int:
    """Smallest k >= 1 whose T_f mass is provably below rho."""
    for k in range(1, limit):
        mass = mass_at(k)
        exact = mass.exact()
        hi = exact if exact is not None else mass.bracket(40)[1]
        if hi < rho:
            return k
    raise RealizationError("no level k makes the T_f mass small enough")


def _realize_with_tf(kappa: Fraction, f: GrowthFunction, m: int, seq: AdmissibleSequence,
                     use_seq_blocks: bool, digit_bound: int | None) -> StarTreeSpec:
    w = seq.weights
    rho = kappa - w.kappa0
    k = _choose_level(rho, lambda q: TfMass(f, w, q))
    mass = TfMass(f, w, k)
    exact = mass.exact()
    spec = build_star_ray(m).glue(TfBlock(f), k)
    blocks = {"seq": seq} if use_seq_blocks else {"b": seq.n - 1}
    if exact is not None:
        ds = digit_sequence(rho - exact, w, digit_bound, skip=k, n=seq.n)
        rule = DigitRule(ds.digits, ds.bound, skip=k, **blocks)
    else:
        lo = mass.bracket(40)[0]
        D = digit_bound if digit_bound is not None else default_bound(rho - lo, w, k, seq.n)
        rule = DigitRule(LazyDigits(rho, mass, w, D, k), D, skip=k, **blocks)
    return spec.with_digits(rule)


def realize_covolume_growth(kappa, f: GrowthFunction, m: int, n: int,
                            digit_bound: int | None = None) -> StarTreeSpec:
    """Covolume kappa and quotient growth type f, for kappa > (n-1)/(n-2)."""
    kappa = Fraction(kappa)
    verdict = is_acceptable(f)
    if not verdict.ok:
        raise RealizationError("f is not acceptable: " + "; ".join(verdict.reasons))
    seq = AdmissibleSequence.canonical(n)
    if kappa <= seq.weights.kappa0:
        raise RealizationError(f"kappa must exceed kappa0 = {_q(seq.weights.kappa0)}")
    _branching_ok(seq, m)
    if isinstance(f, Polynomial) and f.degree == 0 and f(0) == 1:
        return realize_covolume(kappa, m, n, digit_bound)
    return _realize_with_tf(kappa, f, m, seq, False, digit_bound)


# semidirect tower ------------------------------------------------------------------

@dataclass(frozen=True)
class TowerLevel:
    """G_j = Z/A x Z/B (B = 1 for j <= k) and iota_j : G_j -> G_{j+1}."""

    j: int
    A: int
    B: int
    a_mul: int  # iota on the first coordinate
    b_mul: int  # iota on the second coordinate


class SemidirectTower:
    """G_j x| H for weights h, with H the units of Z/h(k).

    G_j = Z/h(j) for j <= k and Z/h(k) x Z/(h(j)/h(k)) for j > k; iota_j
    multiplies by h(j+1)/h(j) below k, is g -> (g, 0) at k, and is identity
    times h(j+1)/h(j) above.  H acts on the first factor by multiplication.
    """

    def __init__(self, n: int, k: int, weights: Weights | None = None):
        if n < 3 or k < 1:
            raise RealizationError("need n >= 3 and k >= 1")
        self.n, self.k = n, k
        self.weights = weights if weights is not None else Weights.canonical(n)
        self.modulus = self.weights(k)
        self.units = units_mod(self.modulus)

    @property
    def H_order(self) -> int:
        return len(self.units)

    def level(self, j: int) -> TowerLevel:
        h, k = self.weights, self.k
        r = h.ratio(j + 1)
        if j < k:
            return TowerLevel(j, h(j), 1, r, 0)
        if j == k:
            return TowerLevel(j, h(k), 1, 1, 0)
        return TowerLevel(j, h(k), h(j) // h(k), 1, r)

    def orders(self, j: int) -> tuple[int, ...]:
        if j <= self.k:
            return (self.weights(j),)
        return (self.weights(self.k), self.weights(j) // self.weights(self.k))

    def group(self, j: int, extra: tuple[int, ...] = ()) -> Group:
        return Group(self.orders(j) + extra, self.modulus, acted=1)

    def iota_matrix(self, j: int) -> tuple[tuple[int, ...], ...]:
        L = self.level(j)
        if j < self.k:
            return ((L.a_mul,),)
        if j == self.k:
            return ((1,), (0,))
        return ((1, 0), (0, L.b_mul))

    def verify(self, levels: int | None = None) -> dict:
        """Exhaustive checks of iota, phi and faithfulness on G_0 .. G_{k+levels}."""
        top = self.k + (levels if levels is not None else 2)
        units = np.asarray(self.units, dtype=np.int64)
        report = {"injective": True, "equivariant": True, "automorphisms": True,
                  "orders": True, "exhaustive": True}
        for j in range(top):
            L = self.level(j)
            nxt = self.level(j + 1)
            if L.A * L.B != self.weights(j):
                report["orders"] = False
            if L.A * L.B * len(units) > ENUMERATION_BOUND:
                report["exhaustive"] = False
                continue
            if not kernels.tower_injective(L.A, L.B, nxt.A, max(nxt.B, 1), L.a_mul, L.b_mul):
                report["injective"] = False
            if kernels.tower_equivariance_failures(units, L.A, L.B, nxt.A, nxt.B,
                                                   L.a_mul, L.b_mul):
                report["equivariant"] = False
            if not kernels.tower_action_bijective(units, L.A):
                report["automorphisms"] = False
        wit = self.faithfulness_witnesses()
        report["faithful"] = all(g >= 0 for _, g, _ in wit[1:]) if len(wit) > 1 else True
        report["H_order"] = self.H_order
        report["modulus"] = self.modulus
        return report

    def faithfulness_witnesses(self) -> list[tuple[int, int, int]]:
        """(u, g, u*g) with u*g != g in G_k, one per unit; g = -1 for the identity."""
        units = np.asarray(self.units, dtype=np.int64)
        A = self.weights(self.k)
        gs = kernels.tower_faithful_witnesses(units, A)
        return [(int(u), int(g), int(u * g % A) if g >= 0 else -1) for u, g in zip(units, gs)]

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "unit_modulus": self.modulus,
                "H_order": self.H_order,
                "groups": [list(self.orders(j)) for j in range(self.k + 2)]}


def build_semidirect_tower(n: int, k: int, weights: Weights | None = None) -> SemidirectTower:
    return SemidirectTower(n, k, weights)


@dataclass(eq=False)
class ShrunkGrouping:
    """The grouping G_l(v) x| H over a star-tree spec, materialized on demand."""

    spec: StarTreeSpec
    seq: AdmissibleSequence
    tower: SemidirectTower

    @property
    def H_order(self) -> int:
        return self.tower.H_order

    def covolume(self, selector="v0"):
        base = covolume_exact(self.spec, self.seq, selector)
        if isinstance(base, CovolumeInterval):
            return base.scaled(Fraction(1, self.H_order))
        return base / self.H_order

    def grouping(self, depth: int) -> FiniteGrouping:
        trunc = self.spec.truncate(depth)
        graph = trunc.graph(self.seq)
        T = self.tower
        vg: dict[str, Group] = {}
        eg: dict[str, Group] = {}
        inj: dict[str, Hom] = {}
        level = {name: int(l) for name, l in zip(trunc.names, trunc.level)}
        for v, part in graph.vertices.items():
            if part == 0:
                vg[v] = T.group(level[v])
        for v, part in graph.vertices.items():
            if part == 1:
                if "/l" in v:
                    center = v.split("/l")[0]
                    vg[v] = T.group(level[center], (self.seq.n,))
                else:
                    child = v[:-1]
                    r = self.seq.r(level[child])
                    vg[v] = T.group(level[child], (r,) if r > 1 else ())
        for eid, e in graph.edges.items():
            center = e.origin if graph.vertices[e.origin] == 0 else e.terminus
            eg[eid] = vg[center]
        for eid, e in graph.edges.items():
            src, tgt = eg[eid], vg[e.terminus]
            if graph.vertices[e.terminus] == 0 or "/l" in e.terminus:
                inj[eid] = Hom.include(src, tgt)
                continue
            child = e.terminus[:-1]
            if e.origin == child:
                inj[eid] = Hom.include(src, tgt)
            else:
                # parent center into the joint above `child`
                inj[eid] = Hom.include(src, tgt, T.iota_matrix(level[child] - 1))
        return FiniteGrouping(graph, vg, eg, inj)

    def to_json(self) -> dict:
        cov = self.covolume()
        return {"tower": self.tower.to_json(),
                "covolume": str(cov) if isinstance(cov, CovolumeInterval) else _q(cov),
                "unit_modulus_note": "H is the unit group of Z/h(k)"}


def shrink_covolume(spec: StarTreeSpec, indexing, k: int) -> ShrunkGrouping:
    """Divide the covolume of an infinite spec by |H| for the tower of parameter k."""
    seq = indexing if isinstance(indexing, AdmissibleSequence) else AdmissibleSequence.canonical(int(indexing))
    top = spec.max_level
    if top is not None and top < k:
        raise NotFaithful(f"spec reaches only level {top} < k = {k}; the action would not be faithful")
    return ShrunkGrouping(spec, seq, SemidirectTower(seq.n, k, seq.weights))


# full realization ------------------------------------------------------------------

@dataclass(eq=False)
class Realization:
    kappa: Fraction
    spec: StarTreeSpec
    seq: AdmissibleSequence
    f: GrowthFunction | None = None
    shrunk: ShrunkGrouping | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def tf_level(self) -> int | None:
        return self.spec.digit_rule.skip if self.spec.digit_rule is not None else None

    def covolume(self, depth: int | None = None):
        """Exact when closed forms exist, else a bracket at `depth` (default 40)."""
        target = self.shrunk.covolume() if self.shrunk else covolume_exact(self.spec, self.seq)
        if isinstance(target, CovolumeInterval) and depth is not None:
            br = covolume_bracket(self.spec, self.seq, depth)
            return br.scaled(Fraction(1, self.shrunk.H_order)) if self.shrunk else br
        return target

    def grouping(self, depth: int) -> FiniteGrouping:
        if self.shrunk is not None:
            return self.shrunk.grouping(depth)
        from .grouping import canonical_cyclic_grouping
        g = self.spec.truncate(depth).graph(self.seq)
        return canonical_cyclic_grouping(g, compute_ordering(g, "v0", 1))

    def report(self, growth_depth: int = 12) -> dict:
        rule = self.spec.digit_rule
        cov = self.covolume()
        out = {
            "inputs": {"kappa": _q(self.kappa), "m": self.spec.m, "n": self.seq.n,
                       "s": self.seq.s.notation(),
                       "f": self.f.describe() if self.f is not None else None},
            "k": self.tf_level,
            "digits": rule.to_json() if rule else None,
            "covolume": _q(cov) if isinstance(cov, Fraction) else {
                "interval": str(cov), "provenance": cov.provenance,
                "exact_by_construction": _q(self.kappa)},
            "notes": list(self.notes),
        }
        if self.shrunk is not None:
            out["tower"] = self.shrunk.tower.to_json()
            out["faithfulness"] = [list(w) for w in self.shrunk.tower.faithfulness_witnesses()]
        if self.f is not None:
            from .growth import Tabulated
            from .star_tree import ball_counts
            table = Tabulated(tuple(ball_counts(self.spec, growth_depth)))
            out["quotient_growth"] = equivalent(table, self.f, k_max=growth_depth,
                                                max_shift=max(8, (self.tf_level or 0) + 2)).to_json()
        return out


def realize_full(kappa, f: GrowthFunction, s: AdmissibleSequence, m: int,
                 digit_bound: int | None = None) -> Realization:
    """Covolume kappa, quotient growth f and stabilizer growth h(k) = prod (s_j - 1)."""
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise RealizationError("kappa must be positive")
    verdict = is_acceptable(f)
    if not verdict.ok:
        raise RealizationError("f is not acceptable: " + "; ".join(verdict.reasons))
    _branching_ok(s, m)
    w = s.weights
    k0 = w.kappa0
    notes = []
    if not s.is_canonical:
        notes.append("unit group modulus h(k) is an interpretation for sequence weights")
    if kappa > k0:
        if s.is_canonical:
            spec = realize_covolume_growth(kappa, f, m, s.n, digit_bound)
        else:
            spec = _realize_with_tf(kappa, f, m, s, True, digit_bound)
        return Realization(kappa, spec, s, f, None, notes)
    # shrink: find k with |H| kappa > kappa0, realize |H| kappa, divide by |H|
    for k in range(1, 64):
        H = len(units_mod(w(k)))
        if kappa * H > k0:
            break
    else:
        raise RealizationError("no tower parameter is large enough")
    if s.is_canonical:
        spec = realize_covolume_growth(kappa * H, f, m, s.n, digit_bound)
    else:
        spec = _realize_with_tf(kappa * H, f, m, s, True, digit_bound)
    shrunk = shrink_covolume(spec, s, k)
    notes.append(f"covolume {_q(kappa * H)} divided by |H| = {H} (tower parameter k = {k})")
    return Realization(kappa, spec, s, f, shrunk, notes)


# sampler ---------------------------------------------------------------------------

def sample_digit_sequences(kappa, n: int, count: int, seed: int, prefix_len: int = 8,
                           digit_bound: int | None = None, max_tries: int = 100_000
                           ) -> list[DigitSequence]:
    """`count` pairwise distinct bounded digit sequences summing to kappa - kappa0.

    A random prefix is drawn digit by digit from the range that keeps the
    remainder representable, then completed greedily.  `seed` is the only
    source of randomness.
    """
    kappa = Fraction(kappa)
    w = Weights.canonical(n)
    rho = kappa - w.kappa0
    if rho <= 0:
        raise RealizationError("kappa must exceed kappa0")
    D = digit_bound if digit_bound is not None else default_bound(rho, w, None, n)
    if D < required_bound(rho, w):
        raise DigitRepresentationError("digit bound too small")
    rng = random.Random(seed)
    out: list[DigitSequence] = []
    seen: set[str] = set()
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise RealizationError(f"only {len(out)} distinct sequences after {max_tries} draws")
        R = rho
        head = []
        for j in range(1, rng.randint(1, prefix_len) + 1):
            hj = w(j)
            lo = max(0, ceil((R - D * w.tail(j)) * hj))
            hi = min(D, floor(R * hj))
            e = rng.randint(lo, hi)
            head.append(e)
            R -= Fraction(e, hj)
        digits = _greedy(R, w, D, None, tuple(head), 100_000)
        ds = DigitSequence(digits, w, rho, D)
        key = ds.notation()
        if key in seen:
            continue
        if ds.total() != rho:
            raise DigitRepresentationError("sampled sequence has the wrong sum")
        seen.add(key)
        out.append(ds)
    return out


def stabilizer_table(seq: AdmissibleSequence, m: int, depth: int) -> list[int]:
    """Stabilizer growth at V0 vertices of the indexed star ray, k = 0..depth."""
    g = build_star_ray(m).truncate(depth).graph(seq)
    return list(stabilizer_growth(compute_ordering(g, "v0", 1), "v0", depth, v0_only=True).values)


def quotient_table(spec: StarTreeSpec, depth: int, materialize: bool = False) -> list[int]:
    """Ball counts of a spec, from level counts or from the truncated graph."""
    if materialize:
        g = spec.truncate(depth).graph(AdmissibleSequence.canonical(3))
        return list(ball_growth(g, "v0", depth).values)
    from .star_tree import ball_counts
    return ball_counts(spec, depth)
