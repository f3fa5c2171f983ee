"""Growth functions and the coarse comparison f ≼ g.

f ≼ g means f(k) <= scale * g(k + shift) for some natural numbers scale and
shift; f ≃ g when both directions hold.  Comparisons are decided exactly
inside the symbolic families below and three-valued on finite tables.

All tabulations use the half-edge metric: radius k covers every vertex
within 2k edges, so in a star tree the radius-k ball reaches exactly the
centers of level <= k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import ceil
from typing import NamedTuple, Sequence

import mpmath

from .sequences import EventuallyPeriodic, Weights


class TruncationTooShallow(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def p_order(N: int, p: int) -> int:
    """Largest power of the prime p dividing N."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if N < 1:
        raise ValueError("N must be positive")
    out = 1
    while N % p == 0:
        N //= p
        out *= p
    return out


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


class GrowthClass(NamedTuple):
    """Coarse type: rank 0 polynomial, 1 stretched exponential, 2 exponential.

    `param` is the degree, the exponent beta, or the base as (Lambda, P)
    meaning Lambda ** (1/P).
    """

    rank: int
    param: object


def _cmp_class(a: GrowthClass, b: GrowthClass) -> int:
    if a.rank != b.rank:
        return -1 if a.rank < b.rank else 1
    if a.rank == 2:
        (la, pa), (lb, pb) = a.param, b.param
        x, y = la ** pb, lb ** pa
    else:
        x, y = a.param, b.param
    return (x > y) - (x < y)


class GrowthFunction:
    """A function N -> N>=1 with exact evaluation."""

    symbolic = True

    def __call__(self, k: int) -> int:
        raise NotImplementedError

    def table(self, k_max: int) -> list[int]:
        return [self(k) for k in range(k_max + 1)]

    def growth_class(self) -> GrowthClass:
        raise NotImplementedError

    def ratio_bound(self, j: int) -> Fraction:
        """Rational upper bound for f(i+1)/f(i) over all i >= j."""
        raise NotImplementedError

    def doubling_from(self) -> int:
        """Index beyond which f(i+1) <= 2 f(i) is guaranteed."""
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Polynomial(GrowthFunction):
    """sum c_i k^i with nonnegative integer coefficients."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or any(c < 0 for c in self.coeffs) or sum(self.coeffs) == 0:
            raise ValueError("need nonnegative coefficients, not all zero")

    @property
    def degree(self) -> int:
        return max(i for i, c in enumerate(self.coeffs) if c)

    def __call__(self, k: int) -> int:
        return max(1, sum(c * k ** i for i, c in enumerate(self.coeffs)))

    def growth_class(self) -> GrowthClass:
        return GrowthClass(0, self.degree)

    def ratio_bound(self, j: int) -> Fraction:
        d = self.degree
        if d == 0:
            return Fraction(1)
        j = max(j, 1)
        # each term's ratio ((i+1)/i)^t is decreasing in i; so is the sum's max
        return max(Fraction(self(j + 1), self(j)), Fraction(j + 1, j) ** d)

    def doubling_from(self) -> int:
        d = self.degree
        j = 1
        while Fraction(j + 1, j) ** d > 2:
            j += 1
        return j

    def describe(self) -> dict:
        return {"family": "polynomial", "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Exponential(GrowthFunction):
    """k -> ceil(base ** k) for a rational base >= 1."""

    base: Fraction

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))
        if self.base < 1:
            raise ValueError("base must be at least 1")

    def __call__(self, k: int) -> int:
        return _ceil_frac(self.base ** k)

    def growth_class(self) -> GrowthClass:
        if self.base == 1:
            return GrowthClass(0, 0)
        return GrowthClass(2, (self.base, 1))

    def ratio_bound(self, j: int) -> Fraction:
        # ceil(a^(i+1)) / ceil(a^i) <= (a^(i+1) + 1) / a^i
        return self.base + 1 / self.base ** j

    def doubling_from(self) -> int:
        return 0 if self.base <= 2 else -1

    def describe(self) -> dict:
        return {"family": "exponential", "base": str(self.base)}


@dataclass(frozen=True)
class StretchedExponential(GrowthFunction):
    """k -> ceil(exp(k ** beta)), 0 < beta < 1, evaluated with certified rounding."""

    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", Fraction(self.beta))
        if not 0 < self.beta < 1:
            raise ValueError("beta must lie in (0, 1)")

    def __call__(self, k: int) -> int:
        return _stretched_ceil(k, self.beta.numerator, self.beta.denominator)

    def growth_class(self) -> GrowthClass:
        return GrowthClass(1, self.beta)

    def ratio_bound(self, j: int) -> Fraction:
        # (i+1)^b - i^b <= b i^(b-1) for i >= 1; ceil adds at most a factor (1 + e^-i^b)
        j = max(j, 1)
        with mpmath.workprec(80):
            b = mpmath.mpf(self.beta.numerator) / self.beta.denominator
            x = mpmath.exp(b * mpmath.power(j, b - 1)) * (1 + mpmath.exp(-mpmath.power(j, b)))
            return Fraction(mpmath.nstr(x * (1 + mpmath.mpf(2) ** -60), 30)) + Fraction(1, 10**20)

    def doubling_from(self) -> int:
        import math
        b = float(self.beta)
        # b * j^(b-1) <= ln 2 - margin
        j = max(1, ceil((b / (math.log(2) - 1e-9)) ** (1 / (1 - b))))
        return j

    def describe(self) -> dict:
        return {"family": "stretched", "beta": str(self.beta)}


@lru_cache(maxsize=None)
def _stretched_ceil(k: int, p: int, q: int) -> int:
    if k == 0:
        return 1
    prec = 64
    while True:
        with mpmath.workprec(prec):
            x = mpmath.exp(mpmath.power(k, mpmath.mpf(p) / q))
            err = x * mpmath.mpf(2) ** (8 - prec)
            lo, hi = mpmath.ceil(x - err), mpmath.ceil(x + err)
            if lo == hi:
                return int(lo)
        prec *= 2
        if prec > 1 << 14:
            raise ArithmeticError("cannot certify ceil(exp(k^beta))")


@dataclass(frozen=True)
class ProductForm(GrowthFunction):
    """h(k) = (s_1 - 1) ... (s_k - 1) for an eventually periodic sequence s."""

    s: EventuallyPeriodic

    @cached_property
    def weights(self) -> Weights:
        return Weights.from_sequence(self.s)

    def __call__(self, k: int) -> int:
        return self.weights(k)

    def growth_class(self) -> GrowthClass:
        lam, P = self.weights.growth_rate
        if lam == 1:
            return GrowthClass(0, 0)
        return GrowthClass(2, (Fraction(lam), P))

    def ratio_bound(self, j: int) -> Fraction:
        return Fraction(self.weights.max_ratio)

    def doubling_from(self) -> int:
        return 0 if self.weights.max_ratio <= 2 else -1

    def describe(self) -> dict:
        return {"family": "product", "s": self.s.notation()}


@dataclass(frozen=True)
class Envelope(GrowthFunction):
    """Smallest-change acceptable version of an inner function.

    g(0) = 1 and g(k+1) = min(2 g(k), inner(k+1)).  Once the inner function
    grows by at most a factor 2 per step, g catches up with it and stays
    equal, so g ≃ inner whenever inner's class is below exponential base 2.
    """

    inner: GrowthFunction

    def __call__(self, k: int) -> int:
        return self._table(k)[k]

    def _table(self, k: int) -> list[int]:
        cache = self.__dict__.setdefault("_cache", [1])
        while len(cache) <= k:
            cache.append(min(2 * cache[-1], max(1, self.inner(len(cache)))))
        return cache

    def growth_class(self) -> GrowthClass:
        c = self.inner.growth_class()
        if c.rank == 2 and _cmp_class(c, GrowthClass(2, (Fraction(2), 1))) > 0:
            return GrowthClass(2, (Fraction(2), 1))
        return c

    def catch_up(self, limit: int = 10_000) -> int | None:
        """First index from which g equals the inner function for good."""
        start = self.inner.doubling_from()
        if start < 0:
            return None
        for j in range(start, limit):
            if self(j) == self.inner(j):
                return j
        return None

    def ratio_bound(self, j: int) -> Fraction:
        J = self.catch_up()
        if J is not None and j >= J:
            return min(Fraction(2), self.inner.ratio_bound(j))
        return Fraction(2)

    def doubling_from(self) -> int:
        return 0

    def describe(self) -> dict:
        return {"family": "envelope", "inner": self.inner.describe()}


@dataclass(frozen=True)
class Tabulated(GrowthFunction):
    """Finite prefix g(0..d), optionally continued by a symbolic tail rule."""

    values: tuple[int, ...]
    tail: GrowthFunction | None = field(default=None, compare=False)

    symbolic = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @property
    def k_max(self) -> int:
        return len(self.values) - 1

    def __call__(self, k: int) -> int:
        if k < len(self.values):
            return self.values[k]
        if self.tail is None:
            raise IndexError(f"table ends at {self.k_max}")
        return self.tail(k)

    def growth_class(self) -> GrowthClass:
        if self.tail is None:
            raise ValueError("table without tail rule has no growth class")
        return self.tail.growth_class()

    def ratio_bound(self, j: int) -> Fraction:
        if self.tail is None:
            raise ValueError("table without tail rule")
        r = self.tail.ratio_bound(max(j, len(self.values)))
        for i in range(j, len(self.values)):
            r = max(r, Fraction(self(i + 1), self(i)))
        return r

    def doubling_from(self) -> int:
        if self.tail is None:
            raise ValueError("table without tail rule")
        return max(self.tail.doubling_from(), len(self.values))

    def describe(self) -> dict:
        d = {"family": "table", "values": list(self.values)}
        if self.tail is not None:
            d["tail"] = self.tail.describe()
        return d


def parse_growth(text: str) -> GrowthFunction:
    """Parse ``const``, ``exp:3/2``, ``poly:1,0,1``, ``stretched:1/2``,
    ``product:(3,6)`` or ``envelope:<inner>``."""
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind in ("const", "constant", "one"):
        return Polynomial((1,))
    if kind in ("exp", "exponential"):
        return Exponential(Fraction(arg))
    if kind in ("poly", "polynomial"):
        return Polynomial(tuple(int(c) for c in arg.split(",")))
    if kind in ("stretched", "stretched-exp"):
        return StretchedExponential(Fraction(arg))
    if kind == "product":
        return ProductForm(EventuallyPeriodic.parse(arg))
    if kind == "envelope":
        return Envelope(parse_growth(arg))
    raise ValueError(f"unknown growth function {text!r}")


# acceptability -----------------------------------------------------------

class Acceptability(NamedTuple):
    ok: bool | None
    reasons: list[str]

    def __bool__(self) -> bool:
        return bool(self.ok)


def _summable_against(f: GrowthFunction, rate: Fraction) -> bool | None:
    """Is sum f(j) / rate^j finite?  None when undecidable from the data."""
    try:
        c = f.growth_class()
    except ValueError:
        return None
    if c.rank < 2:
        return True
    lam, P = c.param
    return Fraction(lam) < Fraction(rate) ** P


def is_acceptable(f: GrowthFunction, prefix: int = 64) -> Acceptability:
    """f(0) = 1, 1 <= f(j+1) <= 2 f(j) for all j, and sum f(j)/2^j < inf."""
    reasons = []
    ok: bool | None = True
    if f(0) != 1:
        reasons.append(f"f(0) = {f(0)} != 1")
        ok = False
    try:
        horizon = f.doubling_from()
    except ValueError:
        horizon = None
    if horizon is not None and horizon < 0:
        reasons.append("f(j+1) <= 2 f(j) fails eventually")
        ok = False
    check_to = prefix if horizon is None or horizon < 0 else max(prefix, horizon) + 1
    if isinstance(f, Tabulated) and f.tail is None:
        check_to = f.k_max
    for j in range(check_to):
        a, b = f(j), f(j + 1)
        if not 1 <= b <= 2 * a:
            reasons.append(f"growth step fails at j={j}: f(j)={a}, f(j+1)={b}")
            ok = False
            break
    summable = _summable_against(f, Fraction(2))
    if summable is None:
        reasons.append("convergence of sum f(j)/2^j undetermined (no tail rule)")
        if ok:
            ok = None
    elif not summable:
        reasons.append("sum f(j)/2^j diverges")
        ok = False
    return Acceptability(ok, reasons)


# comparison --------------------------------------------------------------

@dataclass
class Verdict:
    """Outcome of f ≼ g.

    `holds` is True, False, or None (undetermined).  `scope` says whether
    the answer is a symbolic fact or only valid on a checked prefix.
    """

    holds: bool | None
    scope: str
    scale: int | None = None
    shift: int | None = None
    checked_range: int | None = None
    certificate: str = ""

    def __bool__(self) -> bool:
        return bool(self.holds)

    def to_json(self) -> dict:
        return {"holds": self.holds, "scope": self.scope, "scale": self.scale,
                "shift": self.shift, "checked_range": self.checked_range,
                "certificate": self.certificate}


def find_witness(f, g, k_max: int, max_shift: int = 8, max_scale: int | None = None):
    """Least (shift, scale) with f(k) <= scale * g(k + shift) for k + shift <= k_max."""
    fv = [f(k) for k in range(k_max + 1)]
    gv = [g(k) for k in range(k_max + 1)]
    best = None
    for shift in range(0, max_shift + 1):
        ks = range(0, k_max - shift + 1)
        if not ks:
            break
        scale = max(_ceil_frac(Fraction(fv[k], gv[k + shift])) for k in ks)
        if max_scale is None or scale <= max_scale:
            if best is None or scale < best[1]:
                best = (shift, scale)
            if scale == 1:
                break
    return best


def preceq(f: GrowthFunction, g: GrowthFunction, k_max: int = 40, max_shift: int = 8,
           max_scale: int = 10**6) -> Verdict:
    """Decide f ≼ g: symbolically for two symbolic families, else on a prefix."""
    if f.symbolic and g.symbolic:
        c = _cmp_class(f.growth_class(), g.growth_class())
        cf, cg = f.growth_class(), g.growth_class()
        if c > 0:
            return Verdict(False, "symbolic", certificate=f"class {cf} dominates {cg}")
        w = find_witness(f, g, k_max, max_shift)
        return Verdict(True, "symbolic", w[1], w[0], k_max,
                       certificate=f"class {cf} <= {cg}; witness verified on k + shift <= {k_max}")
    k_max = min([k_max, *(x.k_max for x in (f, g) if isinstance(x, Tabulated) and x.tail is None)])
    w = find_witness(f, g, k_max, max_shift, max_scale)
    if w is not None:
        return Verdict(True, "prefix", w[1], w[0], k_max)
    return Verdict(None, "prefix", checked_range=k_max,
                   certificate=f"no witness with shift <= {max_shift}, scale <= {max_scale}")


@dataclass
class Equivalence:
    forward: Verdict
    backward: Verdict

    @property
    def holds(self) -> bool | None:
        a, b = self.forward.holds, self.backward.holds
        if a is False or b is False:
            return False
        if a and b:
            return True
        return None

    def __bool__(self) -> bool:
        return bool(self.holds)

    def to_json(self) -> dict:
        return {"holds": self.holds, "forward": self.forward.to_json(),
                "backward": self.backward.to_json()}


def equivalent(f: GrowthFunction, g: GrowthFunction, **kw) -> Equivalence:
    return Equivalence(preceq(f, g, **kw), preceq(g, f, **kw))


# tabulations ---------------------------------------------------------------

def ball_growth(graph, basepoint: str, k_max: int, reliable_depth: int | None = None) -> Tabulated:
    """Number of vertices within 2k edges of `basepoint`, k = 0..k_max."""
    if reliable_depth is not None and k_max > reliable_depth:
        raise TruncationTooShallow(f"k_max={k_max} exceeds truncation depth {reliable_depth}")
    dist = graph.distances(basepoint, 2 * k_max)
    counts = [0] * (k_max + 1)
    for d in dist.values():
        counts[(d + 1) // 2] += 1
    out, total = [], 0
    for c in counts:
        total += c
        out.append(total)
    return Tabulated(tuple(out))


def _vertex_orders(source):
    from .grouping import FiniteGrouping
    from .indexed_graph import Ordering

    if isinstance(source, FiniteGrouping):
        return source.graph, {v: g.order for v, g in source.vertex_groups.items()}
    if isinstance(source, Ordering):
        if not source.is_integral():
            raise ValueError("ordering must be integral")
        return source.graph, {v: source[v].numerator for v in source.graph.vertices}
    raise TypeError("expected an Ordering or a FiniteGrouping")


def stabilizer_growth(source, basepoint: str, k_max: int, v0_only: bool = False,
                      reliable_depth: int | None = None, p: int | None = None) -> Tabulated:
    """Largest vertex-group order (or p-order) within radius k, k = 0..k_max."""
    if reliable_depth is not None and k_max > reliable_depth:
        raise TruncationTooShallow(f"k_max={k_max} exceeds truncation depth {reliable_depth}")
    graph, orders = _vertex_orders(source)
    dist = graph.distances(basepoint, 2 * k_max)
    best = [1] * (k_max + 1)
    for v, d in dist.items():
        if v0_only and graph.vertices[v] == 1:
            continue
        x = orders[v] if p is None else p_order(orders[v], p)
        r = (d + 1) // 2
        best[r] = max(best[r], x)
    for k in range(1, k_max + 1):
        best[k] = max(best[k], best[k - 1])
    return Tabulated(tuple(best))


def p_stabilizer_growth(source, basepoint: str, p: int, k_max: int, **kw) -> Tabulated:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return stabilizer_growth(source, basepoint, k_max, p=p, **kw)


def growth_report(f: GrowthFunction, g: GrowthFunction, **kw) -> dict:
    eq = equivalent(f, g, **kw)
    return {"f": f.describe(), "g": g.describe(), "equivalent": eq.to_json()}


def exponential_envelope(lam_num: int, lam_den: int = 1) -> Exponential:
    return Exponential(Fraction(lam_num, lam_den))


def cumulative(f: GrowthFunction, k_max: int) -> list[int]:
    out, total = [], 0
    for k in range(k_max + 1):
        total += f(k)
        out.append(total)
    return out


def product_family(s: Sequence[int] | EventuallyPeriodic) -> ProductForm:
    if not isinstance(s, EventuallyPeriodic):
        s = EventuallyPeriodic((), tuple(s))
    return ProductForm(s)
