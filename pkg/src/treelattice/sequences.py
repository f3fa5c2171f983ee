"""Eventually periodic integer sequences and level weights.

Sequences here are indexed from 1, matching how digit sequences and
admissible sequences are consumed by the constructions.  A `Weights`
object turns a sequence of ratios into the level weights h(0)=1,
h(j) = ratio(1) * ... * ratio(j), and sums series against them in closed
form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterator, Sequence


@dataclass(frozen=True)
class EventuallyPeriodic:
    """prefix followed by `period` repeated forever, indexed from 1."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.period:
            raise ValueError("period must be non-empty")
        object.__setattr__(self, "prefix", tuple(int(x) for x in self.prefix))
        object.__setattr__(self, "period", tuple(int(x) for x in self.period))

    @classmethod
    def constant(cls, value: int) -> "EventuallyPeriodic":
        return cls((), (value,))

    @classmethod
    def finite(cls, values: Sequence[int]) -> "EventuallyPeriodic":
        return cls(tuple(values), (0,))

    def __getitem__(self, j: int) -> int:
        if j < 1:
            raise IndexError("sequences are indexed from 1")
        if j <= len(self.prefix):
            return self.prefix[j - 1]
        return self.period[(j - 1 - len(self.prefix)) % len(self.period)]

    def take(self, count: int) -> list[int]:
        return [self[j] for j in range(1, count + 1)]

    def __iter__(self) -> Iterator[int]:
        j = 1
        while True:
            yield self[j]
            j += 1

    @property
    def is_finite(self) -> bool:
        return all(x == 0 for x in self.period)

    @property
    def support_end(self) -> int:
        """Last index holding a nonzero value (finite sequences only)."""
        if not self.is_finite:
            raise ValueError("sequence has infinite support")
        last = 0
        for j, x in enumerate(self.prefix, start=1):
            if x:
                last = j
        return last

    def normalized(self) -> "EventuallyPeriodic":
        """Shortest period and shortest prefix describing the same sequence."""
        period = self.period
        for d in range(1, len(period) + 1):
            if len(period) % d == 0 and period == period[:d] * (len(period) // d):
                period = period[:d]
                break
        prefix = list(self.prefix)
        while prefix and prefix[-1] == period[-1]:
            prefix.pop()
            period = period[-1:] + period[:-1]
        return EventuallyPeriodic(tuple(prefix), period)

    def values(self) -> set[int]:
        return set(self.prefix) | set(self.period)

    def notation(self) -> str:
        """Compact text form, e.g. ``2,1,(0)`` or ``(3,6)``."""
        head = ",".join(str(x) for x in self.prefix)
        tail = "(" + ",".join(str(x) for x in self.period) + ")"
        return f"{head},{tail}" if head else tail

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodic":
        text = text.replace(" ", "")
        if "(" in text:
            head, _, rest = text.partition("(")
            period = tuple(int(x) for x in rest.rstrip(")").split(",") if x)
        else:
            head, period = text, ()
        prefix = tuple(int(x) for x in head.strip(",").split(",") if x)
        if not period:
            # a bare list repeats its last entry
            if not prefix:
                raise ValueError(f"empty sequence: {text!r}")
            prefix, period = prefix[:-1], prefix[-1:]
        return cls(prefix, period)

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "period": list(self.period)}

    @classmethod
    def from_json(cls, data) -> "EventuallyPeriodic":
        if isinstance(data, str):
            return cls.parse(data)
        return cls(tuple(data.get("prefix", ())), tuple(data["period"]))


class Weights:
    """Level weights h(j) = ratio(1) * ... * ratio(j) with h(0) = 1."""

    def __init__(self, ratios: EventuallyPeriodic):
        if min(ratios.values()) < 2:
            raise ValueError("weight ratios must be at least 2")
        self.ratios = ratios
        self._h = [1]

    @classmethod
    def canonical(cls, n: int) -> "Weights":
        if n < 3:
            raise ValueError("n must be at least 3")
        return cls(EventuallyPeriodic.constant(n - 1))

    @classmethod
    def from_sequence(cls, s: EventuallyPeriodic) -> "Weights":
        return cls(EventuallyPeriodic(tuple(x - 1 for x in s.prefix),
                                      tuple(x - 1 for x in s.period)))

    def __repr__(self) -> str:
        return f"Weights({self.ratios.notation()})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Weights) and self.ratios == other.ratios

    def __hash__(self) -> int:
        return hash(self.ratios)

    def ratio(self, j: int) -> int:
        """h(j) / h(j-1)."""
        return self.ratios[j]

    def __call__(self, j: int) -> int:
        h = self._h
        while len(h) <= j:
            h.append(h[-1] * self.ratios[len(h)])
        return h[j]

    @property
    def preperiod(self) -> int:
        return len(self.ratios.prefix)

    @property
    def min_ratio(self) -> int:
        return min(self.ratios.values())

    @property
    def max_ratio(self) -> int:
        return max(self.ratios.values())

    @cached_property
    def growth_rate(self) -> tuple[int, int]:
        """(Lambda, P): h grows like Lambda**(k/P) on the periodic part."""
        period = self.ratios.period
        out = 1
        for r in period:
            out *= r
        return out, len(period)

    def series(self, x: EventuallyPeriodic, start: int = 1, skip: int | None = None) -> Fraction:
        """Exact sum of x_j / h(j) over j >= start (j != skip)."""
        a = max(len(x.prefix), self.preperiod, start - 1, skip or 0)
        total = Fraction(0)
        for j in range(start, a + 1):
            if j != skip:
                total += Fraction(x[j], self(j))
        L = lcm(len(x.period), len(self.ratios.period))
        block = Fraction(0)
        for r in range(1, L + 1):
            block += Fraction(x[a + r], self(a + r))
        growth = Fraction(self(a + L), self(a))
        return total + block * growth / (growth - 1)

    def tail(self, d: int, skip: int | None = None) -> Fraction:
        """Exact sum of 1 / h(j) over j > d (j != skip)."""
        return self.series(EventuallyPeriodic.constant(1), start=d + 1, skip=skip)

    @cached_property
    def kappa0(self) -> Fraction:
        """Sum of 1 / h(j) over all j >= 0."""
        return 1 + self.tail(0)

    def to_json(self) -> dict:
        return {"ratios": self.ratios.to_json()}
