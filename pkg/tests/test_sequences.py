from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from treelattice.sequences import EventuallyPeriodic, Weights

digits = st.lists(st.integers(0, 5), max_size=5)
periods = st.lists(st.integers(0, 5), min_size=1, max_size=4)
ratios = st.lists(st.integers(2, 6), min_size=1, max_size=3)


def test_indexing_and_notation():
    s = EventuallyPeriodic.parse("2,1,(0)")
    assert s.take(4) == [2, 1, 0, 0]
    assert s.notation() == "2,1,(0)"
    assert s.is_finite and s.support_end == 2
    assert EventuallyPeriodic.parse("(3,6)").take(5) == [3, 6, 3, 6, 3]
    assert EventuallyPeriodic.parse("3,4").take(4) == [3, 4, 4, 4]
    with pytest.raises(IndexError):
        s[0]
    with pytest.raises(ValueError):
        EventuallyPeriodic((), ())


@given(digits, periods)
def test_parse_roundtrip(prefix, period):
    s = EventuallyPeriodic(tuple(prefix), tuple(period))
    assert EventuallyPeriodic.parse(s.notation()) == s
    assert EventuallyPeriodic.from_json(s.to_json()) == s


@given(digits, periods)
def test_normalized_is_same_sequence_and_idempotent(prefix, period):
    s = EventuallyPeriodic(tuple(prefix), tuple(period))
    t = s.normalized()
    span = len(prefix) + 3 * len(period) + 2
    assert s.take(span) == t.take(span)
    assert t.normalized() == t
    assert len(t.prefix) <= len(s.prefix) and len(t.period) <= len(s.period)


def test_normalized_merges_notations():
    a = EventuallyPeriodic.parse("3,(0)")
    b = EventuallyPeriodic.parse("3,0,0,(0,0)")
    assert a != b and a.normalized() == b.normalized()


def test_canonical_weights():
    w = Weights.canonical(3)
    assert [w(j) for j in range(5)] == [1, 2, 4, 8, 16]
    assert w.kappa0 == 2
    assert w.tail(0) == 1 and w.tail(2) == Fraction(1, 4)
    with pytest.raises(ValueError):
        Weights.canonical(2)
    with pytest.raises(ValueError):
        Weights(EventuallyPeriodic.constant(1))


def test_from_admissible_sequence():
    w = Weights.from_sequence(EventuallyPeriodic.parse("(3,6)"))
    assert [w(j) for j in range(5)] == [1, 2, 10, 20, 100]
    assert w.growth_rate == (10, 2)


@given(ratios, ratios, digits, periods, st.integers(1, 4))
def test_series_matches_long_partial_sum(rp, rper, xp, xper, start):
    w = Weights(EventuallyPeriodic(tuple(rp), tuple(rper)))
    x = EventuallyPeriodic(tuple(xp), tuple(xper))
    exact = w.series(x, start=start)
    J = 80
    partial = sum((Fraction(x[j], w(j)) for j in range(start, J + 1)), Fraction(0))
    # remainder is at most max(x) * sum_{j>J} 1/h(j) <= max(x) * 2 / h(J)
    assert partial <= exact <= partial + Fraction(2 * max(x.values()), w(J))


@given(ratios, st.integers(0, 6), st.integers(1, 8))
def test_tail_skip(rper, d, skip):
    w = Weights(EventuallyPeriodic((), tuple(rper)))
    full = w.tail(d)
    if skip > d:
        assert w.tail(d, skip=skip) == full - Fraction(1, w(skip))
    else:
        assert w.tail(d, skip=skip) == full
