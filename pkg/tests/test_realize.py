from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from oracles import level_partial_sum
from treelattice.growth import Envelope, Exponential, Polynomial, StretchedExponential, Tabulated, equivalent
from treelattice.realize import (DigitRepresentationError, RealizationError, build_semidirect_tower,
                                 digit_sequence, kappa0, realize_covolume,
                                 realize_covolume_growth, realize_full, required_bound,
                                 sample_digit_sequences, shrink_covolume, stabilizer_table)
from treelattice.sequences import Weights
from treelattice.star_tree import (AdmissibleSequence, ball_counts, build_star_ray,
                                   covolume_bracket, covolume_exact)

rhos = st.builds(Fraction, st.integers(1, 200), st.integers(1, 30))


def test_kappa0():
    assert kappa0(3) == 2
    assert kappa0(4) == Fraction(3, 2)
    assert kappa0(AdmissibleSequence.of(6, "(3,6)")) == Fraction(5, 3)


def test_digit_examples():
    assert digit_sequence(Fraction(1, 2), 3).notation() == "1,(0)"
    assert digit_sequence(Fraction(5, 4), 3).notation() == "2,1,(0)"
    assert digit_sequence(Fraction(1, 3), 3).notation() == "(0,1)"
    assert realize_covolume(3, 4, 3).digit_rule.digits.notation() == "2,(0)"


@given(rhos, st.integers(3, 7))
def test_greedy_digits_are_sound(rho, n):
    ds = digit_sequence(rho, n)
    w = Weights.canonical(n)
    assert ds.total() == rho
    assert ds.bound >= 2 * (n - 1) and ds.bound >= required_bound(rho, w)
    assert all(0 <= x <= ds.bound for x in ds.digits.values())
    # every partial sum stays below the target
    assert ds.partial(30) <= rho


@given(rhos, st.sampled_from(["(3,6)", "(6,3)", "3,(6)", "(4)"]))
def test_greedy_digits_against_sequence_weights(rho, s):
    seq = AdmissibleSequence.of(6, s) if s != "(4)" else AdmissibleSequence.of(4, "(4)")
    ds = digit_sequence(rho, seq)
    assert ds.total() == rho


def test_too_small_bound_is_refused():
    with pytest.raises(DigitRepresentationError):
        digit_sequence(Fraction(10), 3, digit_bound=4)


@given(rhos, st.sampled_from([3, 4, 6]))
def test_realize_covolume_exact(rho, n):
    kappa = kappa0(n) + rho
    spec = realize_covolume(kappa, max(4, n), n)
    assert covolume_exact(spec, n) == kappa
    br = covolume_bracket(spec, n, 25)
    assert br.lo == level_partial_sum(spec, Weights.canonical(n), 25) and kappa in br


def test_realize_covolume_rejects_small_targets():
    with pytest.raises(RealizationError):
        realize_covolume(2, 4, 3)
    with pytest.raises(RealizationError):
        realize_covolume(5, 4, 6)  # branching n - 1 = 5 needs m >= 6


@pytest.mark.parametrize("f", [Exponential(Fraction(3, 2)), Polynomial((1, 1)),
                               Envelope(StretchedExponential(Fraction(1, 2)))])
def test_realize_with_growth(f):
    kappa, n = Fraction(7, 2), 4
    spec = realize_covolume_growth(kappa, f, 4, n)
    assert kappa in covolume_bracket(spec, n, 60)
    table = Tabulated(tuple(ball_counts(spec, 14)))
    assert equivalent(table, f, k_max=14, max_shift=10).holds is True


def test_realize_with_growth_rejects_unacceptable():
    with pytest.raises(RealizationError):
        realize_covolume_growth(4, Exponential(2), 4, 4)


@pytest.mark.parametrize("n,k", [(3, 1), (4, 2), (5, 2), (3, 3)])
def test_tower_checks(n, k):
    T = build_semidirect_tower(n, k)
    rep = T.verify()
    assert all(rep[key] for key in ("injective", "equivariant", "automorphisms", "orders",
                                    "exhaustive", "faithful"))
    M = (n - 1) ** k
    assert T.H_order == (1 if M <= 2 else sum(1 for u in range(1, M) if gcd(u, M) == 1))


def test_shrink_example():
    sh = shrink_covolume(build_star_ray(4), 4, 2)
    assert sh.H_order == 6 and sh.covolume() == Fraction(1, 4)
    G = sh.grouping(3)
    assert not G.check(exhaustive=True)


def test_realize_full_above_and_below_threshold():
    s = AdmissibleSequence.of(6, "(3,6)")
    big = realize_full(3, Polynomial((1,)), s, 6)
    assert big.shrunk is None and big.covolume() == 3
    assert not big.grouping(4).check(exhaustive=False)
    small = realize_full(Fraction(1, 5), Polynomial((1,)), s, 6)
    assert small.shrunk is not None and small.covolume() == Fraction(1, 5)
    assert not small.grouping(small.shrunk.tower.k + 1).check(exhaustive=False)
    rep = small.report(growth_depth=6)
    assert rep["covolume"] == "1/5"


def test_stabilizer_table_matches_sequence():
    s = AdmissibleSequence.of(6, "(3,6)")
    assert stabilizer_table(s, 6, 8) == [s.h(k) for k in range(9)]


def test_sampler_is_seeded_and_distinct():
    a = sample_digit_sequences(Fraction(7, 2), 3, 20, seed=7)
    b = sample_digit_sequences(Fraction(7, 2), 3, 20, seed=7)
    assert [x.notation() for x in a] == [x.notation() for x in b]
    assert len({x.digits.normalized() for x in a}) == 20
    assert all(x.total() == Fraction(3, 2) for x in a)
    c = sample_digit_sequences(Fraction(7, 2), 3, 20, seed=8)
    assert [x.notation() for x in a] != [x.notation() for x in c]
