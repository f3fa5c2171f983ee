import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import level_partial_sum
from treelattice.growth import Exponential, Polynomial, ball_growth
from treelattice.indexed_graph import compute_ordering, covers_biregular
from treelattice.sequences import EventuallyPeriodic, Weights
from treelattice.star_tree import (RAY, AdmissibleSequence, BpBlock, BpqBlock, CovolumeInterval,
                                   DigitRule, ExplicitBlock, StarTreeError, StarTreeSpec,
                                   ball_counts, build_Bp, build_Bpq, build_star, build_star_ray,
                                   build_Tf, covolume_bracket, covolume_exact)


def test_admissible_indices():
    s = AdmissibleSequence.of(6, "(3,6)")
    assert (s.near_index(1), s.far_index(1)) == (4, 2)
    assert (s.near_index(2), s.far_index(2)) == (5, 1)
    assert [s.h(k) for k in range(5)] == [1, 2, 10, 20, 100]
    assert AdmissibleSequence.canonical(5).is_canonical
    assert not s.is_canonical


def test_block_counts():
    s = AdmissibleSequence.of(6, "(3,6)")
    assert BpqBlock(2, 1, s).counts(2) == [1, 5]
    assert BpBlock(3, 2).counts(3) == [1, 2, 4]
    assert RAY.counts(3) == [1, 1, 1, 1]


@pytest.mark.parametrize("n", range(3, 11))
def test_star_ray_covolume(n):
    assert covolume_exact(build_star_ray(4), n) == Fraction(n - 1, n - 2)


def test_single_star_and_selectors():
    star = build_star(4)
    assert not star.is_infinite and star.max_level == 0
    assert covolume_exact(star, 3) == 1
    R = build_star_ray(4)
    assert covolume_exact(R, 3, "v1") == Fraction(4, 3) * 2
    assert covolume_exact(R, 3, "all") == Fraction(7, 3) * 2


def test_gluing_examples():
    R = build_star_ray(4)
    assert covolume_exact(R.glue(BpBlock(1, 2), 1), 3) == Fraction(5, 2)
    assert covolume_exact(R.glue(BpBlock(1, 2), 2), 3) == Fraction(9, 4)
    assert covolume_exact(build_Bp(2, 4, 2), 3) == 1 + Fraction(2, 2)


@pytest.mark.parametrize("digits,value", [("1,(0)", Fraction(5, 2)), ("2,1,(0)", Fraction(13, 4)),
                                          ("(0,1)", Fraction(7, 3))])
def test_digit_rules(digits, value):
    spec = build_star_ray(4).with_digits(DigitRule(EventuallyPeriodic.parse(digits), 4, b=2))
    assert covolume_exact(spec, 3) == value
    assert value in covolume_bracket(spec, 3, 20)


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 4)), max_size=3), st.integers(3, 5))
def test_gluing_is_additive(blocks, n):
    R = build_star_ray(5)
    spec, expect = R, covolume_exact(R, n)
    for p, j in blocks:
        try:
            spec = spec.glue(BpBlock(p, n - 1), j)
        except StarTreeError:
            continue
        expect += Fraction(p, (n - 1) ** j)
    assert covolume_exact(spec, n) == expect


@given(st.integers(1, 3), st.integers(1, 4), st.sampled_from(["(3,6)", "(6,3)", "3,(6)"]))
def test_bpq_gluing_adds_p_over_h(p, q, s):
    seq = AdmissibleSequence.of(6, s)
    R = build_star_ray(6)
    glued = R.glue(BpqBlock(p, q, seq), q)
    assert covolume_exact(glued, seq) - covolume_exact(R, seq) == Fraction(p, seq.h(q))
    alone = build_Bpq(p, q, seq, 6)
    assert covolume_exact(alone, seq) == sum(Fraction(c, seq.h(i))
                                             for i, c in enumerate(BpqBlock(p, q, seq).counts(p - 1)))


@given(st.integers(3, 6), st.integers(2, 25))
def test_bracket_encloses_exact_value(n, depth):
    spec = build_star_ray(n + 1).glue(BpBlock(2, n - 1), 2)
    exact = covolume_exact(spec, n)
    br = covolume_bracket(spec, n, depth)
    assert exact in br
    assert br.lo == level_partial_sum(spec, Weights.canonical(n), depth)


def test_bracket_narrows():
    R = build_star_ray(4)
    widths = [covolume_bracket(R, 3, d).width for d in (5, 10, 20)]
    assert widths[0] > widths[1] > widths[2] > 0
    assert str(CovolumeInterval(Fraction(1, 2), Fraction(3, 4), 1, "")) .startswith("[1/2")


def test_level_counts_and_truncation():
    spec = build_star_ray(4).glue(ExplicitBlock((1, 3, 2)), 1)
    assert spec.level_counts(4) == [1, 2, 4, 3, 1]
    T = spec.truncate(4)
    assert T.level_counts() == spec.level_counts(4)
    g = T.graph(AdmissibleSequence.canonical(3))
    assert covers_biregular(g, 4, 3)
    N = compute_ordering(g, "v0")
    for name, L in zip(T.names, T.level):
        assert N[name] == 2 ** int(L)


def test_explicit_block_must_fit_branching():
    with pytest.raises(StarTreeError):
        build_star_ray(3).glue(ExplicitBlock((1, 5)), 1)


def test_tf_construction():
    T = build_Tf(Exponential(Fraction(3, 2)), 4)
    assert T.level_counts(5) == [1, 2, 3, 4, 6, 8]
    with pytest.raises(StarTreeError):
        build_Tf(Exponential(2), 4)
    T2 = build_Tf(Exponential(2), 4, n=4)  # summable against n - 1 = 3
    assert Fraction(3) in covolume_bracket(T2, 4, 60)
    assert build_Tf(Polynomial((1,)), 4).level_counts(3) == [1, 1, 1, 1]


def test_ball_counts_match_truncated_graph():
    spec = build_star_ray(4).glue(BpBlock(2, 2), 1)
    g = spec.truncate(20).graph(AdmissibleSequence.canonical(3))
    assert ball_counts(spec, 8) == list(ball_growth(g, "v0", 8).values)


def test_spec_json_roundtrip():
    seq = AdmissibleSequence.of(6, "(3,6)")
    spec = (build_star_ray(6).glue(BpqBlock(2, 1, seq), 1).glue(ExplicitBlock((1, 2)), 3)
            .with_digits(DigitRule(EventuallyPeriodic.parse("1,(0,2)"), 5, seq=seq)))
    again = StarTreeSpec.from_json(json.loads(json.dumps(spec.to_json())))
    assert again.level_counts(10) == spec.level_counts(10)
    assert covolume_exact(again, seq) == covolume_exact(spec, seq)
