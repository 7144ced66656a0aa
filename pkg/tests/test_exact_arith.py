import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantor_arith.exact_arith import (
    Interval,
    IntervalSet,
    affine_map,
    contains_set,
    gaps_within,
    intersect,
    measure,
    normalize,
    symmetric_difference,
    truncate_decimal,
)
from cantor_arith.cantor_core import cantor_level, upper_level

from oracles import same_point_set

C1 = IntervalSet([(0, F(1, 3)), (F(2, 3), 1)])
C2 = IntervalSet([(0, F(1, 9)), (F(2, 9), F(1, 3)), (F(2, 3), F(7, 9)), (F(8, 9), 1)])


def test_normalize_merges_touching():
    assert normalize([(0, F(1, 3)), (F(1, 3), F(2, 3))]).to_pairs() == [(0, F(2, 3))]


def test_normalize_sorts_without_merging_across_gap():
    assert normalize([(F(2, 3), 1), (0, F(1, 3))]) == C1


def test_normalize_keeps_level_two():
    assert normalize(C2.intervals) == C2
    assert C2 == cantor_level(2)


def test_normalize_rejects_reversed_interval():
    with pytest.raises(ValueError):
        normalize([(1, 0)])


def test_floats_rejected():
    with pytest.raises(TypeError):
        Interval(0.5, 1)


def test_measure_examples():
    assert measure(C2) == F(4, 9)
    assert measure(IntervalSet()) == 0
    assert measure(upper_level(1)) == F(1, 3)


def test_affine_examples():
    assert affine_map(C1, F(1, 3), 0) == IntervalSet([(0, F(1, 9)), (F(2, 9), F(1, 3))])
    assert affine_map(C2, -1, 1) == C2
    assert affine_map(IntervalSet([(F(2, 3), 1)]), 3, -2) == IntervalSet([(0, 1)])


def test_intersect_examples():
    assert intersect(C1, IntervalSet([(F(1, 2), 1)])) == IntervalSet([(F(2, 3), 1)])
    assert intersect(C2, C2) == C2
    assert intersect(IntervalSet([(0, F(1, 3))]), IntervalSet([(F(2, 3), 1)])) == IntervalSet()


def test_intersect_keeps_shared_point():
    assert intersect(IntervalSet([(0, 1)]), IntervalSet([(1, 2)])) == IntervalSet([(1, 1)])


def test_gaps_examples():
    assert gaps_within(C1, Interval(0, 1)) == [(F(1, 3), F(2, 3))]
    assert gaps_within(IntervalSet([(0, 1)]), Interval(0, 1)) == []
    with pytest.raises(ValueError):
        gaps_within(IntervalSet([(0, 2)]), Interval(0, 1))


def test_contains_set_examples():
    assert contains_set(C1, C2)
    assert not contains_set(C2, C1)


def test_contains_point():
    assert C2.contains_point(F(2, 9))
    assert C2.contains_point(1)
    assert not C2.contains_point(F(1, 2))
    assert not IntervalSet().contains_point(0)


def test_symmetric_difference_points_and_pieces():
    a = IntervalSet([(0, 1), (2, 2)])
    b = IntervalSet([(0, F(1, 2)), (F(3, 4), 1)])
    assert symmetric_difference(a, b) == [(F(1, 2), F(3, 4)), (2, 2)]
    assert symmetric_difference(a, a) == []


def test_truncate_decimal():
    assert truncate_decimal(F(2, 3), 4) == "0.6666"
    assert truncate_decimal(F(-2, 3), 2) == "-0.66"
    assert truncate_decimal(F(17, 21), 0) == "0"


small = st.fractions(min_value=-3, max_value=3, max_denominator=12)


@st.composite
def raw_intervals(draw, max_size=8):
    out = []
    for _ in range(draw(st.integers(0, max_size))):
        a, b = draw(small), draw(small)
        out.append((min(a, b), max(a, b)))
    return out


@given(raw_intervals(), st.randoms())
def test_normalize_matches_point_oracle(raw, rnd):
    s = normalize(raw)
    assert same_point_set(raw, s)
    assert normalize(s.intervals) == s
    shuffled = list(raw)
    rnd.shuffle(shuffled)
    assert normalize(shuffled) == s
    pairs = s.to_pairs()
    assert all(a[1] < b[0] for a, b in zip(pairs, pairs[1:]))


@given(raw_intervals(), raw_intervals())
def test_inclusion_exclusion(ra, rb):
    a, b = normalize(ra), normalize(rb)
    assert measure(a.union(b)) + measure(a.intersect(b)) == measure(a) + measure(b)


@given(raw_intervals(), raw_intervals())
def test_intersect_matches_point_oracle(ra, rb):
    a, b = normalize(ra), normalize(rb)
    got = a.intersect(b)
    pts = sorted({p for iv in list(a) + list(b) for p in (iv.lo, iv.hi)})
    probes = pts + [(x + y) / 2 for x, y in zip(pts, pts[1:])]
    for x in probes:
        assert got.contains_point(x) == (a.contains_point(x) and b.contains_point(x))


@given(raw_intervals(), small, small)
def test_affine_scales_measure(raw, c, d):
    s = normalize(raw)
    assert measure(affine_map(s, c, d)) == abs(c) * measure(s)


@given(raw_intervals())
def test_gaps_partition_frame(raw):
    s = normalize(raw)
    frame = Interval(-3, 3)
    gaps = gaps_within(s, frame)
    assert measure(s) + sum(hi - lo for lo, hi in gaps) == frame.length


@given(raw_intervals(), raw_intervals())
def test_symmetric_difference_empty_iff_equal(ra, rb):
    a, b = normalize(ra), normalize(rb)
    assert (symmetric_difference(a, b) == []) == (a == b)


@settings(max_examples=50)
@given(raw_intervals())
def test_serialization_round_trip(raw):
    s = normalize(raw)
    text = json.dumps([[iv.lo.numerator, iv.lo.denominator, iv.hi.numerator, iv.hi.denominator] for iv in s])
    back = IntervalSet(Interval(F(a, b), F(c, d)) for a, b, c, d in json.loads(text))
    assert back == s
    assert [(iv.lo.numerator, iv.lo.denominator) for iv in back] == [(iv.lo.numerator, iv.lo.denominator) for iv in s]
