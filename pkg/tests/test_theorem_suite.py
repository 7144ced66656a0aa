from fractions import Fraction as F

import pytest

from cantor_arith.cantor_core import cantor_level, upper_level
from cantor_arith.exact_arith import Interval, IntervalSet
from cantor_arith.image_engine import set_image, product
from cantor_arith.theorem_suite import (
    I0,
    J1,
    J2,
    diagonal_gap,
    gap_cover_demo,
    level_loss_bound,
    power_gap_predicted,
    power_threshold_demo,
    product_measure_sandwich,
    tail_sum,
    verify_quotient,
    verify_square_cube,
    verify_utz,
)

from oracles import brute_image, same_point_set, tail_partial_sum


@pytest.mark.parametrize("lam", [F(1), F(1, 3)])
def test_utz_passes(lam):
    r = verify_utz(lam, 6)
    assert r.passed and r.computed == IntervalSet([(0, 1 + lam)])


def test_utz_fails_below_one_third():
    r = verify_utz(F(1, 4), 2)
    assert not r.passed
    assert r.details["gaps"] == [(F(7, 12), F(2, 3))]
    # brute force over endpoint pairs of C_2: nothing lands strictly inside the gap
    c2 = cantor_level(2)
    assert same_point_set(brute_image(lambda x, y: x + y / 4, (c2, c2)), r.computed)


def test_utz_reduces_large_lambda():
    r = verify_utz(F(3), 5)
    assert r.passed and r.details["reduced_lambda"] == F(1, 3)
    with pytest.raises(ValueError):
        verify_utz(0, 3)


@pytest.mark.parametrize("n", [1, 3, 8])
def test_square_cube(n):
    assert verify_square_cube(n).passed


@pytest.mark.parametrize("n", [1, 2, 6])
def test_quotient(n):
    assert verify_quotient(n).passed


def test_surjectivity_reports_match_brute_force_small_depth():
    for n in (1, 2, 3):
        c = upper_level(n)
        assert same_point_set(brute_image(lambda x, y: x * x * y, (c, c)), verify_square_cube(n).computed)
        assert same_point_set(brute_image(lambda x, y: x / y, (c, c)), verify_quotient(n).computed)


def test_tail_closed_form_against_partial_sums():
    for m in range(0, 8):
        partial = tail_partial_sum(m, 60)
        assert partial < tail_sum(m)
        assert tail_sum(m) - partial < F(1, 10**30)
    assert tail_sum(0) == F(1, 63)
    assert tail_sum(1) == F(2, 567)


def test_depth_one_sandwich_lower_bound():
    s = product_measure_sandwich(1)
    assert s.upper_tilde == F(5, 9)
    assert s.lower_tilde == F(34, 63)
    assert s.lower == F(17, 21)


def test_measure_first_levels_by_hand():
    # upper C_2 = [2/3,7/9] U [8/9,1]; the products are [36/81,49/81], [48/81,63/81], [64/81,1]
    assert product_measure_sandwich(2).upper_tilde == F(44, 81)


def test_loss_per_level_never_exceeds_bound():
    uppers = {m: product_measure_sandwich(m).upper_tilde for m in range(1, 8)}
    for n in range(1, 7):
        loss = uppers[n] - uppers[n + 1]
        assert 0 <= loss <= level_loss_bound(n)
    # the first three refinements lose the full amount; the fourth is the I0 cover
    assert [uppers[n] - uppers[n + 1] == level_loss_bound(n) for n in range(1, 5)] == [True, True, True, False]
    assert uppers[4] - uppers[5] == level_loss_bound(4) - F(1, 59049)


def test_tail_indexed_from_depth_is_not_a_valid_lower_bound():
    # subtracting only the losses after depth m would put the depth-1 bound above the depth-2 measure
    assert product_measure_sandwich(1).upper_tilde - tail_sum(1) > product_measure_sandwich(2).upper_tilde


def test_sandwich_monotone():
    ss = [product_measure_sandwich(m) for m in range(1, 9)]
    for a, b in zip(ss, ss[1:]):
        assert a.upper >= b.upper >= b.lower >= a.lower
    assert max(s.lower for s in ss) <= min(s.upper for s in ss)


def test_strict_lower_bound_from_depth_five():
    for m in range(1, 5):
        assert product_measure_sandwich(m).lower == F(17, 21)
    for m in range(5, 9):
        assert product_measure_sandwich(m).lower > F(17, 21)


def test_decrease_at_depth_four():
    assert product_measure_sandwich(4).upper < product_measure_sandwich(3).upper


def test_gap_cover_demo():
    r = gap_cover_demo()
    assert r.passed
    assert diagonal_gap(I0) == (F(35343, 59049), F(35344, 59049))
    assert r.details["cover"] == Interval(F(34992, 59049), F(35371, 59049))


def test_gap_cover_in_images():
    gap_mid = F(35343 * 2 + 1, 2 * 59049)
    c4 = set_image(product(), (upper_level(4), upper_level(4))).image
    c5 = set_image(product(), (upper_level(5), upper_level(5))).image
    assert c4.contains_point(gap_mid) and c5.contains_point(gap_mid)
    assert J1 in upper_level(5).intervals and J2 in upper_level(5).intervals


@pytest.mark.parametrize(
    "t, has_gap",
    [(F(1), True), (F(2), False), (F(12, 7), False), (F(17, 10), True), (F(3, 2), True)],
)
def test_power_threshold(t, has_gap):
    r = power_threshold_demo(t)
    assert r.passed
    assert r.details["gap_exists"] is has_gap


def test_power_threshold_gap_at_t_one():
    assert power_threshold_demo(1).details["gaps"] == [(F(1, 3), F(4, 9))]


def test_power_threshold_exact_prediction():
    # log 2 / log(3/2) = 1.7095...
    assert power_gap_predicted(F(17095, 10000))
    assert not power_gap_predicted(F(17096, 10000))
