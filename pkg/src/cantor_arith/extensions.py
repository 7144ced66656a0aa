"""Self-similar Cantor sets, multiples ``v = q u`` inside ``C``, and the
four-squares experiment."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Tuple

from .cantor_core import cantor_level, selfsim_level
from .exact_arith import Interval, IntervalSet, RationalLike, as_rational
from .image_engine import iterated_sum_of_squares, product, set_image
from .theorem_suite import VerificationReport

ENUMERATION_GUARD = 2**24


def tm_residual(t: Fraction, m: int) -> Fraction:
    return (1 - t) ** m - t


@dataclass(frozen=True)
class RootBracket:
    m: int
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def solve_tm(m: int, tolerance: RationalLike) -> RootBracket:
    """Bisect ``(1-t)^m - t`` on [0, 1/2] in exact arithmetic."""
    tol = as_rational(tolerance)
    if m < 2:
        raise ValueError("m must be at least 2")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    lo, hi = Fraction(0), Fraction(1, 2)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        r = tm_residual(mid, m)
        if r == 0:
            return RootBracket(m, mid, mid)
        if r > 0:
            lo = mid
        else:
            hi = mid
    return RootBracket(m, lo, hi)


def golden_root_in(bracket: RootBracket) -> bool:
    """Exact check that ``(3 - sqrt 5)/2`` lies in the bracket and that
    ``t^2 - 3t + 1`` changes sign across it."""
    p = lambda t: t * t - 3 * t + 1
    # lo <= (3 - sqrt5)/2  <=>  (3 - 2 lo)^2 >= 5, both sides of the root positive
    below = (3 - 2 * bracket.lo) ** 2 >= 5
    above = (3 - 2 * bracket.hi) ** 2 <= 5
    return below and above and p(bracket.lo) >= 0 >= p(bracket.hi)


@dataclass(frozen=True)
class CoverageResult:
    covered: bool
    deficit: Fraction
    image: IntervalSet
    gaps: list

    def __iter__(self):
        return iter((self.covered, self.deficit))


def selfsim_product_coverage(
    t: RationalLike, factors: int, depth: int, guard: int = ENUMERATION_GUARD
) -> CoverageResult:
    """Does the ``factors``-fold product set of the depth-``depth`` level cover [0, 1]?"""
    t = as_rational(t)
    if factors < 2:
        raise ValueError("need at least two factors")
    if 2 ** (depth * factors) > guard:
        raise ValueError(f"2^{depth * factors} boxes exceeds the enumeration guard {guard}")
    level = selfsim_level(t, depth)
    acc = level
    for _ in range(factors - 1):
        acc = set_image(product(), (acc, level)).image
    unit = IntervalSet([(0, 1)])
    inside = acc.intersect(unit)
    return CoverageResult(acc.contains_set(unit), 1 - inside.measure(), acc, inside.gaps_within(Interval(0, 1)))


def _q4_points(depth: int) -> List[Fraction]:
    # u = sum 2/3^(n_k) with n_1 >= 2, n_{k+1} - n_k >= 2, n_k <= depth
    points = []
    positions = range(2, depth + 1)
    for r in range(0, depth // 2 + 1):
        for combo in combinations(positions, r):
            if all(b - a >= 2 for a, b in zip(combo, combo[1:])):
                points.append(sum((Fraction(2, 3**n) for n in combo), Fraction(0)))
    return sorted(points)


def claimed_points(q: Fraction, depth: int) -> List[Fraction]:
    if q == 2:
        return [Fraction(0)] + [Fraction(1, 3**k) for k in range(depth, 0, -1)]
    if q == 11:
        return [Fraction(0)] + [Fraction(1, 4 * 3**k) for k in range(depth, 0, -1)]
    if q == 4:
        return _q4_points(depth)
    return []


@dataclass
class MultipleReport:
    q: Fraction
    depth: int
    solution_set: IntervalSet
    claimed_points: List[Fraction]
    residual_measure: Fraction
    point_certified: List[Interval] = field(default_factory=list)
    interval_only: List[Interval] = field(default_factory=list)
    uncovered_points: List[Fraction] = field(default_factory=list)
    zero_is_solution: bool = False

    @property
    def passed(self) -> bool:
        return not self.uncovered_points


def multiple_solutions(q: RationalLike, depth: int) -> MultipleReport:
    """Depth-``depth`` approximation of ``{u in C : q u in C}``.

    Components holding a claimed point are point-certified; the rest can only
    hold limits of infinite digit sequences or finite-depth slack.
    """
    q = as_rational(q)
    if q <= 1:
        raise ValueError("q must exceed 1")
    if depth > 14:
        raise ValueError("depth must be at most 14")
    level = cantor_level(depth)
    solutions = level.intersect(level.affine_map(1 / q, 0))
    points = claimed_points(q, depth)
    uncovered = [p for p in points if not solutions.contains_point(p)]
    certified, loose = [], []
    for iv in solutions:
        (certified if any(p in iv for p in points) else loose).append(iv)
    return MultipleReport(
        q,
        depth,
        solutions,
        points,
        solutions.measure(),
        certified,
        loose,
        uncovered,
        zero_is_solution=solutions.contains_point(0),
    )


def four_squares_evidence(depth: int, squares: int = 4) -> VerificationReport:
    """Passes iff ``squares`` squares of ``C_n`` cover [0, 1] and three squares
    miss (1/3, 4/9).

    Coverage at every finite depth is consistent with the conjecture but does
    not prove it; a failure at any depth would refute it.
    """
    if depth > 8:
        raise ValueError("depth must be at most 8")
    level = cantor_level(depth)
    unit = IntervalSet([(0, 1)])
    image = iterated_sum_of_squares(level, squares)
    three = iterated_sum_of_squares(level, 3).intersect(unit)
    three_gaps = three.gaps_within(Interval(0, 1))
    target = (Fraction(1, 3), Fraction(4, 9))
    gap_found = any(lo <= target[0] and target[1] <= hi for lo, hi in three_gaps)
    covered = image.contains_set(unit)
    return VerificationReport(
        "foursquares",
        depth,
        covered and gap_found,
        computed=image.intersect(unit),
        expected=unit,
        discrepancy=image.intersect(unit).gaps_within(Interval(0, 1)),
        details={"squares": squares, "covers_unit": covered, "three_square_gaps": three_gaps},
    )
