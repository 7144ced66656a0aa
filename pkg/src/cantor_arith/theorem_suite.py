"""Finite-depth verifiers for the arithmetic theorems on the Cantor set.

A finite level ``C_n`` contains ``C``, so every computed image is a superset
of the limiting image.  Equality at a finite depth is therefore evidence,
while a missing piece at finite depth is a certified gap in the limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from .cantor_core import cantor_level, upper_level
from .exact_arith import (
    Gap,
    Interval,
    IntervalSet,
    RationalLike,
    as_rational,
    symmetric_difference,
    truncate_decimal,
)
from .image_engine import (
    box_image,
    power_t,
    product,
    quotient,
    refinement_invariant,
    set_image,
    square_cube,
    sum_lambda,
)

DECIMAL_DIGITS = 10

Computed = Union[IntervalSet, Fraction, bool, None]


@dataclass
class VerificationReport:
    claim_id: str
    depth: int
    passed: bool
    computed: Computed = None
    expected: Computed = None
    discrepancy: List[Gap] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)


def _set_claim(claim_id: str, depth: int, computed: IntervalSet, expected: IntervalSet, **details) -> VerificationReport:
    diff = symmetric_difference(computed, expected)
    return VerificationReport(claim_id, depth, not diff, computed, expected, diff, details)


def verify_utz(lam: RationalLike, depth: int) -> VerificationReport:
    """``C_n + lam * C_n == [0, 1 + lam]``; ratios above 1 are reduced through
    ``C + lam C = lam (C + C/lam)``."""
    lam = as_rational(lam)
    if lam <= 0:
        raise ValueError(f"lambda={lam} must be positive")
    level = cantor_level(depth)
    if lam > 1:
        reduced = 1 / lam
        image = set_image(sum_lambda(reduced), (level, level)).image.affine_map(lam, 0)
        details = {"lambda": lam, "reduced_lambda": reduced, "scaled_by": lam}
    else:
        image = set_image(sum_lambda(lam), (level, level)).image
        details = {"lambda": lam, "reduced_lambda": None}
    expected = IntervalSet([(0, 1 + lam)])
    report = _set_claim("utz", depth, image, expected, **details)
    report.details["gaps"] = image.gaps_within(Interval(0, 1 + lam))
    return report


def verify_square_cube(depth: int) -> VerificationReport:
    """``{x^2 y : x, y in upper C_n} == [8/27, 1]``."""
    level = upper_level(depth)
    image = set_image(square_cube(), (level, level)).image
    return _set_claim("squarecube", depth, image, IntervalSet([(Fraction(8, 27), 1)]))


def verify_quotient(depth: int) -> VerificationReport:
    level = upper_level(depth)
    image = set_image(quotient(), (level, level)).image
    return _set_claim("quotient", depth, image, IntervalSet([(Fraction(2, 3), Fraction(3, 2))]))


def tail_sum(m: int) -> Fraction:
    """Closed form of ``sum_{n > m} 2^(n-1) / 3^(2n+2)``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return Fraction(2**m, 7 * 9 ** (m + 1))


def level_loss_bound(n: int) -> Fraction:
    """Most measure the product image can lose going from depth n to n+1:
    ``2^(n-1)`` diagonal boxes, each losing a gap of length ``3^(-2n-2)``."""
    return Fraction(2 ** (n - 1), 3 ** (2 * n + 2))


@dataclass(frozen=True)
class MeasureSandwich:
    depth: int
    upper_tilde: Fraction
    tail: Fraction
    lower_tilde: Fraction

    @property
    def upper(self) -> Fraction:
        return Fraction(3, 2) * self.upper_tilde

    @property
    def lower(self) -> Fraction:
        return Fraction(3, 2) * self.lower_tilde

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def decimal(self, digits: int = DECIMAL_DIGITS) -> Dict[str, str]:
        return {
            "lower": truncate_decimal(self.lower, digits),
            "upper": truncate_decimal(self.upper, digits),
        }

    def certified_digits(self, digits: int = DECIMAL_DIGITS) -> Optional[str]:
        """Common truncated prefix of both bounds, if the bracket pins ``digits`` places."""
        lo, hi = truncate_decimal(self.lower, digits), truncate_decimal(self.upper, digits)
        return lo if lo == hi else None


def product_measure_sandwich(depth: int, workers: Optional[int] = None) -> MeasureSandwich:
    """Exact bracket on the measure of ``{xy : x, y in C}``.

    The upper bound is the measure at ``depth``; the lower bound subtracts
    the worst-case losses of every refinement step from ``depth`` onward,
    i.e. ``tail_sum(depth - 1)``.  The factor 3/2 accounts for the disjoint
    scaled copies ``3^-k g(upper C^2)``.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    level = upper_level(depth)
    upper = set_image(product(), (level, level), workers=workers).image.measure()
    tail = tail_sum(depth - 1)
    return MeasureSandwich(depth, upper, tail, upper - tail)


I0 = Interval(Fraction(62, 81), Fraction(63, 81))
J1 = Interval(Fraction(162, 243), Fraction(163, 243))
J2 = Interval(Fraction(216, 243), Fraction(217, 243))


def diagonal_gap(iv: Interval) -> Gap:
    """The open interval dropped from ``g(I, I)`` by refining ``I = [a, a+3t]``."""
    t = iv.length / 3
    c = iv.lo + 2 * t
    return (c * c - t * t, c * c)


def gap_cover_demo() -> VerificationReport:
    """The refinement gap of ``I0`` is filled by the product of two depth-5 intervals."""
    check = refinement_invariant(product(), I0, I0)
    gap = diagonal_gap(I0)
    cover = box_image(product(), (J1, J2))
    upper5 = upper_level(5)
    covered = cover.lo <= gap[0] and gap[1] <= cover.hi
    passed = (
        check.difference == [gap]
        and covered
        and J1 in upper5.intervals
        and J2 in upper5.intervals
        and I0 in upper_level(4).intervals
    )
    return VerificationReport(
        "gapcover",
        5,
        passed,
        computed=IntervalSet([cover]),
        expected=None,
        discrepancy=[] if covered else [gap],
        details={"gap": gap, "refinement_difference": check.difference, "cover": cover},
    )


def power_gap_predicted(t: RationalLike) -> bool:
    """Exact test of ``(2/3)^(1+t) > 1/3``; for ``t = p/q`` this is ``2^(p+q) > 3^p``."""
    t = as_rational(t)
    p, q = t.numerator, t.denominator
    return 2 ** (p + q) > 3**p


def power_threshold_demo(t: RationalLike) -> VerificationReport:
    """Depth-1 image of ``x * y^t``: a gap in [0, 1] appears exactly when
    ``(2/3)^(1+t) > 1/3``."""
    t = as_rational(t)
    if t < 1:
        raise ValueError("t must be at least 1")
    level = cantor_level(1)
    report = set_image(power_t(t), (level, level))
    image = report.image
    gaps = image.gaps_within(Interval(0, 1))
    predicted = power_gap_predicted(t)
    return VerificationReport(
        "powerthreshold",
        1,
        bool(gaps) == predicted,
        computed=image,
        details={"t": t, "gaps": gaps, "gap_exists": bool(gaps), "predicted": predicted, "approximate": report.approximate},
    )
