"""Images of interval sets under coordinate-monotone arithmetic maps.

A box ``I1 x I2`` is sent to ``[f(min corner), f(max corner)]``; a set image is
the coalesced union over all boxes.  Polynomial maps with rational parameters
are evaluated on integer numerators over a common denominator, which keeps the
depth-11 product enumeration (about half a million boxes) cheap.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .exact_arith import (
    Gap,
    Interval,
    IntervalSet,
    RationalLike,
    as_rational,
    merge_sorted_pairs,
)

INCREASING = +1
DECREASING = -1

THREADS_ENV = "CANTOR_ARITH_THREADS"
# below this many boxes a process pool costs more than it saves
PARALLEL_MIN_BOXES = 200_000


class DomainError(ValueError):
    """A box leaves the region where a map is defined and monotone."""


@dataclass(frozen=True)
class MapDescriptor:
    name: str
    arity: int
    directions: Tuple[int, ...]
    param: Optional[Fraction] = None
    symmetric: bool = False
    approximate: bool = False
    # coordinate i must satisfy x > lower_open[i] (or >= when not strict)
    lower_bounds: Tuple[Tuple[Fraction, bool], ...] = field(default=())

    def evaluate(self, *xs):
        n, p = self.name, self.param
        if n == "sum_lambda":
            return xs[0] + p * xs[1]
        if n == "product":
            return xs[0] * xs[1]
        if n == "quotient":
            return xs[0] / xs[1]
        if n == "square_cube":
            return xs[0] * xs[0] * xs[1]
        if n == "square":
            return xs[0] * xs[0]
        if n == "power_t":
            if p.denominator == 1:
                return xs[0] * xs[1] ** int(p)
            return Fraction(float(xs[0]) * float(xs[1]) ** float(p))
        raise ValueError(f"unknown map {n!r}")

    def check_domain(self, box: Sequence[Interval]) -> None:
        if len(box) != self.arity:
            raise DomainError(f"{self.name} takes {self.arity} coordinates, got {len(box)}")
        for i, (bound, strict) in enumerate(self.lower_bounds):
            lo = box[i].lo
            if lo < bound or (strict and lo == bound):
                op = ">" if strict else ">="
                raise DomainError(f"{self.name}: coordinate {i} needs values {op} {bound}, got {box[i]}")

    @property
    def label(self) -> str:
        if self.name in ("sum_lambda", "power_t"):
            return f"{self.name}({self.param})"
        return self.name


_NONNEG = (Fraction(0), False)


def sum_lambda(lam: RationalLike) -> MapDescriptor:
    lam = as_rational(lam)
    return MapDescriptor(
        "sum_lambda", 2, (INCREASING, INCREASING if lam >= 0 else DECREASING), lam, symmetric=lam == 1
    )


def product() -> MapDescriptor:
    return MapDescriptor("product", 2, (INCREASING, INCREASING), symmetric=True, lower_bounds=(_NONNEG, _NONNEG))


def quotient() -> MapDescriptor:
    return MapDescriptor(
        "quotient", 2, (INCREASING, DECREASING), lower_bounds=(_NONNEG, (Fraction(0), True))
    )


def square_cube() -> MapDescriptor:
    return MapDescriptor("square_cube", 2, (INCREASING, INCREASING), lower_bounds=(_NONNEG, _NONNEG))


def square() -> MapDescriptor:
    return MapDescriptor("square", 1, (INCREASING,), lower_bounds=(_NONNEG,))


def power_t(t: RationalLike) -> MapDescriptor:
    """``x * y**t``.  Non-integer ``t`` is evaluated in double precision."""
    t = as_rational(t)
    if t < 0:
        raise ValueError("power_t needs t >= 0")
    return MapDescriptor(
        "power_t",
        2,
        (INCREASING, INCREASING),
        t,
        approximate=t.denominator != 1,
        lower_bounds=(_NONNEG, _NONNEG),
    )


def box_image(f: MapDescriptor, box: Sequence[Interval]) -> Interval:
    f.check_domain(box)
    low = [iv.lo if d == INCREASING else iv.hi for iv, d in zip(box, f.directions)]
    high = [iv.hi if d == INCREASING else iv.lo for iv, d in zip(box, f.directions)]
    return Interval(f.evaluate(*low), f.evaluate(*high))


@dataclass(frozen=True)
class ImageReport:
    image: IntervalSet
    box_count: int
    gap_list: List[Gap]
    approximate: bool = False


# Integer corner evaluators: (numerator corner values, common denominator D)
# -> value numerator; the value denominator is given by the paired function.
def _integer_kernel(f: MapDescriptor):
    n, p = f.name, f.param
    if n == "sum_lambda":
        a, b = p.numerator, p.denominator
        return (lambda x, y: b * x + a * y), (lambda d: b * d)
    if n == "product":
        return (lambda x, y: x * y), (lambda d: d * d)
    if n == "square_cube":
        return (lambda x, y: x * x * y), (lambda d: d**3)
    if n == "square":
        return (lambda x: x * x), (lambda d: d * d)
    if n == "power_t" and p.denominator == 1:
        k = int(p)
        return (lambda x, y: x * y**k), (lambda d: d ** (k + 1))
    return None


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    if n < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def _pair_rows(args):
    """Binary-map box images for rows ``rows`` of the (lefts x rights) grid."""
    name, param, rows, xs, ys, sym, flip = args
    f = MapDescriptor(name, 2, (INCREASING, INCREASING), param)
    kern, _ = _integer_kernel(f)
    out = []
    for i in rows:
        xlo, xhi = xs[i]
        start = i if sym else 0
        for ylo, yhi in ys[start:]:
            if flip:
                out.append((kern(xlo, yhi), kern(xhi, ylo)))
            else:
                out.append((kern(xlo, ylo), kern(xhi, yhi)))
    return merge_sorted_pairs(out)


def _scaled_components(components: Sequence[IntervalSet]):
    den = 1
    for comp in components:
        for iv in comp:
            den = math.lcm(den, iv.lo.denominator, iv.hi.denominator)
    scaled = [
        [(iv.lo.numerator * (den // iv.lo.denominator), iv.hi.numerator * (den // iv.hi.denominator)) for iv in comp]
        for comp in components
    ]
    return scaled, den


def set_image(
    f: MapDescriptor,
    components: Sequence[IntervalSet],
    workers: Optional[int] = None,
) -> ImageReport:
    """Coalesced union of ``box_image`` over every tuple of member intervals.

    For a symmetric map applied to two identical components only unordered
    pairs are enumerated.
    """
    if len(components) != f.arity:
        raise DomainError(f"{f.name} takes {f.arity} components, got {len(components)}")
    if any(not comp for comp in components):
        return ImageReport(IntervalSet(), 0, [], f.approximate)
    hulls = [comp.hull() for comp in components]
    f.check_domain(hulls)

    sym = f.arity == 2 and f.symmetric and components[0] == components[1]
    sizes = [len(c) for c in components]
    if f.arity == 1:
        count = sizes[0]
    elif sym:
        count = sizes[0] * (sizes[0] + 1) // 2
    else:
        count = sizes[0] * sizes[1]

    kernel = _integer_kernel(f)
    if kernel is not None:
        image = _integer_image(f, kernel, components, sym, workers, count)
    else:
        image = _generic_image(f, components, sym)
    return ImageReport(image, count, image.gaps_within(image.hull()) if image else [], f.approximate)


def _integer_image(f, kernel, components, sym, workers, count) -> IntervalSet:
    kern, den_of = kernel
    scaled, den = _scaled_components(components)
    out_den = den_of(den)
    if f.arity == 1:
        pairs = merge_sorted_pairs([(kern(lo), kern(hi)) for lo, hi in scaled[0]])
        return IntervalSet.from_scaled(pairs, out_den)

    xs, ys = scaled
    flip = f.directions[1] == DECREASING
    if workers is None:
        workers = _worker_count()
    rows = list(range(len(xs)))
    if workers > 1 and count >= PARALLEL_MIN_BOXES:
        # interleaved rows balance the triangular workload of unordered pairs
        chunks = [rows[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(_pair_rows, [(f.name, f.param, c, xs, ys, sym, flip) for c in chunks])
            )
        pairs = merge_sorted_pairs([p for part in parts for p in part])
    else:
        pairs = _pair_rows((f.name, f.param, rows, xs, ys, sym, flip))
    return IntervalSet.from_scaled(pairs, out_den)


def _generic_image(f, components, sym) -> IntervalSet:
    if f.arity == 1:
        return IntervalSet(box_image(f, [iv]) for iv in components[0])
    a, b = components
    boxes: List[Interval] = []
    for i, x in enumerate(a):
        for y in b.intervals[i if sym else 0 :]:
            boxes.append(box_image(f, (x, y)))
    return IntervalSet(boxes)


def minkowski_sum(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return set_image(sum_lambda(1), (a, b)).image


def iterated_sum_of_squares(s: IntervalSet, m: int) -> IntervalSet:
    """``{x1^2 + ... + xm^2 : xi in s}``, coalescing after every fold."""
    if m < 1:
        raise ValueError("need at least one square")
    squares = set_image(square(), (s,)).image
    acc = squares
    for _ in range(m - 1):
        acc = minkowski_sum(acc, squares)
    return acc


@dataclass(frozen=True)
class RefinementCheck:
    invariant: bool
    coarse: Interval
    refined: IntervalSet
    difference: List[Gap]

    def __iter__(self):
        return iter((self.invariant, self.difference))


def refinement_invariant(
    f: MapDescriptor,
    i1: Interval,
    i2: Interval,
    keep_fraction: RationalLike = Fraction(1, 3),
) -> RefinementCheck:
    """Compare ``F(I1, I2)`` with ``F`` on the middle-refined boxes.

    The refined image always sits inside the coarse one, so the difference is
    a list of open gaps.
    """
    from .cantor_core import middle_refine

    if f.arity != 2:
        raise ValueError("refinement check is for binary maps")
    if i1.length != i2.length:
        raise ValueError("intervals must have equal length")
    if i1 != i2 and not (i1.hi < i2.lo or i2.hi < i1.lo):
        raise ValueError("intervals must be identical or disjoint")
    coarse = box_image(f, (i1, i2))
    refined = set_image(
        f,
        (middle_refine(IntervalSet([i1]), keep_fraction), middle_refine(IntervalSet([i2]), keep_fraction)),
    ).image
    diff = refined.gaps_within(coarse)
    return RefinementCheck(not diff and refined == IntervalSet([coarse]), coarse, refined, diff)
