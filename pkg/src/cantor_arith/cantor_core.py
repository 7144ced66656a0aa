"""Ternary expansions, Cantor membership, level-set generators and digit
decompositions of sums and differences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .exact_arith import Interval, IntervalSet, RationalLike, as_rational

STANDARD = "standard"
UPPER = "upper"
SELFSIM = "selfsim"
VARIANTS = (STANDARD, UPPER, SELFSIM)


@dataclass(frozen=True)
class TernaryExpansion:
    """Eventually periodic base-3 digits ``0.pre(period)``.

    An empty period means the expansion terminates.  Instances built through
    :meth:`canonical` never carry an all-zero period and have a minimal,
    maximally-rotated period.
    """

    preperiod: Tuple[int, ...] = ()
    period: Tuple[int, ...] = ()

    def __post_init__(self):
        pre, per = tuple(self.preperiod), tuple(self.period)
        if any(d not in (0, 1, 2) for d in pre + per):
            raise ValueError("ternary digits must be 0, 1 or 2")
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def canonical(cls, preperiod, period) -> "TernaryExpansion":
        pre, per = list(preperiod), list(period)
        if per and not any(per):
            per = []
        if per:
            # shortest repeating block
            n = len(per)
            for k in range(1, n + 1):
                if n % k == 0 and per == per[:k] * (n // k):
                    per = per[:k]
                    break
            # absorb preperiod digits that merely repeat the cycle
            while pre and pre[-1] == per[-1]:
                pre.pop()
                per = [per[-1]] + per[:-1]
        else:
            while pre and pre[-1] == 0:
                pre.pop()
        return cls(tuple(pre), tuple(per))

    @property
    def terminating(self) -> bool:
        return not self.period

    def digits(self, n: int) -> Tuple[int, ...]:
        """First ``n`` digits."""
        out = list(self.preperiod[:n])
        while len(out) < n:
            out.extend(self.period or (0,))
        return tuple(out[:n])

    def __str__(self) -> str:
        pre = "".join(map(str, self.preperiod))
        per = "".join(map(str, self.period))
        return f"0.{pre}({per})_3" if per else f"0.{pre or '0'}_3"


def rational_to_ternary(x: RationalLike) -> TernaryExpansion:
    """Long division in base 3 with remainder-cycle detection.

    Ternary rationals come back in terminating form; 1 is the only value that
    needs the all-2s tail.
    """
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise ValueError(f"{x} is outside [0, 1]")
    if x == 1:
        return TernaryExpansion((), (2,))
    p, q = x.numerator, x.denominator
    digits = []
    seen = {}
    r = p
    while r and r not in seen:
        seen[r] = len(digits)
        d, r = divmod(3 * r, q)
        digits.append(d)
    if not r:
        return TernaryExpansion.canonical(digits, ())
    start = seen[r]
    return TernaryExpansion.canonical(digits[:start], digits[start:])


def ternary_to_rational(e: TernaryExpansion) -> Fraction:
    k = len(e.preperiod)
    value = Fraction(0)
    for i, d in enumerate(e.preperiod, 1):
        value += Fraction(d, 3**i)
    if e.period:
        block = 0
        for d in e.period:
            block = 3 * block + d
        value += Fraction(block, 3**k * (3 ** len(e.period) - 1))
    return value


def alternate_expansion(e: TernaryExpansion) -> Optional[TernaryExpansion]:
    """The second representation of a ternary rational: final digit ``d``
    becomes ``d - 1`` followed by repeating 2s.  ``None`` when there is none."""
    if e.period or not e.preperiod:
        return None
    *head, last = e.preperiod
    return TernaryExpansion.canonical(head + [last - 1], [2])


def in_cantor(x: RationalLike) -> bool:
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise ValueError(f"{x} is outside [0, 1]")
    e = rational_to_ternary(x)
    if all(d != 1 for d in e.preperiod + e.period):
        return True
    alt = alternate_expansion(e)
    return alt is not None and all(d != 1 for d in alt.preperiod + alt.period)


@dataclass(frozen=True)
class CantorSpec:
    variant: str = STANDARD
    depth: int = 0
    t: Optional[Fraction] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        if self.variant == UPPER and self.depth < 1:
            raise ValueError("the upper Cantor level needs depth >= 1")
        if self.variant == SELFSIM:
            if self.t is None:
                raise ValueError("selfsim variant needs a contraction ratio t")
            t = as_rational(self.t)
            if not 0 < t < Fraction(1, 2):
                raise ValueError(f"t={t} must lie in (0, 1/2)")
            object.__setattr__(self, "t", t)


def _ternary_left_endpoints(n: int):
    lefts = [0]
    for _ in range(n):
        lefts = [v for a in lefts for v in (3 * a, 3 * a + 2)]
    return lefts


def generate(spec: CantorSpec) -> IntervalSet:
    n = spec.depth
    if spec.variant == SELFSIM:
        t = spec.t
        lefts = [Fraction(0)]
        for k in range(n):
            step = (1 - t) * t**k
            lefts = [v for a in lefts for v in (a, a + step)]
        length = t**n
        return IntervalSet._canonical([Interval(a, a + length) for a in lefts])
    lefts = _ternary_left_endpoints(n)
    if spec.variant == UPPER:
        lefts = lefts[len(lefts) // 2 :]
    den = 3**n
    # left endpoints are 2 apart at minimum, so intervals of width 1 never touch
    return IntervalSet.from_scaled([(a, a + 1) for a in lefts], den)


def cantor_level(n: int) -> IntervalSet:
    return generate(CantorSpec(STANDARD, n))


def upper_level(n: int) -> IntervalSet:
    return generate(CantorSpec(UPPER, n))


def selfsim_level(t: RationalLike, n: int) -> IntervalSet:
    return generate(CantorSpec(SELFSIM, n, as_rational(t)))


def middle_refine(s: IntervalSet, keep_fraction: RationalLike) -> IntervalSet:
    """Replace each ``[a, a+L]`` by ``[a, a+fL] U [a+(1-f)L, a+L]``."""
    f = as_rational(keep_fraction)
    if not 0 < f < Fraction(1, 2):
        raise ValueError(f"keep fraction {f} must lie in (0, 1/2)")
    out = []
    for iv in s:
        length = iv.hi - iv.lo
        out.append(Interval(iv.lo, iv.lo + f * length))
        out.append(Interval(iv.hi - f * length, iv.hi))
    return IntervalSet(out)


_SUM_DIGITS = {0: (0, 0), 1: (2, 0), 2: (2, 2)}


def decompose_sum(u: RationalLike) -> Tuple[Fraction, Fraction]:
    """Split ``u`` in [0, 2] as ``x + y`` with ``x >= y`` both in the Cantor set.

    Digit ``e`` of ``u/2`` becomes the pair ``(0,0)``, ``(2,0)`` or ``(2,2)``.
    """
    u = as_rational(u)
    if not 0 <= u <= 2:
        raise ValueError(f"{u} is outside [0, 2]")
    e = rational_to_ternary(u / 2)
    xs = [[_SUM_DIGITS[d][i] for d in e.preperiod] for i in (0, 1)]
    ps = [[_SUM_DIGITS[d][i] for d in e.period] for i in (0, 1)]
    x = ternary_to_rational(TernaryExpansion.canonical(xs[0], ps[0]))
    y = ternary_to_rational(TernaryExpansion.canonical(xs[1], ps[1]))
    return x, y


def decompose_diff(u: RationalLike) -> Tuple[Fraction, Fraction]:
    """Split ``u`` in [-1, 1] as ``x - y``, using ``y = 1 - z`` for a sum split of ``u + 1``."""
    u = as_rational(u)
    if not -1 <= u <= 1:
        raise ValueError(f"{u} is outside [-1, 1]")
    x, z = decompose_sum(u + 1)
    return x, 1 - z


def decompose_third(u: RationalLike) -> Tuple[Fraction, Fraction]:
    """Split ``u`` in [0, 4/3] as ``x + z/3``."""
    u = as_rational(u)
    if not 0 <= u <= Fraction(4, 3):
        raise ValueError(f"{u} is outside [0, 4/3]")
    if u == Fraction(4, 3):
        return Fraction(1), Fraction(1)
    # y <= u/2 < 2/3 and y in C force y <= 1/3
    x, y = decompose_sum(u)
    return x, 3 * y


def _floor_log3(u: Fraction) -> int:
    p, q = u.numerator, u.denominator
    k = math.floor((p.bit_length() - q.bit_length()) / math.log2(3))
    while Fraction(3) ** k > u:
        k -= 1
    while Fraction(3) ** (k + 1) <= u:
        k += 1
    return k


def quotient_band(m: int) -> Interval:
    return Interval(Fraction(2, 3) * Fraction(3) ** m, Fraction(3, 2) * Fraction(3) ** m)


def in_quotient_set(u: RationalLike) -> Tuple[bool, Optional[int]]:
    """Membership in the union of bands ``[2/3 * 3^m, 3/2 * 3^m]`` plus the witness ``m``."""
    u = as_rational(u)
    if u <= 0:
        raise ValueError(f"{u} is not positive")
    k = _floor_log3(u)
    # u in [3^k, 3^(k+1)): only bands k and k+1 can reach it
    for m in (k, k + 1):
        if u in quotient_band(m):
            return True, m
    return False, None
