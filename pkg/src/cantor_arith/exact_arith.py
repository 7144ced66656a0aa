"""Exact rational intervals and canonical finite unions of closed intervals.

Rationals are :class:`fractions.Fraction`.  An :class:`IntervalSet` is always
kept canonical: sorted, pairwise disjoint, and maximal (closed intervals that
touch are merged).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

RationalLike = Union[Fraction, int, str]

# An open interval (lo, hi) reported as a bare endpoint pair.
Gap = Tuple[Fraction, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise ValueError(f"interval has lo > hi: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


IntervalLike = Union[Interval, Tuple[RationalLike, RationalLike]]


def _coerce(iv: IntervalLike) -> Interval:
    return iv if isinstance(iv, Interval) else Interval(*iv)


def merge_sorted_pairs(pairs: List[Tuple]) -> List[Tuple]:
    """Merge (lo, hi) pairs of any ordered type under closed-set semantics.

    Sorts in place.  Touching pairs merge.
    """
    pairs.sort()
    out: List[list] = []
    for lo, hi in pairs:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


class IntervalSet:
    """Immutable canonical union of closed intervals with rational endpoints."""

    __slots__ = ("_intervals", "_los")

    def __init__(self, intervals: Iterable[IntervalLike] = ()):
        raw = [_coerce(iv) for iv in intervals]
        merged = merge_sorted_pairs([(iv.lo, iv.hi) for iv in raw])
        self._intervals: Tuple[Interval, ...] = tuple(Interval(lo, hi) for lo, hi in merged)
        self._los = None

    @classmethod
    def _canonical(cls, intervals: Sequence[Interval]) -> "IntervalSet":
        # caller guarantees canonical order and disjointness
        obj = cls.__new__(cls)
        obj._intervals = tuple(intervals)
        obj._los = None
        return obj

    @classmethod
    def from_scaled(cls, pairs: Sequence[Tuple[int, int]], denominator: int) -> "IntervalSet":
        """Build from canonical integer pairs, each endpoint divided by ``denominator``."""
        return cls._canonical(
            [Interval(Fraction(lo, denominator), Fraction(hi, denominator)) for lo, hi in pairs]
        )

    @property
    def intervals(self) -> Tuple[Interval, ...]:
        return self._intervals

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._intervals)

    def __len__(self) -> int:
        return len(self._intervals)

    def __bool__(self) -> bool:
        return bool(self._intervals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._intervals == other._intervals

    def __hash__(self) -> int:
        return hash(self._intervals)

    def __repr__(self) -> str:
        if len(self._intervals) > 8:
            head = ", ".join(map(repr, self._intervals[:4]))
            return f"IntervalSet({head}, ... {len(self._intervals)} intervals)"
        return f"IntervalSet({', '.join(map(repr, self._intervals))})"

    @property
    def lo(self) -> Fraction:
        return self._intervals[0].lo

    @property
    def hi(self) -> Fraction:
        return self._intervals[-1].hi

    def hull(self) -> Interval:
        return Interval(self.lo, self.hi)

    def measure(self) -> Fraction:
        return sum((iv.hi - iv.lo for iv in self._intervals), Fraction(0))

    def contains_point(self, x) -> bool:
        if self._los is None:
            self._los = [iv.lo for iv in self._intervals]
        i = bisect.bisect_right(self._los, x) - 1
        return i >= 0 and x <= self._intervals[i].hi

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self._intervals + other._intervals)

    def affine_map(self, scale: RationalLike, offset: RationalLike) -> "IntervalSet":
        c, d = as_rational(scale), as_rational(offset)
        if c >= 0:
            return IntervalSet(Interval(c * iv.lo + d, c * iv.hi + d) for iv in self._intervals)
        return IntervalSet(Interval(c * iv.hi + d, c * iv.lo + d) for iv in self._intervals)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        a, b = self._intervals, other._intervals
        i = j = 0
        out: List[Interval] = []
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo <= hi:
                out.append(Interval(lo, hi))
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        # two canonical inputs can only produce touching pieces at a shared point
        return IntervalSet(out)

    def contains_set(self, other: "IntervalSet") -> bool:
        j = 0
        a = self._intervals
        for iv in other._intervals:
            while j < len(a) and a[j].hi < iv.lo:
                j += 1
            if j == len(a) or not (a[j].lo <= iv.lo and iv.hi <= a[j].hi):
                return False
        return True

    def gaps_within(self, frame: IntervalLike) -> List[Gap]:
        frame = _coerce(frame)
        if self and (self.lo < frame.lo or self.hi > frame.hi):
            raise ValueError(f"set {self!r} is not contained in frame {frame!r}")
        gaps: List[Gap] = []
        cursor = frame.lo
        for iv in self._intervals:
            if iv.lo > cursor:
                gaps.append((cursor, iv.lo))
            cursor = iv.hi
        if cursor < frame.hi:
            gaps.append((cursor, frame.hi))
        return gaps

    def difference_pieces(self, other: "IntervalSet") -> List[Gap]:
        """Endpoint pairs of the components of ``self \\ other``.

        Each pair is the closure of a nonempty component; isolated points
        appear as ``(p, p)``.  The list is empty iff ``other`` covers ``self``.
        """
        pieces: List[Gap] = []
        b = other._intervals
        j = 0
        for iv in self._intervals:
            while j < len(b) and b[j].hi < iv.lo:
                j += 1
            # cur_closed: whether the point cur itself is still uncovered
            cur, cur_closed = iv.lo, True
            k = j
            while k < len(b) and b[k].lo <= iv.hi:
                if b[k].lo > cur:
                    pieces.append((cur, b[k].lo))
                cur, cur_closed = max(cur, b[k].hi), False
                k += 1
            if cur < iv.hi or (cur == iv.hi and cur_closed):
                pieces.append((cur, iv.hi))
        return pieces

    def to_pairs(self) -> List[Tuple[Fraction, Fraction]]:
        return [(iv.lo, iv.hi) for iv in self._intervals]


def normalize(raw: Iterable[IntervalLike]) -> IntervalSet:
    return IntervalSet(raw)


def measure(s: IntervalSet) -> Fraction:
    return s.measure()


def affine_map(s: IntervalSet, scale: RationalLike, offset: RationalLike) -> IntervalSet:
    return s.affine_map(scale, offset)


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a.intersect(b)


def gaps_within(s: IntervalSet, frame: IntervalLike) -> List[Gap]:
    return s.gaps_within(frame)


def contains_set(s: IntervalSet, t: IntervalSet) -> bool:
    return s.contains_set(t)


def symmetric_difference(a: IntervalSet, b: IntervalSet) -> List[Gap]:
    """Pieces where two sets disagree, sorted; empty iff ``a == b``."""
    return sorted(a.difference_pieces(b) + b.difference_pieces(a))


def truncate_decimal(q: RationalLike, digits: int) -> str:
    """Decimal rendering of ``q`` truncated (toward zero) to ``digits`` places."""
    q = as_rational(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = q.numerator * 10**digits // q.denominator
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
