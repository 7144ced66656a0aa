"""Brute-force references that share no code path with the library."""

from fractions import Fraction
from itertools import product as cartesian


def covers(raw, x):
    return any(lo <= x <= hi for lo, hi in raw)


def same_point_set(raw, canonical):
    """Decide whether two finite unions of closed intervals are equal as point sets.

    Both are piecewise constant between critical points, so it suffices to
    compare membership at every endpoint and at every midpoint between
    consecutive endpoints.
    """
    other = [(iv.lo, iv.hi) for iv in canonical]
    pts = sorted({p for pair in list(raw) + other for p in pair})
    probes = pts + [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return all(covers(raw, x) == covers(other, x) for x in probes)


def corner_box(f, box):
    """Min and max of ``f`` over all corners of ``box``; no monotonicity assumed."""
    values = [f(*corner) for corner in cartesian(*[(iv.lo, iv.hi) for iv in box])]
    return min(values), max(values)


def brute_image(f, components):
    return [corner_box(f, box) for box in cartesian(*[c.intervals for c in components])]


def endpoints(s):
    return sorted({p for iv in s for p in (iv.lo, iv.hi)})


def cantor_orbit(x):
    """Membership via the tripling map on the two retained thirds.

    ``x`` is in C iff the orbit never enters (1/3, 2/3); the orbit of a
    rational is eventually periodic so the loop terminates.
    """
    seen = set()
    while x not in seen:
        seen.add(x)
        if x <= Fraction(1, 3):
            x = 3 * x
        elif x >= Fraction(2, 3):
            x = 3 * x - 2
        else:
            return False
    return True


def greedy_digit(x, k):
    """k-th ternary digit of the terminating-preferred expansion of x < 1."""
    return (x.numerator * 3**k // x.denominator) % 3


def tail_partial_sum(m, terms):
    return sum(Fraction(2 ** (n - 1), 3 ** (2 * n + 2)) for n in range(m + 1, m + 1 + terms))


def quotient_bands_brute(u, span=80):
    hits = [
        m
        for m in range(-span, span + 1)
        if Fraction(2, 3) * Fraction(3) ** m <= u <= Fraction(3, 2) * Fraction(3) ** m
    ]
    return hits
