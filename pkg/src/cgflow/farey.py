"""Distance in the graph of slopes on the once-punctured torus.

Slopes are reduced pairs (num, den) with den > 0, plus (1, 0) for the
vertical slope.  Two slopes span an edge exactly when the determinant of
the pair is +-1.  Distance is computed by moving one endpoint to (1, 0)
with an integer unimodular matrix and then minimising the number of
integer continued-fraction digits of the other endpoint; branching on
floor and ceiling at each step and taking the minimum gives the graph
distance, and the recursion strictly reduces denominators.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DomainError

Slope = tuple[int, int]

INFINITY_SLOPE: Slope = (1, 0)


def normalize_slope(num: int, den: int) -> Slope:
    if num == 0 and den == 0:
        raise DomainError("slope 0/0 is undefined")
    g = gcd(abs(num), abs(den))
    num //= g
    den //= g
    if den < 0 or (den == 0 and num < 0):
        num, den = -num, -den
    return (num, den)


def slope_of_fraction(value) -> Slope:
    if isinstance(value, tuple):
        return normalize_slope(value[0], value[1])
    f = Fraction(value)
    return normalize_slope(f.numerator, f.denominator)


def slope_intersection(a: Slope, b: Slope) -> int:
    """Geometric intersection number of the two slopes: |det|."""
    a = normalize_slope(*a)
    b = normalize_slope(*b)
    return abs(a[0] * b[1] - a[1] * b[0])


def is_farey_edge(a: Slope, b: Slope) -> bool:
    return slope_intersection(a, b) == 1


@lru_cache(maxsize=None)
def _dist_to_infinity(num: int, den: int) -> int:
    # (num, den) is reduced with den >= 0.
    if den == 0:
        return 0
    if den == 1:
        return 1
    best = None
    floor_digit = num // den
    for digit in (floor_digit, floor_digit + 1):
        rem_num = num - digit * den
        if rem_num == 0:
            # digit is the slope itself; handled by den == 1 branch.
            continue
        # next point is -1/(x - digit) = (-den, rem_num)
        nxt = normalize_slope(-den, rem_num)
        sub = _dist_to_infinity(nxt[0], nxt[1])
        if best is None or sub < best:
            best = sub
    return 1 + best


def farey_distance(a, b) -> int:
    """Graph distance between two slopes."""
    a = normalize_slope(*a)
    b = normalize_slope(*b)
    if a == b:
        return 0
    p, q = a
    # Unimodular row completion: p*s - q*r = 1.
    if q == 0:
        r, s = 0, 1
    else:
        # Extended gcd on (p, q); gcd is 1.
        r0, s0 = _bezout(p, q)
        r, s = -s0, r0
        # now p*s - q*r = p*r0 + q*s0 = 1
    bn, bd = b
    img = normalize_slope(s * bn - r * bd, -q * bn + p * bd)
    return _dist_to_infinity(img[0], img[1])


def _bezout(p: int, q: int) -> tuple[int, int]:
    """(u, v) with p*u + q*v = gcd(p, q) = 1."""
    old_r, r = p, q
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_u, u = u, old_u - k * u
        old_v, v = v, old_v - k * v
    if old_r == -1:
        old_u, old_v = -old_u, -old_v
    return old_u, old_v


def farey_distance_bfs(a, b, box: int) -> int | None:
    """Breadth-first distance using only slopes with |num|, |den| <= box.

    Exact when the box is large enough to contain a geodesic; None when b
    is not reached inside the box.  Kept as an independent cross-check
    for farey_distance.
    """
    a = normalize_slope(*a)
    b = normalize_slope(*b)
    if a == b:
        return 0
    seen = {a}
    frontier = [a]
    dist = 0
    while frontier:
        dist += 1
        nxt = []
        for p, q in frontier:
            for r, s in _neighbors_in_box(p, q, box):
                v = (r, s)
                if v == b:
                    return dist
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return None


def _neighbors_in_box(p: int, q: int, box: int):
    # All (r, s) with |p*s - q*r| = 1 form two families (r0 + k*p, s0 + k*q).
    u, v = _bezout(p, q)
    # p*u + q*v = 1 -> p*(-v) - q*(-u)... choose (r0, s0) = (-v, u): p*u - q*(-v)?
    # Want p*s - q*r = 1: take r0 = -v, s0 = u.
    for sign in (1, -1):
        r0, s0 = -sign * v, sign * u
        # shift into the box along (p, q)
        for k in _k_range(r0, p, s0, q, box):
            r, s = r0 + k * p, s0 + k * q
            if abs(r) <= box and abs(s) <= box:
                yield normalize_slope(r, s)


def _k_range(r0: int, p: int, s0: int, q: int, box: int):
    lo, hi = -4 * box, 4 * box
    if p:
        lo = max(lo, -(box + abs(r0)) // abs(p) - 1)
        hi = min(hi, (box + abs(r0)) // abs(p) + 1)
    if q:
        lo = max(lo, -(box + abs(s0)) // abs(q) - 1)
        hi = min(hi, (box + abs(s0)) // abs(q) + 1)
    return range(lo, hi + 1)
