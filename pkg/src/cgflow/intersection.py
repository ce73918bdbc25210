"""Crossing numbers, isotopy tests and coarse curve-graph distances.

Straight closed geodesics on a translation surface are automatically in
minimal position: a complementary bigon would need total turning 2π
from just two corners, which straight sides cannot supply.  So crossing
counts between straight representatives are isotopy invariants, and the
exact arithmetic reduces to locating chord levels inside each square.

Bent curves are handled by recognizing a straight geodesic in the same
class (a cylinder core in the direction of the period vector) and
counting on that.  When no such representative is recognized the
operations refuse with NotTightenableError rather than guess.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .arrangement import Arrangement, segment_meet
from .band import horizontal_band_cycles, vertical_band_cycles
from .curves import FlatCurve, canonical_direction
from .cylinders import cylinders_in_direction, horizontal_cylinders, vertical_cylinders
from .errors import (
    DomainError,
    NotTightenableError,
    ProjectionUndefinedError,
    SurfaceMismatchError,
    UnsupportedSurfaceError,
)
from .farey import farey_distance, normalize_slope

# caps the combinatorial cycle harvest per band family during searches
CYCLE_HARVEST_LIMIT = 4000


def _require_same_surface(a: FlatCurve, b: FlatCurve):
    if a.surface is not b.surface and a.surface != b.surface:
        raise SurfaceMismatchError("curves live on different surfaces")


def curves_meet(a: FlatCurve, b: FlatCurve) -> bool:
    """Whether the drawn representatives share at least one point."""
    _require_same_surface(a, b)
    per_b = b.per_square()
    for sq, segs in a.per_square().items():
        others = per_b.get(sq)
        if not others:
            continue
        for _, a1, a2 in segs:
            for _, b1, b2 in others:
                if segment_meet(a1, a2, b1, b2)[0] != "none":
                    return True
    return False


def same_class(a: FlatCurve, b: FlatCurve) -> bool:
    """Whether the two embedded curves are isotopic.

    Equal point sets are isotopic, and disjoint curves are isotopic
    exactly when they cobound an unmarked annulus.  Curves that cross
    are reported as distinct; a crossing drawing of a single class is
    outside what this test recognizes.
    """
    _require_same_surface(a, b)
    if a.same_curve(b):
        return True
    if curves_meet(a, b):
        return False
    for comp in Arrangement(a.surface, [a, b]).components:
        if comp.chi != 0 or comp.punctures != 0 or comp.boundary_circles != 2:
            continue
        if set(comp.circle_curves) == {frozenset({0}), frozenset({1})}:
            return True
    return False


def is_essential(curve: FlatCurve) -> bool:
    """Neither null-homotopic nor parallel to a marked point."""
    if curve.holonomy != (0, 0):
        return True
    return not any(
        comp.is_disk or comp.is_once_punctured_disk
        for comp in Arrangement(curve.surface, [curve]).components
    )


def straighten(curve: FlatCurve) -> FlatCurve:
    """A straight closed geodesic isotopic to the given curve.

    Straight input comes back unchanged.  A bent curve is matched
    against the cylinder cores in its period direction; curves whose
    geodesic would pass through cone points are not recognized.
    """
    if curve.is_straight:
        return curve
    hx, hy = curve.holonomy
    if (hx, hy) == (0, 0):
        raise NotTightenableError("zero-period curve has no straight closed representative")
    for cyl in cylinders_in_direction(curve.surface, canonical_direction(hx, hy)):
        if same_class(curve, cyl.core):
            return cyl.core
    raise NotTightenableError("no straight geodesic recognized in this curve's class")


def _count_crossings(a: FlatCurve, b: FlatCurve) -> int:
    """Exact crossing count of two straight curves in different directions.

    phi(x, y) = p*y - q*x with (p, q) = b's direction is constant on
    every b-chord and strictly monotone along every a-chord.  Counting
    levels in the half-open interval from entry (excluded) to exit
    (included) charges each seam crossing to exactly one square.
    """
    p, q = b.direction
    levels: dict = {}
    for sq, segs in b.per_square().items():
        levels[sq] = sorted(p * s[1][1] - q * s[1][0] for s in segs)
    total = 0
    for sq, segs in a.per_square().items():
        vals = levels.get(sq)
        if not vals:
            continue
        for _, start, end in segs:
            phi_s = p * start[1] - q * start[0]
            phi_e = p * end[1] - q * end[0]
            if phi_e > phi_s:
                total += bisect_right(vals, phi_e) - bisect_right(vals, phi_s)
            else:
                total += bisect_left(vals, phi_s) - bisect_left(vals, phi_e)
    return total


def geometric_intersection(a: FlatCurve, b: FlatCurve) -> int:
    """Minimal number of transverse crossings over the isotopy classes."""
    _require_same_surface(a, b)
    if a.same_curve(b):
        return 0
    sa = straighten(a)
    sb = straighten(b)
    if sa.same_curve(sb):
        return 0
    if sa.direction == sb.direction:
        return 0  # parallel geodesics are disjoint or coincide
    return _count_crossings(sa, sb)


def fills(a: FlatCurve, b: FlatCurve) -> bool:
    """Whether the pair cuts the surface into disks and once-marked disks."""
    _require_same_surface(a, b)
    if a.surface.surface_sig.complexity < 2:
        raise UnsupportedSurfaceError(
            "filling only characterizes distance three when complexity is at least 2"
        )
    if not is_essential(a) or not is_essential(b):
        raise DomainError("filling is only defined for essential curves")
    if same_class(a, b):
        raise DomainError("filling needs two distinct isotopy classes")
    arr = Arrangement(a.surface, [a, b])
    if arr.find_bigon() is not None:
        raise DomainError("drawing bounds a bigon, so it is not in minimal position")
    return arr.is_filling()


def _slope(curve: FlatCurve):
    hx, hy = curve.holonomy
    return normalize_slope(hy, hx)


def distance_geq3(a: FlatCurve, b: FlatCurve) -> bool:
    """Whether the curve-graph distance of the two classes is at least 3."""
    _require_same_surface(a, b)
    if same_class(a, b):
        return False
    if a.surface.surface_sig.complexity == 1:
        return farey_distance(_slope(a), _slope(b)) >= 3
    return fills(a, b)


@dataclass(frozen=True)
class DistanceBound:
    """Coarse curve-graph distance; upper is None when no witness was found."""

    lower: int
    upper: int | None

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise DomainError("distance bounds are inconsistent")


def _encoding(curve: FlatCurve):
    return tuple((sq, a[0], a[1], b[0], b[1]) for sq, a, b in curve.segments)


def _candidate_pool(surface, budget: int) -> list[FlatCurve]:
    """Deterministic pool of essential curves with at most `budget` segments."""
    pool: list[FlatCurve] = []
    for cyl in horizontal_cylinders(surface) + vertical_cylinders(surface):
        pool.append(cyl.core)
    pool.extend(horizontal_band_cycles(surface, budget, CYCLE_HARVEST_LIMIT))
    pool.extend(vertical_band_cycles(surface, budget, CYCLE_HARVEST_LIMIT))
    out: list[FlatCurve] = []
    seen = set()
    for curve in pool:
        if len(curve.segments) > budget:
            continue
        key = curve.point_set_key()
        if key in seen:
            continue
        seen.add(key)
        if curve.holonomy != (0, 0) or is_essential(curve):
            out.append(curve)
    out.sort(key=lambda c: (len(c.segments), _encoding(c)))
    return out


def _witness_search(a: FlatCurve, b: FlatCurve, max_depth: int, budget: int):
    """Length of a shortest found path of pairwise-disjoint hops, or None."""
    if max_depth < 2:
        return None
    candidates = _candidate_pool(a.surface, budget)
    frontier = [a]
    seen = {a.point_set_key()}
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        layer: list[FlatCurve] = []
        for current in frontier:
            for cand in candidates:
                key = cand.point_set_key()
                if key in seen or curves_meet(current, cand):
                    continue
                if cand.same_curve(b):
                    return depth
                if depth + 1 <= max_depth and not curves_meet(cand, b):
                    return depth + 1
                seen.add(key)
                layer.append(cand)
        frontier = layer
    return None


def bounded_distance_search(
    a: FlatCurve, b: FlatCurve, max_depth: int = 3, budget: int = 24
) -> DistanceBound:
    """Certified lower bound plus witness-path upper bound for d(a, b).

    The lower bound climbs the ladder equal / disjoint / crossing /
    filling.  The upper bound comes from an explicit path through
    candidate curves of bounded combinatorial size, enumerated by
    increasing segment count with lexicographic tie-breaking; when no
    path is found within max_depth the upper bound is unknown (None).
    """
    _require_same_surface(a, b)
    if a.surface.surface_sig.complexity < 2:
        raise UnsupportedSurfaceError("distance search needs complexity at least 2")
    if max_depth < 1:
        raise DomainError("max_depth must be at least 1")
    if budget <= 0:
        raise DomainError("budget must be positive")
    if same_class(a, b):
        return DistanceBound(0, 0)
    if not curves_meet(a, b):
        return DistanceBound(1, 1)
    lower = 0
    try:
        sa, sb = straighten(a), straighten(b)
    except NotTightenableError:
        # classes not recognized; bounds fall back to the drawings
        sa, sb = a, b
    else:
        if sa.same_curve(sb):
            return DistanceBound(0, 0)
        if not curves_meet(sa, sb):
            return DistanceBound(1, 1)
        lower = 2
        try:
            if fills(sa, sb):
                lower = 3
        except DomainError:
            pass
    upper = _witness_search(sa, sb, max_depth, budget)
    return DistanceBound(lower, upper)


def annular_twist_bound(core: FlatCurve, a: FlatCurve, b: FlatCurve) -> int:
    """Coarse lower-order proxy for the annular projection distance.

    floor(i(a,b) / (i(a,core) * i(b,core))), accurate only up to a
    uniform additive error; informational, never a certificate.
    """
    _require_same_surface(core, a)
    _require_same_surface(core, b)
    ia = geometric_intersection(a, core)
    ib = geometric_intersection(b, core)
    if ia == 0 or ib == 0:
        raise ProjectionUndefinedError(
            "projection to the annulus is empty for a curve missing its core"
        )
    return geometric_intersection(a, b) // (ia * ib)
