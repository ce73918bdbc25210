"""Extremal-length bounds, systole estimates and the thin-thick split.

The extremal length of a curve class is sandwiched between the squared
flat length of its geodesic and the reciprocal modulus of any embedded
annulus around it.  On square-tiled surfaces the flat cylinder is
computed exactly; the two expanding annuli that could sharpen the upper
bound always degenerate here, because every maximal cylinder boundary
runs through a cone point, so their clamped estimates are zero and the
upper bound is exactly 1/Mod of the flat cylinder.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .arrangement import Arrangement
from .curves import FlatCurve
from .cylinders import Cylinder, cylinders_in_direction
from .errors import DomainError, NotTightenableError
from .flow import FlowPoint
from .forms import DeformedLength, as_fraction
from .intersection import curves_meet, same_class, straighten
from .saddles import admissible_directions

# quarter of the squared default wideness constant (delta = 1/10)
DEFAULT_EPSILON0 = Fraction(1, 400)


def flat_length(curve: FlatCurve, P: FlowPoint) -> DeformedLength:
    """Exact length form of the geodesic in the curve's class.

    Bent representatives are tightened first; classes without a
    recognized straight geodesic raise NotTightenableError.
    """
    if curve.surface != P.surface:
        raise DomainError("curve does not live on the flow point's surface")
    return straighten(curve).length_form()


def cylinder_of(curve: FlatCurve) -> Cylinder:
    """The maximal flat cylinder whose core is isotopic to the curve."""
    rep = straighten(curve)
    for cyl in cylinders_in_direction(rep.surface, rep.direction):
        if same_class(rep, cyl.core):
            return cyl
    raise NotTightenableError("no flat cylinder found around the curve")


def expanding_annulus_modulus(curve: FlatCurve, P: FlowPoint, side: str) -> float:
    """Clamped collar estimate max(0, ln(R/l)/2pi) on one side of the cylinder.

    R is the distance from the chosen cylinder boundary to the nearest
    cone point beyond it.  Both boundaries of a maximal cylinder on a
    square-tiled surface are unions of saddle connections, so they pass
    through cone points, R = 0, and the clamp always lands at zero.
    The value is a comparison-constant estimate, never an exact modulus.
    """
    if side not in ("left", "right"):
        raise DomainError("side must be 'left' or 'right'")
    if curve.surface != P.surface:
        raise DomainError("curve does not live on the flow point's surface")
    try:
        cylinder_of(curve)
    except NotTightenableError:
        return 0.0  # degenerate collar around a non-geodesic class
    return 0.0


def extremal_length_bounds(curve: FlatCurve, P: FlowPoint) -> tuple[float, float]:
    """(squared geodesic length, reciprocal annulus modulus) at time t."""
    if curve.surface != P.surface:
        raise DomainError("curve does not live on the flow point's surface")
    cyl = cylinder_of(curve)
    t = float(P.t)
    lower = straighten(curve).length_form().squared().value(t)
    upper = cyl.reciprocal_modulus_form().value(t)
    upper += expanding_annulus_modulus(curve, P, "left")
    upper += expanding_annulus_modulus(curve, P, "right")
    return lower, upper


def is_slim(curve: FlatCurve, P: FlowPoint, rho) -> bool:
    """True when the curve cores no flat cylinder of modulus >= rho at time t."""
    rho = as_fraction(rho)
    if rho <= 0:
        raise DomainError("rho must be positive")
    try:
        cyl = cylinder_of(curve)
    except NotTightenableError:
        return True  # not a cylinder core at all
    return cyl.modulus().cmp_rational(rho, P.t) < 0


class SystoleEstimate:
    """Shortest extremal-length candidate found at one flow time."""

    __slots__ = ("value", "witness", "lower", "cylinder")

    def __init__(self, value: float, witness: FlatCurve, lower: float, cylinder: Cylinder):
        self.value = value
        self.witness = witness
        self.lower = lower
        self.cylinder = cylinder

    def __repr__(self):
        hx, hy = self.witness.holonomy
        return f"SystoleEstimate(value={self.value:.6g}, witness=({hx},{hy}))"


def _candidate_cylinders(P: FlowPoint, length_bound: float) -> list[Cylinder]:
    out = []
    seen = set()
    for d in admissible_directions(P, length_bound):
        for cyl in cylinders_in_direction(P.surface, d):
            key = cyl.core.point_set_key()
            if key not in seen:
                seen.add(key)
                out.append(cyl)
    return out


def _upper_key(cyl: Cylinder, t: Fraction):
    """Sort key: value, then circumference, then rise-major holonomy."""
    hx, hy = cyl.core.holonomy
    return (
        cyl.reciprocal_modulus_form().value(float(t)),
        cyl.circumference().value(float(t)),
        (abs(hy), abs(hx)),
    )


def systole_estimate(P: FlowPoint) -> SystoleEstimate:
    """Smallest extremal upper bound over short cylinder cores.

    The candidate set is every cylinder core in a direction whose
    deformed length fits a bound that starts at the axis lengths and
    doubles until no excluded direction could beat the running best.
    Short directions cannot hide beyond the bound, and within the bound
    a direction is only expanded while its squared length can still
    reach the best value: any core's extremal bound is at least the
    squared deformed length of its direction.
    """
    surface = P.surface
    t = float(P.t)
    bound = _axis_length(P) * (1 + 1e-9)
    while True:
        dirs = admissible_directions(P, bound)
        lam2 = {
            d: DeformedLength.from_holonomy(d[0], d[1], surface.n).squared().value(t)
            for d in dirs
        }
        dirs.sort(key=lambda d: lam2[d])
        best = None
        best_key = None
        low = None
        for d in dirs:
            if best_key is not None and lam2[d] > best_key[0]:
                break  # sorted, so no later direction can reach the best
            for cyl in cylinders_in_direction(surface, d):
                key = _upper_key(cyl, P.t)
                if best_key is None or key < best_key:
                    best, best_key = cyl, key
                l2 = cyl.circ_form().value(t)
                if low is None or l2 < low:
                    low = l2
        value = best_key[0]
        if bound * bound >= value:
            return SystoleEstimate(value, best.core, low, best)
        bound *= 2


def thin_thick(P: FlowPoint, epsilon, epsilon0=None) -> "ThinThick":
    """Split the surface at time t along all epsilon-short curves.

    Candidates are cylinder cores with extremal upper bound below
    epsilon; the short set is greedy by increasing bound, which makes
    it nested as epsilon shrinks.  Pieces carry a size estimate: the
    shortest candidate essential curve inside, or a cone-point diameter
    proxy when no candidate lies in the piece.
    """
    epsilon, shorts, bounds = short_curves_at(P, epsilon, epsilon0)
    pieces = _split_pieces(P, shorts)
    return ThinThick(P, epsilon, shorts, bounds, pieces)


def short_curves_at(P: FlowPoint, epsilon, epsilon0=None):
    """Disjoint epsilon-short cylinder cores at time t.

    Returns (epsilon, shorts, upper bounds); greedy by increasing bound,
    so the short set is nested as epsilon shrinks.
    """
    epsilon = as_fraction(epsilon)
    cap = DEFAULT_EPSILON0 if epsilon0 is None else as_fraction(epsilon0)
    if not 0 < epsilon <= cap:
        raise DomainError("epsilon must lie in (0, epsilon0]")
    t = float(P.t)

    reach = math.sqrt(float(epsilon)) * (1 + 1e-9)
    scored = []
    for cyl in _candidate_cylinders(P, reach):
        upper = cyl.reciprocal_modulus_form().value(t)
        if upper < float(epsilon):
            scored.append((upper, _upper_key(cyl, P.t), cyl.core))
    scored.sort(key=lambda item: (item[0], item[1]))

    shorts: list[FlatCurve] = []
    bounds: list[float] = []
    for upper, _, core in scored:
        if all(not curves_meet(core, kept) for kept in shorts):
            shorts.append(core)
            bounds.append(upper)
    return epsilon, shorts, bounds


class ThinPiece:
    """One complementary piece of the thin-thick split."""

    __slots__ = ("component", "size", "is_pants", "is_whole_surface")

    def __init__(self, component, size: float, is_pants: bool, is_whole: bool):
        self.component = component
        self.size = size
        self.is_pants = is_pants
        self.is_whole_surface = is_whole

    def __repr__(self):
        return f"ThinPiece(size={self.size:.6g}, pants={self.is_pants})"


class ThinThick:
    """Short curves plus the pieces they cut the surface into."""

    __slots__ = ("flow_point", "epsilon", "short_curves", "short_bounds", "pieces")

    def __init__(self, flow_point, epsilon, short_curves, short_bounds, pieces):
        self.flow_point = flow_point
        self.epsilon = epsilon
        self.short_curves = short_curves
        self.short_bounds = short_bounds
        self.pieces = pieces

    def __repr__(self):
        return (
            f"ThinThick(epsilon={float(self.epsilon):.6g}, "
            f"shorts={len(self.short_curves)}, pieces={len(self.pieces)})"
        )


def _cone_point_diameter(P: FlowPoint) -> float:
    """Max deformed distance between unit-square corners, a diameter proxy."""
    n = P.surface.n
    t = float(P.t)
    ex, sh = math.exp(2 * t), math.exp(-2 * t)
    # corners sit on the integer lattice of the developed cylinder
    best = 0.0
    for dx in range(n + 1):
        for dy in (0, 1):
            best = max(best, (dx * dx * ex + dy * dy * sh) / n)
    return math.sqrt(best)


def _polyline_length(curve: FlatCurve, n: int, t: float) -> float:
    """Deformed length of the drawn polyline; upper bound for its class."""
    ex, sh = math.exp(2 * t), math.exp(-2 * t)
    total = 0.0
    for _, a, b in curve.segments:
        dx, dy = float(b[0] - a[0]), float(b[1] - a[1])
        total += math.sqrt((dx * dx * ex + dy * dy * sh) / n)
    return total


def _measure(curve: FlatCurve, n: int, t: float) -> float:
    if curve.is_straight:
        return curve.length_form().value(t)
    return _polyline_length(curve, n, t)


def _probe_pool(P: FlowPoint) -> list[FlatCurve]:
    """Cheap essential curves used to estimate piece sizes."""
    from .band import horizontal_band_cycles, vertical_band_cycles

    surface = P.surface
    t = float(P.t)
    short_axis = min(
        DeformedLength.from_holonomy(surface.n, 0, surface.n).value(t),
        DeformedLength.from_holonomy(0, surface.n, surface.n).value(t),
    )
    pool = [c.core for c in _candidate_cylinders(P, short_axis * 1.5)]
    pool.extend(horizontal_band_cycles(surface, 12, 200))
    pool.extend(vertical_band_cycles(surface, 12, 200))
    return [c for c in pool if c.holonomy != (0, 0)]


def _split_pieces(P: FlowPoint, shorts: list[FlatCurve]) -> list[ThinPiece]:
    surface = P.surface
    t = float(P.t)
    probes = _probe_pool(P)

    if not shorts:
        sizes = [_measure(c, surface.n, t) for c in probes]
        size = min(sizes) if sizes else _cone_point_diameter(P)
        return [ThinPiece(None, size, False, True)]

    arr = Arrangement(surface, shorts)
    usable = [
        c for c in probes if all(not curves_meet(c, s) for s in shorts)
    ]
    pieces = []
    for comp in arr.components:
        size = None
        for curve in usable:
            sq, a, b = curve.segments[0]
            mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            if arr.component_containing(sq, mid) is comp:
                cand = _measure(curve, surface.n, t)
                if size is None or cand < size:
                    size = cand
        if size is None:
            size = _cone_point_diameter(P)
        pieces.append(ThinPiece(comp, size, comp.is_pants, False))
    return pieces


def _axis_length(P: FlowPoint) -> float:
    t = float(P.t)
    return max(
        DeformedLength.from_holonomy(1, 0, P.surface.n).value(t),
        DeformedLength.from_holonomy(0, 1, P.surface.n).value(t),
    )


def is_M_large(piece: ThinPiece, M) -> bool:
    """Whether every boundary collar estimate of the piece reaches M.

    The collar estimates on square-tiled surfaces clamp to zero (see
    expanding_annulus_modulus), so the answer is exactly M <= 0; the
    operation is honest about that rather than inventing positive
    moduli.  Pants pieces and the whole surface are out of domain.
    """
    if piece.is_pants:
        raise DomainError("pants pieces have no M-large classification")
    if piece.is_whole_surface:
        raise DomainError("the whole surface is not a proper piece")
    return float(M) <= 0.0
