"""Widest-cylinder markings along the diagonal flow.

At any flow time the surface carries only finitely many flat cylinders
wider than a given threshold, because width times circumference equals
the cylinder's area share.  The widest one marks the large-scale
geometry the way the shortest curve marks the systole.
"""

from __future__ import annotations

from .curves import FlatCurve
from .cylinders import Cylinder, cylinders_in_direction
from .errors import DomainError, NotTightenableError, SurfaceMismatchError
from .extremal import cylinder_of
from .flow import FlowPoint
from .forms import DeformedLength
from .saddles import admissible_directions

_CUSHION = 1e-9


class WideCurve:
    """The widest flat cylinder at one flow time, with target bookkeeping.

    ``achieved_delta`` caps the requested target by the width actually
    available; ``below_target`` records that the cap was active.
    """

    __slots__ = ("cylinder", "t", "width", "target", "achieved_delta", "below_target")

    def __init__(self, cylinder: Cylinder, t, target):
        self.cylinder = cylinder
        self.t = t
        self.width = cylinder.width().value(t)
        self.target = float(target)
        self.achieved_delta = min(self.width, self.target)
        self.below_target = self.width < self.target

    @property
    def curve(self):
        return self.cylinder.core

    @property
    def kind(self) -> str:
        return "flat-cylinder"

    def id_string(self) -> str:
        return self.cylinder.id_string()

    def __repr__(self):
        return (
            f"WideCurve({self.id_string()}, width={self.width:.6g}, "
            f"target={self.target:.6g})"
        )


def annulus_width(curve: FlatCurve, P: FlowPoint) -> float:
    """Width at time P.t of the widest annulus around the curve's geodesic.

    Flat cylinder height plus expanding collars beyond its boundaries.
    On square-tiled surfaces the boundaries pass through cone points, so
    the collar terms vanish and the cylinder height is the whole width.
    Classes without a straight geodesic get a degenerate annulus: 0.0.
    """
    if curve.surface != P.surface:
        raise SurfaceMismatchError("curve does not live on the flow point's surface")
    try:
        cyl = cylinder_of(curve)
    except NotTightenableError:
        return 0.0
    return cyl.width().value(P.t)


def _preference(a: Cylinder, b: Cylinder, t) -> int:
    """Positive when a beats b: wider, then shorter, then lower (rise, run)."""
    s = a.width().cmp(b.width(), t)
    if s:
        return s
    s = b.circumference().cmp(a.circumference(), t)
    if s:
        return s
    ka = (a.direction[1], a.direction[0])
    kb = (b.direction[1], b.direction[0])
    if ka != kb:
        return 1 if ka < kb else -1
    if a.index != b.index:
        return 1 if a.index < b.index else -1
    return 0


def widest_cylinder(P: FlowPoint, bound_cap=None) -> Cylinder:
    """Cylinder of maximal width at flow time P.t.

    A cylinder in a direction of deformed length lam has width at most
    1/lam on the unit-area surface, so once the census covers every
    direction shorter than 1/best_width the maximum is certain.  Ties
    are broken toward smaller circumference, then lexicographically
    smaller (rise, run).  bound_cap limits the saddle-connection census
    length; exceeding it before certification is a domain error.
    """
    n = P.surface.n
    t = P.t
    axis = max(
        DeformedLength.from_holonomy(1, 0, n).value(t),
        DeformedLength.from_holonomy(0, 1, n).value(t),
    )
    bound = axis * (1 + _CUSHION)
    best = None
    best_w = 0.0
    while True:
        dirs = admissible_directions(P, bound)
        lam2 = {
            d: DeformedLength.from_holonomy(d[0], d[1], n).squared().value(t)
            for d in dirs
        }
        for d in sorted(dirs, key=lambda d: lam2[d]):
            if best is not None and lam2[d] * best_w * best_w > 1 + _CUSHION:
                break
            for cyl in cylinders_in_direction(P.surface, d):
                if best is None or _preference(cyl, best, t) > 0:
                    best = cyl
                    best_w = cyl.width().value(t)
        if best is not None and bound * bound * best_w * best_w >= 1 + 2 * _CUSHION:
            return best
        bound *= 2
        if bound_cap is not None and bound > float(bound_cap):
            raise DomainError(
                "saddle-connection length budget exhausted before the "
                "widest cylinder was certified"
            )


def mark_widest(P: FlowPoint, delta, sc_bound=None) -> WideCurve:
    """Widest-cylinder marking at P against the width target delta."""
    if not float(delta) > 0:
        raise DomainError("width target must be positive")
    return WideCurve(widest_cylinder(P, sc_bound), P.t, delta)
