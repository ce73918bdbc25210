"""Complete saddle-connection census below a flowed length bound.

Every corner of the tiling is a marked point, so a straight ray leaving
a corner in a primitive direction (p, q) reaches its first corner after
displacement exactly (p, q): developed to the plane, tiling corners are
precisely the integer points.  Saddle connections therefore all carry
primitive holonomy, and in a fixed direction there are exactly n of
them, one per outgoing corner germ:

* p > 0, q > 0: the germ enters a square through its (0,0) corner;
* p < 0, q > 0: through the (1,0) corner;
* (1,0) and (0,1): the n bottom edges, or the n left edges.

Enumerating directions inside the exact length bound and tracing one
ray per square lists every connection once, up to orientation reversal.
"""

from __future__ import annotations

from fractions import Fraction
from math import exp, gcd, sqrt

from .curves import trace_ray
from .errors import DomainError
from .flow import FlowPoint
from .forms import DeformedLength, as_fraction
from .origami import Origami

ZERO = Fraction(0)
ONE = Fraction(1)


def _edge_of(p) -> str:
    x, y = p
    if x == 1:
        return "right"
    if x == 0:
        return "left"
    if y == 1:
        return "top"
    return "bottom"


class SaddleConnection:
    """A straight segment between marked points, vertex-free inside."""

    __slots__ = ("surface", "holonomy", "start", "end", "crossings")

    def __init__(self, surface: Origami, holonomy, start, end, crossings):
        if holonomy == (0, 0):
            raise DomainError("saddle connection needs nonzero holonomy")
        self.surface = surface
        self.holonomy = holonomy
        self.start = start  # (square, corner point)
        self.end = end
        self.crossings = tuple(crossings)  # (square, edge name) per crossing

    @property
    def start_class(self) -> int:
        sq, (cx, cy) = self.start
        return self.surface.corner_class(sq, int(cx), int(cy))

    @property
    def end_class(self) -> int:
        sq, (cx, cy) = self.end
        return self.surface.corner_class(sq, int(cx), int(cy))

    def length_form(self) -> DeformedLength:
        hx, hy = self.holonomy
        return DeformedLength.from_holonomy(hx, hy, self.surface.n)

    def __repr__(self):
        return (
            f"SaddleConnection(holonomy={self.holonomy}, "
            f"start={self.start}, crossings={len(self.crossings)})"
        )


def admissible_directions(P: FlowPoint, L) -> list[tuple[int, int]]:
    """Primitive directions (q > 0, plus (1,0)) with time-t length ≤ L.

    The bound is decided exactly on the two-coefficient form; the float
    box only limits the enumeration and is padded against roundoff.
    """
    if not L > 0:
        raise DomainError("length bound must be positive")
    L = as_fraction(L)
    n = P.surface.n
    t = P.t
    root = sqrt(n) * float(L) * (1 + 1e-9)
    p_max = int(root * exp(-float(t))) + 1
    q_max = int(root * exp(float(t))) + 1

    def fits(p, q):
        return DeformedLength.from_holonomy(p, q, n).cmp_rational(L, t) <= 0

    out = []
    if fits(1, 0):
        out.append((1, 0))
    if fits(0, 1):
        out.append((0, 1))
    for q in range(1, q_max + 1):
        for p in range(1, p_max + 1):
            if gcd(p, q) != 1:
                continue
            if fits(p, q):
                out.append((p, q))
            if fits(-p, q):
                out.append((-p, q))
    return out


def _axis_connections(surface: Origami, direction) -> list[SaddleConnection]:
    out = []
    for s in range(surface.n):
        if direction == (1, 0):
            end = (s, (ONE, ZERO))
        else:
            end = (s, (ZERO, ONE))
        out.append(SaddleConnection(surface, direction, (s, (ZERO, ZERO)), end, ()))
    return out


def _traced_connections(surface: Origami, direction) -> list[SaddleConnection]:
    p, q = direction
    corner = (ZERO, ZERO) if p > 0 else (ONE, ZERO)
    max_steps = abs(p) + q + 2
    out = []
    for s in range(surface.n):
        segments, outcome = trace_ray(surface, s, corner, direction, max_steps)
        if outcome[0] != "vertex":
            raise DomainError(
                f"corner ray in direction {direction} failed to reach a corner"
            )
        hx = sum(b[0] - a[0] for _, a, b in segments)
        hy = sum(b[1] - a[1] for _, a, b in segments)
        if (int(hx), int(hy)) != direction:
            raise DomainError(
                f"corner ray in direction {direction} hit a corner at ({hx}, {hy})"
            )
        crossings = [(sq, _edge_of(b)) for sq, _, b in segments[:-1]]
        out.append(
            SaddleConnection(
                surface, direction, (s, segments[0][1]), (outcome[1], outcome[2]),
                crossings,
            )
        )
    return out


def enumerate_saddle_connections(P: FlowPoint, L) -> list[SaddleConnection]:
    """All saddle connections of time-t length ≤ L, one per orientation pair.

    A bound below the shortest connection gives an empty list.
    """
    out = []
    for direction in admissible_directions(P, L):
        if direction in ((1, 0), (0, 1)):
            out.extend(_axis_connections(P.surface, direction))
        else:
            out.extend(_traced_connections(P.surface, direction))
    return out


def count_saddle_connections(P: FlowPoint, L) -> int:
    return len(enumerate_saddle_connections(P, L))
