"""Flat cylinders of a square-tiled surface in a rational direction.

For a primitive direction (p, q) with p, q > 0, cut every left edge at
heights k/p.  The first-return map of the straight-line flow permutes the
resulting n*p intervals by the integer formula

    (s, k)  ->  (right(top^((k+q)//p)(s)), (k+q) mod p),

and every cycle of that permutation is one maximal cylinder: all cutting
heights lie on separatrices because each corner emits one, its crossings
with left edges land exactly on the k/p grid, and the n separatrices
together cover all n*p grid points.  A cycle of length L has winding
j = L/p around the direction, period vector j*(p, q), and area j in
square units.  Axis directions reduce to the same formula after
transposing, and directions with negative slope reduce to it after a
horizontal flip.
"""

from __future__ import annotations

from fractions import Fraction

from .curves import FlatCurve, canonical_direction
from .errors import DomainError
from .forms import DeformedLength, FlowModulus, FlowWidth, GrowShrinkForm
from .origami import Origami


class Cylinder:
    """One maximal flat cylinder in a rational direction."""

    __slots__ = ("surface", "direction", "winding", "intervals", "core", "index")

    def __init__(self, surface: Origami, direction, winding: int, intervals, core: FlatCurve):
        self.surface = surface
        self.direction = direction
        self.winding = winding
        self.intervals = intervals
        self.core = core
        self.index = None

    @property
    def holonomy(self) -> tuple[int, int]:
        return (self.winding * self.direction[0], self.winding * self.direction[1])

    @property
    def area_fraction(self) -> Fraction:
        """Share of the unit-area surface taken by this cylinder."""
        return Fraction(self.winding, self.surface.n)

    def circumference(self) -> DeformedLength:
        hx, hy = self.holonomy
        return DeformedLength.from_holonomy(hx, hy, self.surface.n)

    def circ_form(self) -> GrowShrinkForm:
        return self.circumference().squared()

    def width(self) -> FlowWidth:
        return FlowWidth(self.area_fraction, self.circ_form())

    def modulus(self) -> FlowModulus:
        return FlowModulus(self.area_fraction, self.circ_form())

    def reciprocal_modulus_form(self) -> GrowShrinkForm:
        return self.modulus().reciprocal_form()

    def is_slim(self, rho, t) -> bool:
        """True when the modulus stays below rho at flow time t."""
        return self.modulus().cmp_rational(rho, t) < 0

    def id_string(self) -> str:
        p, q = self.direction
        return f"{p}:{q}:{self.index}"

    def __repr__(self):
        return (
            f"Cylinder(dir={self.direction}, winding={self.winding}, "
            f"area={self.winding}/{self.surface.n})"
        )


def _transposed(surface: Origami) -> Origami:
    return Origami(
        [i + 1 for i in surface.top], [i + 1 for i in surface.right]
    )


def _flipped(surface: Origami) -> Origami:
    return Origami(
        [i + 1 for i in surface.right_inv], [i + 1 for i in surface.top]
    )


def _swap_xy(curve_segments):
    return [
        (sq, (a[1], a[0]), (b[1], b[0])) for sq, a, b in curve_segments
    ]


def _mirror_x(curve_segments):
    return [
        (sq, (1 - a[0], a[1]), (1 - b[0], b[1])) for sq, a, b in curve_segments
    ]


def _cylinders_first_quadrant(surface: Origami, p: int, q: int):
    """Cycles of the interval permutation for p > 0, q >= 0."""
    n = surface.n
    right = surface.right
    top = surface.top
    # Precompute top^e for the two exponents that occur.
    m_lo = q // p
    powers = {}
    for e in {m_lo, m_lo + 1, (p - 1 + q) // p}:
        img = list(range(n))
        for _ in range(e):
            img = [top[s] for s in img]
        powers[e] = img

    def step(s, k):
        m = (k + q) // p
        return right[powers[m][s]], (k + q) % p

    seen = [[False] * p for _ in range(n)]
    cycles = []
    for s0 in range(n):
        for k0 in range(p):
            if seen[s0][k0]:
                continue
            cyc = []
            s, k = s0, k0
            while not seen[s][k]:
                seen[s][k] = True
                cyc.append((s, k))
                s, k = step(s, k)
            cycles.append(cyc)
    return cycles


def cylinders_in_direction(surface: Origami, direction) -> list[Cylinder]:
    """All maximal cylinders in the given rational direction.

    Cylinders come back sorted by (winding, core segments) so the order is
    reproducible; index i is stored on each cylinder.
    """
    p, q = canonical_direction(*direction)

    if p == 0:  # vertical: transpose to (1, 0)
        t_cyls = cylinders_in_direction(_transposed(surface), (q, 0))
        out = []
        for c in t_cyls:
            core = FlatCurve(surface, _swap_xy(c.core.segments))
            out.append(Cylinder(surface, (0, q), c.winding, c.intervals, core))
        return _ordered(out)

    if p < 0:  # negative slope: flip horizontally to (-p, q)
        f_cyls = cylinders_in_direction(_flipped(surface), (-p, q))
        out = []
        for c in f_cyls:
            core = FlatCurve(surface, _mirror_x(c.core.segments))
            out.append(Cylinder(surface, (p, q), c.winding, c.intervals, core))
        return _ordered(out)

    cycles = _cylinders_first_quadrant(surface, p, q)
    out = []
    for cyc in cycles:
        if len(cyc) % p:
            raise DomainError(f"interval cycle length {len(cyc)} not divisible by {p}")
        j = len(cyc) // p
        s0, k0 = min(cyc)
        start = (Fraction(0), Fraction(2 * k0 + 1, 2 * p))
        core = FlatCurve.closed_from_ray(
            surface, s0, start, (p, q), max_steps=j * (p + q) + 4
        )
        out.append(Cylinder(surface, (p, q), j, tuple(cyc), core))
    total = sum(c.winding for c in out)
    if total != surface.n:
        raise DomainError(f"cylinder areas sum to {total}, expected {surface.n}")
    return _ordered(out)


def _ordered(cyls: list[Cylinder]) -> list[Cylinder]:
    cyls.sort(key=lambda c: (c.winding, sorted(c.core.segments)))
    for i, c in enumerate(cyls):
        c.index = i
    return cyls


def horizontal_cylinders(surface: Origami) -> list[Cylinder]:
    return cylinders_in_direction(surface, (1, 0))


def vertical_cylinders(surface: Origami) -> list[Cylinder]:
    return cylinders_in_direction(surface, (0, 1))


def core_curves(surface: Origami) -> tuple[FlatCurve, FlatCurve]:
    """Mid-height and mid-width core circuits of the two foliations.

    One-cylinder surfaces have exactly one cylinder each way, so the
    pair is canonical; the cores cross once per square.
    """
    return horizontal_cylinders(surface)[0].core, vertical_cylinders(surface)[0].core
