"""Curves on a square-tiled surface as exact piecewise-straight paths.

A curve is stored square by square: each piece is a chord of one unit
square with rational endpoints on the square's boundary.  Consecutive
pieces are glued across square edges; marked points (square corners) are
never touched by a curve.  Straight curves (all pieces parallel) are flat
geodesics and carry an exact length form; bent curves are combinatorial
representatives only and refuse length queries.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DomainError, NotTightenableError, SurfaceMismatchError
from .forms import DeformedLength
from .origami import Origami

Point = tuple[Fraction, Fraction]
Segment = tuple[int, Point, Point]

ZERO = Fraction(0)
ONE = Fraction(1)


def canonical_direction(x: int, y: int) -> tuple[int, int]:
    """Primitive vector with y > 0, or (1, 0) for horizontal classes."""
    if x == 0 and y == 0:
        raise DomainError("zero vector has no direction")
    g = gcd(abs(x), abs(y))
    x //= g
    y //= g
    if y < 0 or (y == 0 and x < 0):
        x, y = -x, -y
    return x, y


def _on_boundary(p: Point) -> bool:
    x, y = p
    return x == 0 or x == 1 or y == 0 or y == 1


def _is_corner(p: Point) -> bool:
    x, y = p
    return x in (ZERO, ONE) and y in (ZERO, ONE)


def _in_closed_square(p: Point) -> bool:
    x, y = p
    return 0 <= x <= 1 and 0 <= y <= 1


def glue_forward(surface: Origami, square: int, p: Point):
    """The (square, point) on the other side of the edge containing p.

    p must lie on exactly one edge of the square (not a corner).
    """
    x, y = p
    if x == 1:
        return surface.right[square], (ZERO, y)
    if x == 0:
        return surface.right_inv[square], (ONE, y)
    if y == 1:
        return surface.top[square], (x, ZERO)
    if y == 0:
        return surface.top_inv[square], (x, ONE)
    raise DomainError(f"point {p} is not on a square edge")


def trace_ray(surface: Origami, square: int, point: Point, direction, max_steps: int):
    """Follow the straight line from (square, point) in the given direction.

    Returns (segments, outcome) where outcome is ("closed",) when the ray
    returns exactly to its start, or ("vertex", sq, pt) when it runs into
    a marked point.  The start may itself be a corner (a separatrix).
    Raises DomainError when max_steps squares are crossed first.
    """
    dx, dy = direction
    if dx == 0 and dy == 0:
        raise DomainError("direction must be nonzero")
    x, y = Fraction(point[0]), Fraction(point[1])
    if not _in_closed_square((x, y)):
        raise DomainError(f"start point {point} outside the unit square")
    sq = square
    start = (sq, (x, y))
    segments = []
    for _ in range(max_steps):
        # Exit parameter along each wall the ray moves towards.
        tau = None
        if dx > 0:
            tau = (ONE - x) / dx
        elif dx < 0:
            tau = x / (-dx)
        if dy > 0:
            t2 = (ONE - y) / dy
            tau = t2 if tau is None or t2 < tau else tau
        elif dy < 0:
            t2 = y / (-dy)
            tau = t2 if tau is None or t2 < tau else tau
        if tau is None or tau <= 0:
            raise DomainError(
                f"ray from {point} in direction {direction} does not enter square"
            )
        ex, ey = x + tau * dx, y + tau * dy
        segments.append((sq, (x, y), (ex, ey)))
        if _is_corner((ex, ey)):
            return segments, ("vertex", sq, (ex, ey))
        sq, (x, y) = glue_forward(surface, sq, (ex, ey))
        if (sq, (x, y)) == start:
            return segments, ("closed",)
    raise DomainError(f"ray exceeded {max_steps} square crossings")


class FlatCurve:
    """A closed curve given by exact chords of the squares."""

    __slots__ = ("surface", "segments", "_holonomy", "_per_square", "label")

    def __init__(self, surface: Origami, segments, label: str = ""):
        self.surface = surface
        self.segments = tuple(
            (sq, (Fraction(a[0]), Fraction(a[1])), (Fraction(b[0]), Fraction(b[1])))
            for sq, a, b in segments
        )
        self.label = label
        self._validate()
        self._holonomy = None
        self._per_square = None

    def _validate(self):
        if not self.segments:
            raise DomainError("curve needs at least one segment")
        n = self.surface.n
        for sq, a, b in self.segments:
            if not (0 <= sq < n):
                raise DomainError(f"square index {sq} out of range")
            if a == b:
                raise DomainError("zero-length curve piece")
            if not (_in_closed_square(a) and _in_closed_square(b)):
                raise DomainError("curve piece leaves its square")
            if _is_corner(a) or _is_corner(b):
                raise DomainError("curves may not touch marked points")
            # Both endpoints on one edge would put the piece on the gluing line.
            for coord in (0, 1):
                for val in (ZERO, ONE):
                    if a[coord] == val and b[coord] == val:
                        raise DomainError("curve piece lies along a square edge")
        # Pieces chain up either across a square edge or at an interior
        # bend point of the same square.  Bends exactly on an edge are
        # rejected: move the bend inside so the gluing stays unambiguous.
        k = len(self.segments)
        for i in range(k):
            sq, _, end = self.segments[i]
            nxt_sq, nxt_start, _ = self.segments[(i + 1) % k]
            if _on_boundary(end):
                if glue_forward(self.surface, sq, end) != (nxt_sq, nxt_start):
                    raise DomainError(
                        f"curve pieces {i} and {(i + 1) % k} do not meet"
                    )
            else:
                if (nxt_sq, nxt_start) != (sq, end):
                    raise DomainError(
                        f"curve pieces {i} and {(i + 1) % k} do not meet"
                    )

    @classmethod
    def closed_from_ray(cls, surface: Origami, square: int, point: Point, direction,
                        max_steps: int = 1_000_000, label: str = "") -> "FlatCurve":
        segments, outcome = trace_ray(surface, square, point, direction, max_steps)
        if outcome[0] != "closed":
            raise DomainError(
                f"ray from square {square} at {point} ran into a marked point"
            )
        return cls(surface, segments, label=label)

    # -- geometry ---------------------------------------------------------

    @property
    def holonomy(self) -> tuple[int, int]:
        """Total period vector of the loop; always an integer vector."""
        if self._holonomy is None:
            hx = sum(b[0] - a[0] for _, a, b in self.segments)
            hy = sum(b[1] - a[1] for _, a, b in self.segments)
            if hx.denominator != 1 or hy.denominator != 1:
                raise DomainError("closed curve has non-integral period")
            self._holonomy = (int(hx), int(hy))
        return self._holonomy

    @property
    def is_straight(self) -> bool:
        dirs = set()
        for _, a, b in self.segments:
            v = (b[0] - a[0], b[1] - a[1])
            num_x = v[0].numerator * v[1].denominator
            num_y = v[1].numerator * v[0].denominator
            if num_x == 0 and num_y == 0:
                continue
            g = gcd(abs(num_x), abs(num_y))
            dirs.add((num_x // g, num_y // g))
            if len(dirs) > 1:
                return False
        return len(dirs) == 1

    @property
    def direction(self) -> tuple[int, int]:
        """Canonical primitive direction of a straight curve."""
        if not self.is_straight:
            raise NotTightenableError("curve is not straight")
        return canonical_direction(*self.holonomy)

    def length_form(self) -> DeformedLength:
        """Exact flow-length of a straight closed geodesic.

        The surface is rescaled to unit area, so the squared length is
        (hx^2 e^(2t) + hy^2 e^(-2t)) / n.
        """
        if not self.is_straight:
            raise NotTightenableError(
                "curve has no straight representative with a computable length"
            )
        hx, hy = self.holonomy
        return DeformedLength.from_holonomy(hx, hy, self.surface.n)

    def flat_length(self, t) -> float:
        return self.length_form().value(t)

    def per_square(self) -> dict:
        """Segments grouped by square index."""
        if self._per_square is None:
            out: dict = {}
            for seg in self.segments:
                out.setdefault(seg[0], []).append(seg)
            self._per_square = out
        return self._per_square

    # -- identity ----------------------------------------------------------

    def point_set_key(self) -> frozenset:
        """Unoriented segment set; equal keys mean equal point sets."""
        return frozenset(
            (sq, frozenset((a, b))) for sq, a, b in self.segments
        )

    def same_curve(self, other: "FlatCurve") -> bool:
        if self.surface is not other.surface and self.surface != other.surface:
            raise SurfaceMismatchError("curves live on different surfaces")
        return self.point_set_key() == other.point_set_key()

    def __repr__(self):
        tag = self.label or f"{len(self.segments)} pieces"
        return f"FlatCurve({tag}, holonomy={self.holonomy})"
