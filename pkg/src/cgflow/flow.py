"""A square-tiled surface at one moment of the diagonal flow.

The flow at time t stretches horizontals by e^t and shrinks verticals
by e^(-t), then everything is rescaled by 1/sqrt(n) so the total flat
area stays exactly 1.  Times are stored as exact fractions; all length
comparisons go through the exact two-coefficient forms.
"""

from __future__ import annotations

from fractions import Fraction

from .forms import DeformedLength, as_fraction
from .origami import Origami


class FlowPoint:
    """An origami together with a flow time."""

    __slots__ = ("surface", "t")

    def __init__(self, surface: Origami, t=0):
        self.surface = surface
        self.t = as_fraction(t)

    def at(self, t) -> "FlowPoint":
        """The same surface at another flow time."""
        return FlowPoint(self.surface, t)

    @property
    def scale_squared(self) -> Fraction:
        """Square of the area normalization factor 1/sqrt(n)."""
        return Fraction(1, self.surface.n)

    def length_form(self, hx: int, hy: int) -> DeformedLength:
        """Length form of a straight segment with integer holonomy."""
        return DeformedLength.from_holonomy(hx, hy, self.surface.n)

    def __eq__(self, other):
        return (
            isinstance(other, FlowPoint)
            and self.surface == other.surface
            and self.t == other.t
        )

    def __hash__(self):
        return hash((self.surface, self.t))

    def __repr__(self):
        return f"FlowPoint(n={self.surface.n}, t={self.t})"
