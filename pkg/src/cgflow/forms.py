"""Exact values attached to the diagonal flow.

Every quantity this package compares along the flow (flat lengths of
straight curves, cylinder circumferences, widths, moduli, extremal-length
brackets) is built from one shape of function,

    F(t) = grow * e^(2t) + shrink * e^(-2t),

with non-negative rational coefficients.  Lengths are square roots of such
forms, widths are rational / sqrt(form), moduli are rational / form.  Sign
questions about differences of these values therefore reduce to the sign
of a quadratic with rational coefficients evaluated at u = e^(2t).

For rational t != 0 the number e^(2t) is transcendental, so a rational
quadratic that is not identically zero cannot vanish there.  That makes
the comparison below exact: a float fast path answers the easy cases and
interval arithmetic at escalating precision settles the rest, with
guaranteed termination.  At t = 0 everything is rational and is compared
exactly without any numerics.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import iv, mp, mpf

from .errors import DomainError

_MAX_PREC_BITS = 1 << 14
# Relative gap below which the float fast path refuses to decide a sign.
_FLOAT_CUSHION = 1e-9


def as_fraction(x) -> Fraction:
    """Coerce x to an exact Fraction.

    Floats convert exactly (binary expansion), so CLI-provided thresholds
    stay comparable without rounding ambiguity.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite value {x!r}")
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise DomainError(f"cannot interpret {x!r} as an exact rational")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _iv_fraction(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def sign_quadratic_at_exp(a: Fraction, b: Fraction, c: Fraction, t: Fraction) -> int:
    """Sign of a*u**2 + b*u + c at u = e^(2t), for rational a, b, c, t.

    Returns -1, 0, or +1.  Zero occurs only when the quadratic is
    identically zero or when t == 0 makes the rational value vanish.
    """
    if a == 0 and b == 0 and c == 0:
        return 0
    if t == 0:
        return _sign(a + b + c)
    # u > 0, so agreeing coefficient signs decide immediately.
    signs = {_sign(v) for v in (a, b, c) if v != 0}
    if len(signs) == 1:
        return signs.pop()

    # Float fast path.
    u = math.exp(2 * float(t))
    val = (float(a) * u + float(b)) * u + float(c)
    scale = max(abs(float(a)) * u * u, abs(float(b)) * u, abs(float(c)), 1e-300)
    if math.isfinite(val) and abs(val) > _FLOAT_CUSHION * scale:
        return _sign(val)

    # Interval escalation; cannot loop forever because e^(2t) is
    # transcendental and the quadratic is not identically zero.
    prec = 128
    two_t = 2 * t
    while prec <= _MAX_PREC_BITS:
        old = iv.prec
        try:
            iv.prec = prec
            ui = iv.exp(_iv_fraction(two_t))
            vi = (_iv_fraction(a) * ui + _iv_fraction(b)) * ui + _iv_fraction(c)
            if vi.a > 0:
                return 1
            if vi.b < 0:
                return -1
        finally:
            iv.prec = old
        prec *= 2
    raise ArithmeticError(
        f"sign undecided at {_MAX_PREC_BITS} bits for a={a} b={b} c={c} t={t}"
    )


class GrowShrinkForm:
    """The function grow * e^(2t) + shrink * e^(-2t), coefficients rational >= 0."""

    __slots__ = ("grow", "shrink")

    def __init__(self, grow, shrink):
        g = as_fraction(grow)
        s = as_fraction(shrink)
        if g < 0 or s < 0:
            raise DomainError(f"negative coefficient in form ({g}, {s})")
        self.grow = g
        self.shrink = s

    def __repr__(self):
        return f"GrowShrinkForm({self.grow}, {self.shrink})"

    def __eq__(self, other):
        return (
            isinstance(other, GrowShrinkForm)
            and self.grow == other.grow
            and self.shrink == other.shrink
        )

    def __hash__(self):
        return hash((self.grow, self.shrink))

    def is_zero(self) -> bool:
        return self.grow == 0 and self.shrink == 0

    def at_zero(self) -> Fraction:
        return self.grow + self.shrink

    def value(self, t) -> float:
        u = math.exp(2 * float(t))
        return float(self.grow) * u + float(self.shrink) / u

    def value_mp(self, t, dps: int = 30):
        old = mp.dps
        try:
            mp.dps = dps
            u = mp.exp(2 * mpf(t.numerator) / t.denominator) if isinstance(
                t, Fraction
            ) else mp.exp(2 * mpf(t))
            return (
                mpf(self.grow.numerator) / self.grow.denominator * u
                + mpf(self.shrink.numerator) / self.shrink.denominator / u
            )
        finally:
            mp.dps = old

    def sqrt_value(self, t) -> float:
        return math.sqrt(self.value(t))

    def scaled(self, r) -> "GrowShrinkForm":
        r = as_fraction(r)
        if r < 0:
            raise DomainError("cannot scale a form by a negative factor")
        return GrowShrinkForm(self.grow * r, self.shrink * r)

    def cmp(self, other: "GrowShrinkForm", t) -> int:
        """Sign of self(t) - other(t)."""
        t = as_fraction(t)
        # (g1-g2) u + (s1-s2)/u, multiplied through by u > 0.
        return sign_quadratic_at_exp(
            self.grow - other.grow, Fraction(0), self.shrink - other.shrink, t
        )

    def cmp_rational(self, c, t) -> int:
        """Sign of self(t) - c."""
        t = as_fraction(t)
        c = as_fraction(c)
        return sign_quadratic_at_exp(self.grow, -c, self.shrink, t)


class DeformedLength:
    """Flat length along the flow: sqrt(grow * e^(2t) + shrink * e^(-2t)).

    For a straight segment with period vector (x, y) on a surface of total
    area `area` rescaled to unit area, the squared length at flow time t
    is (x^2 e^(2t) + y^2 e^(-2t)) / area.
    """

    __slots__ = ("form",)

    def __init__(self, form: GrowShrinkForm):
        self.form = form

    @classmethod
    def from_coeffs(cls, grow, shrink) -> "DeformedLength":
        return cls(GrowShrinkForm(grow, shrink))

    @classmethod
    def from_holonomy(cls, x, y, area) -> "DeformedLength":
        x = as_fraction(x)
        y = as_fraction(y)
        area = as_fraction(area)
        if area <= 0:
            raise DomainError("surface area must be positive")
        return cls(GrowShrinkForm(x * x / area, y * y / area))

    def __repr__(self):
        return f"DeformedLength(grow={self.form.grow}, shrink={self.form.shrink})"

    def __eq__(self, other):
        return isinstance(other, DeformedLength) and self.form == other.form

    def __hash__(self):
        return hash(("len", self.form))

    def value(self, t) -> float:
        return self.form.sqrt_value(t)

    def squared(self) -> GrowShrinkForm:
        return self.form

    def squared_at_zero(self) -> Fraction:
        return self.form.at_zero()

    def cmp(self, other: "DeformedLength", t) -> int:
        # Lengths are non-negative, so comparing squares is equivalent.
        return self.form.cmp(other.form, t)

    def cmp_rational(self, c, t) -> int:
        """Sign of self(t) - c for a rational/float threshold c >= 0."""
        c = as_fraction(c)
        if c < 0:
            return 1
        return self.form.cmp_rational(c * c, t)


class FlowWidth:
    """A cylinder width along the flow: numerator / sqrt(circumference form).

    The numerator is the cylinder's area fraction of the unit-area
    surface, a positive rational; it does not move under the flow.
    """

    __slots__ = ("numerator", "circ_form")

    def __init__(self, numerator, circ_form: GrowShrinkForm):
        num = as_fraction(numerator)
        if num <= 0:
            raise DomainError("width numerator must be positive")
        if circ_form.is_zero():
            raise DomainError("circumference form must be nonzero")
        self.numerator = num
        self.circ_form = circ_form

    def __repr__(self):
        return f"FlowWidth({self.numerator}, {self.circ_form!r})"

    def value(self, t) -> float:
        return float(self.numerator) / self.circ_form.sqrt_value(t)

    def cmp(self, other: "FlowWidth", t) -> int:
        """Sign of self(t) - other(t)."""
        t = as_fraction(t)
        # n1/sqrt(Q1) vs n2/sqrt(Q2)  <=>  n1^2 Q2 vs n2^2 Q1.
        a = self.numerator**2 * other.circ_form.grow - other.numerator**2 * self.circ_form.grow
        c = (
            self.numerator**2 * other.circ_form.shrink
            - other.numerator**2 * self.circ_form.shrink
        )
        return sign_quadratic_at_exp(a, Fraction(0), c, t)

    def cmp_rational(self, c, t) -> int:
        """Sign of self(t) - c."""
        t = as_fraction(t)
        c = as_fraction(c)
        if c <= 0:
            return 1
        # n / sqrt(Q) vs c  <=>  n^2 vs c^2 Q.
        return sign_quadratic_at_exp(
            -(c * c) * self.circ_form.grow,
            self.numerator**2,
            -(c * c) * self.circ_form.shrink,
            t,
        )


class FlowModulus:
    """A cylinder modulus along the flow: numerator / (circumference form)."""

    __slots__ = ("numerator", "circ_form")

    def __init__(self, numerator, circ_form: GrowShrinkForm):
        num = as_fraction(numerator)
        if num <= 0:
            raise DomainError("modulus numerator must be positive")
        if circ_form.is_zero():
            raise DomainError("circumference form must be nonzero")
        self.numerator = num
        self.circ_form = circ_form

    def __repr__(self):
        return f"FlowModulus({self.numerator}, {self.circ_form!r})"

    def value(self, t) -> float:
        return float(self.numerator) / self.circ_form.value(t)

    def at_zero(self) -> Fraction:
        return self.numerator / self.circ_form.at_zero()

    def reciprocal_form(self) -> GrowShrinkForm:
        """1 / modulus as a grow-shrink form (used for extremal upper bounds)."""
        return self.circ_form.scaled(Fraction(1) / self.numerator)

    def cmp(self, other: "FlowModulus", t) -> int:
        t = as_fraction(t)
        a = self.numerator * other.circ_form.grow - other.numerator * self.circ_form.grow
        c = self.numerator * other.circ_form.shrink - other.numerator * self.circ_form.shrink
        return sign_quadratic_at_exp(a, Fraction(0), c, t)

    def cmp_rational(self, c, t) -> int:
        t = as_fraction(t)
        c = as_fraction(c)
        if c <= 0:
            return 1
        return sign_quadratic_at_exp(
            -c * self.circ_form.grow, self.numerator, -c * self.circ_form.shrink, t
        )
