"""Marked-torus curve pairs as exact lattice geometry.

Two distinct slopes on the once-marked torus determine, up to the
mapping class group, a flat torus on which the first curve runs
horizontally and the second vertically.  That torus is the plane
modulo an index-N sublattice of the square grid, N the intersection
number of the pair, so every length, systole, and curve-graph query
reduces to integer arithmetic on lattice vectors.  This is the
complexity-one model the estimator runs its torus corpora on; the
equivalent square-tiled surface is available for cross-checks.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

import mpmath

from .errors import DomainError
from .farey import farey_distance, normalize_slope
from .forms import GrowShrinkForm, as_fraction
from .origami import Origami, SurfaceSig

# Reduced-basis sweep radius; Lagrange reduction leaves the true
# minimum within coefficient 1, the margin absorbs rounding in mu.
_SWEEP = 3


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _sign_normalized(vec: tuple[int, int]) -> tuple[int, int]:
    a, b = vec
    if b < 0 or (b == 0 and a < 0):
        return (-a, -b)
    return (a, b)


class LatticeCurve:
    """A curve class on the pair's torus: a primitive lattice vector."""

    __slots__ = ("pair", "vector")

    def __init__(self, pair: "TorusPair", vector: tuple[int, int]):
        self.pair = pair
        self.vector = _sign_normalized(vector)

    @property
    def direction(self) -> tuple[int, int]:
        a, b = self.vector
        g = gcd(abs(a), abs(b))
        return (a // g, b // g)

    @property
    def slope(self) -> tuple[int, int]:
        return self.pair.to_slope(self.vector)

    def length_sq_form(self) -> GrowShrinkForm:
        return self.pair.length_sq_form(self.vector)

    def flat_length(self, t) -> float:
        return self.length_sq_form().sqrt_value(t)

    def id_string(self) -> str:
        p, q = self.direction
        return f"{p}:{q}:0"

    def same_curve(self, other: "LatticeCurve") -> bool:
        return self.pair is other.pair and self.vector == other.vector

    def __repr__(self):
        return f"LatticeCurve({self.vector})"


class LatticeWideCurve:
    """Widest-cylinder marking on the lattice torus at one flow time."""

    __slots__ = ("curve", "t", "width", "target", "achieved_delta", "below_target")

    def __init__(self, curve: LatticeCurve, t, target):
        self.curve = curve
        self.t = t
        self.width = 1.0 / curve.flat_length(t)
        self.target = float(target)
        self.achieved_delta = min(self.width, self.target)
        self.below_target = self.width < self.target

    @property
    def kind(self) -> str:
        return "flat-cylinder"

    def id_string(self) -> str:
        return self.curve.id_string()

    def __repr__(self):
        return f"LatticeWideCurve({self.curve.vector}, width={self.width:.6g})"


class TorusPair:
    """Ordered pair of distinct slopes on the once-marked torus.

    The pair is carried in normal form: the lattice is generated by
    (N, 0) and (k, 1), so membership is the congruence a = k*b mod N.
    The squared flat length of (a, b) at flow time t is
    (a^2 e^{2t} + b^2 e^{-2t}) / N, the area-one normalization.
    """

    __slots__ = ("xi", "zeta", "N", "x", "k", "_adj", "_farey_cache")

    def __init__(self, xi, zeta):
        self.xi = normalize_slope(*xi)
        self.zeta = normalize_slope(*zeta)
        p1, q1 = self.xi
        p2, q2 = self.zeta
        n = abs(q1 * p2 - p1 * q2)
        if n == 0:
            raise DomainError("slopes are parallel, the pair carries no torus")
        # Unimodular change of basis sending the xi direction to (1, 0),
        # then a shear reducing the zeta column mod N, then the stretch
        # onto the integer model; W is the composite, det W = N.
        g, s, t = _extended_gcd(q1, p1)
        assert g == 1
        r = -t
        u = ((s, -r), (-p1, q1))
        x0 = u[0][0] * q2 + u[0][1] * p2
        y0 = u[1][0] * q2 + u[1][1] * p2
        if y0 < 0:
            x0, y0 = -x0, -y0
            u = ((-u[0][0], -u[0][1]), (-u[1][0], -u[1][1]))
        self.N = n
        self.x = x0 % n
        self.k = (n - self.x) % n
        m = (self.x - x0) // n
        u2 = ((u[0][0] + m * u[1][0], u[0][1] + m * u[1][1]), u[1])
        w = (
            (n * u2[0][0] - self.x * u2[1][0], n * u2[0][1] - self.x * u2[1][1]),
            u2[1],
        )
        # Adjugate of W; dividing its action by N inverts the model map.
        self._adj = ((w[1][1], -w[0][1]), (-w[1][0], w[0][0]))
        self._farey_cache = {}

    @property
    def surface_sig(self) -> SurfaceSig:
        return SurfaceSig(1, 1)

    @property
    def n(self) -> int:
        """Area of the integer model, matching the square-tiled picture."""
        return self.N

    def __repr__(self):
        return f"TorusPair(xi={self.xi}, zeta={self.zeta}, N={self.N}, k={self.k})"

    # -- lattice plumbing ------------------------------------------------

    def contains(self, vector: tuple[int, int]) -> bool:
        a, b = vector
        return (a - self.k * b) % self.N == 0

    def length_sq_form(self, vector) -> GrowShrinkForm:
        a, b = vector
        return GrowShrinkForm(Fraction(a * a, self.N), Fraction(b * b, self.N))

    def to_slope(self, vector) -> tuple[int, int]:
        a, b = _sign_normalized(vector)
        cx, rx = divmod(self._adj[0][0] * a + self._adj[0][1] * b, self.N)
        cy, ry = divmod(self._adj[1][0] * a + self._adj[1][1] * b, self.N)
        if rx or ry:
            raise DomainError(f"{(a, b)} is not a lattice vector of this pair")
        return normalize_slope(cy, cx)

    def intersection_of(self, v, w) -> int:
        det = v[0] * w[1] - v[1] * w[0]
        return abs(det) // self.N

    # -- curves ----------------------------------------------------------

    def core_curves(self) -> tuple[LatticeCurve, LatticeCurve]:
        return (LatticeCurve(self, (self.N, 0)), LatticeCurve(self, (0, self.N)))

    def curve(self, vector) -> LatticeCurve:
        vector = _sign_normalized(vector)
        if not self.contains(vector):
            raise DomainError(f"{vector} is not a lattice vector of this pair")
        a, b = vector
        # primitivity inside the lattice: no proper divisor stays inside
        g = gcd(abs(a), abs(b))
        for d in _divisors(g):
            if d > 1 and self.contains((a // d, b // d)):
                raise DomainError(f"{vector} is a proper multiple inside the lattice")
        return LatticeCurve(self, vector)

    def shortest_vector(self, t) -> tuple[int, int]:
        """Shortest nonzero lattice vector at flow time t.

        Lagrange reduction with floating size ratios steers the basis;
        the exact minimum and the tie-break are then settled by an
        exact-form sweep of small coefficients, so rounding in mu can
        never change the answer.
        """
        t = as_fraction(t)
        u, v = (self.N, 0), (self.k, 1)
        with mpmath.workdps(40):
            E = mpmath.e ** (2 * mpmath.mpf(t.numerator) / t.denominator)

            def norm2(w):
                return w[0] * w[0] * E + w[1] * w[1] / E

            def dot(w, z):
                return w[0] * z[0] * E + w[1] * z[1] / E

            for _ in range(64):
                if norm2(v) < norm2(u):
                    u, v = v, u
                m = int(mpmath.nint(dot(u, v) / norm2(u)))
                if m == 0:
                    break
                v = (v[0] - m * u[0], v[1] - m * u[1])

        best = None
        best_key = None
        for alpha in range(-_SWEEP, _SWEEP + 1):
            for beta in range(-_SWEEP, _SWEEP + 1):
                if alpha == 0 and beta == 0:
                    continue
                w = _sign_normalized(
                    (alpha * u[0] + beta * v[0], alpha * u[1] + beta * v[1])
                )
                if best is None:
                    best = w
                    continue
                s = self.length_sq_form(w).cmp(self.length_sq_form(best), t)
                if s < 0 or (s == 0 and (w[1], w[0]) < (best[1], best[0])):
                    best = w
        return best

    def systole_sq(self, t) -> float:
        w = self.shortest_vector(t)
        return self.length_sq_form(w).value(t)

    def widest_mark(self, t, target) -> LatticeWideCurve:
        if not float(target) > 0:
            raise DomainError("width target must be positive")
        w = self.shortest_vector(t)
        return LatticeWideCurve(LatticeCurve(self, w), t, target)

    # -- curve-graph queries ----------------------------------------------

    def farey_between(self, a: LatticeCurve, b: LatticeCurve) -> int:
        key = (a.vector, b.vector) if a.vector <= b.vector else (b.vector, a.vector)
        hit = self._farey_cache.get(key)
        if hit is None:
            hit = farey_distance(a.slope, b.slope)
            self._farey_cache[key] = hit
        return hit

    def oracle_distance(self) -> int:
        return farey_distance(self.xi, self.zeta)

    # -- square-tiled cross-check ------------------------------------------

    def origami(self) -> Origami:
        """The one-cylinder square-tiled surface with this unmarked geometry.

        Its N unit squares sit in one horizontal row; climbing one unit
        shifts k squares left.  All N grid points become marked there,
        so curve-graph distances must still be read on this pair.
        """
        n = self.N
        right = [(i % n) + 1 for i in range(1, n + 1)]
        top = [((i - 1 - self.k) % n) + 1 for i in range(1, n + 1)]
        return Origami(right, top)


def _divisors(g: int):
    for d in range(1, g + 1):
        if g % d == 0:
            yield d


def random_torus_pairs(count, low=3, high=15, seed=0, exclude=()):
    """Seeded corpus of slope pairs with Farey distance in [low, high].

    Slopes come from short random continued fractions, so depth tracks
    distance; half the pairs get a random unimodular shuffle to
    exercise the normal-form conversion.  `exclude` takes TorusPair
    instances or zeta slopes of an earlier corpus; disjointness is by
    normal form (N, x, k), which unimodular shuffles preserve.
    """
    if count < 0:
        raise DomainError("count must be nonnegative")
    if not 1 <= low <= high:
        raise DomainError("need 1 <= low <= high")
    rng = random.Random(seed)
    seen = set()
    for item in exclude:
        if not isinstance(item, TorusPair):
            item = TorusPair((0, 1), normalize_slope(*item))
        seen.add((item.N, item.x, item.k))
    out = []
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 200 * (count + 1):
            raise DomainError("corpus distance range looks unreachable")
        depth = rng.randint(low, high + 2)
        digits = [rng.randint(1, 3) for _ in range(depth)]
        num, den = 1, digits[-1]
        for a in reversed(digits[:-1]):
            num, den = den, a * den + num
        zeta = normalize_slope(num, den)
        pair = TorusPair((0, 1), zeta)
        key = (pair.N, pair.x, pair.k)
        if key in seen:
            continue
        d = farey_distance((0, 1), zeta)
        if not low <= d <= high:
            continue
        seen.add(key)
        xi = (0, 1)
        if rng.random() < 0.5:
            xi, zeta = _unimodular_shuffle(rng, xi, zeta)
            pair = TorusPair(xi, zeta)
        out.append(pair)
    return out


def _unimodular_shuffle(rng, xi, zeta):
    m = ((1, 0), (0, 1))
    for _ in range(rng.randint(1, 4)):
        c = rng.randint(-2, 2)
        if rng.random() < 0.5:
            step = ((1, c), (0, 1))
        else:
            step = ((1, 0), (c, 1))
        m = (
            (
                m[0][0] * step[0][0] + m[0][1] * step[1][0],
                m[0][0] * step[0][1] + m[0][1] * step[1][1],
            ),
            (
                m[1][0] * step[0][0] + m[1][1] * step[1][0],
                m[1][0] * step[0][1] + m[1][1] * step[1][1],
            ),
        )

    def act(slope):
        rise, run = slope
        vec = (run, rise)
        nx = m[0][0] * vec[0] + m[0][1] * vec[1]
        ny = m[1][0] * vec[0] + m[1][1] * vec[1]
        return normalize_slope(ny, nx)

    return act(xi), act(zeta)
