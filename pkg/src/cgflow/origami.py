"""Square-tiled surfaces given by a pair of gluing permutations.

A surface is n unit squares, labelled 1..n on the wire and 0..n-1
internally.  `right[s]` is the square glued to the right edge of s and
`top[s]` the square glued to its top edge.  All four corners of every
square project to marked points of the surface.
"""

from __future__ import annotations

from .errors import (
    DomainError,
    NotAPermutationError,
    NotOneCylinderError,
    NotTransitiveError,
)


class SurfaceSig:
    """Topological signature of an ambient surface with marked points."""

    __slots__ = ("genus", "punctures")

    def __init__(self, genus: int, punctures: int):
        if genus < 0 or punctures < 0:
            raise DomainError("genus and puncture count must be nonnegative")
        if 3 * genus - 3 + punctures < 1:
            raise DomainError(
                f"complexity 3g-3+m = {3 * genus - 3 + punctures} is below 1"
            )
        self.genus = genus
        self.punctures = punctures

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.punctures

    def __eq__(self, other):
        return (
            isinstance(other, SurfaceSig)
            and self.genus == other.genus
            and self.punctures == other.punctures
        )

    def __hash__(self):
        return hash((self.genus, self.punctures))

    def __repr__(self):
        return f"SurfaceSig(genus={self.genus}, punctures={self.punctures})"


def _check_perm(one_line, n: int, name: str) -> tuple:
    seq = list(one_line)
    if len(seq) != n:
        raise NotAPermutationError(f"{name} has length {len(seq)}, expected {n}")
    seen = [False] * n
    out = []
    for img in seq:
        if not isinstance(img, int) or not (1 <= img <= n):
            raise NotAPermutationError(f"{name} entry {img!r} outside 1..{n}")
        if seen[img - 1]:
            raise NotAPermutationError(f"{name} repeats image {img}")
        seen[img - 1] = True
        out.append(img - 1)
    return tuple(out)


def _invert(perm: tuple) -> tuple:
    inv = [0] * len(perm)
    for i, img in enumerate(perm):
        inv[img] = i
    return tuple(inv)


def _cycles(perm: tuple) -> list[tuple]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        s = start
        while not seen[s]:
            seen[s] = True
            cyc.append(s)
            s = perm[s]
        out.append(tuple(cyc))
    return out


class Origami:
    """An origami (square-tiled surface) with every corner marked."""

    __slots__ = (
        "n",
        "right",
        "top",
        "right_inv",
        "top_inv",
        "_vertex_orbits",
        "_vertex_of",
    )

    def __init__(self, right, top):
        """Build from one-line notation, 1-indexed: right[i] is the label
        of the square to the right of square i+1.

        Raises, in this order of priority: NotAPermutationError when either
        sequence fails to be a permutation of 1..n, NotTransitiveError when
        the gluings leave the surface disconnected, NotOneCylinderError when
        some axis direction splits into more than one cylinder.
        """
        n = len(list(right))
        if n == 0:
            raise NotAPermutationError("need at least one square")
        self.n = n
        self.right = _check_perm(right, n, "right")
        self.top = _check_perm(top, n, "top")
        self.right_inv = _invert(self.right)
        self.top_inv = _invert(self.top)
        self._check_transitive()
        if len(_cycles(self.right)) != 1 or len(_cycles(self.top)) != 1:
            raise NotOneCylinderError(
                "surface must be one horizontal and one vertical cylinder"
            )
        self._vertex_orbits = None
        self._vertex_of = None

    @classmethod
    def from_cycles(cls, right_cycles, top_cycles, n: int) -> "Origami":
        """Build from disjoint-cycle notation, e.g. ((1, 2, 3, 4),) on n=4.

        Labels omitted from the cycle list are fixed points.  A label that
        appears twice is rejected.
        """

        def expand(cycles, name):
            img = list(range(1, n + 1))
            hit = [False] * n
            for cyc in cycles:
                try:
                    seq = [int(a) for a in cyc]
                except (TypeError, ValueError):
                    raise NotAPermutationError(
                        f"{name} cycles must be lists of integer labels, got {cyc!r}"
                    )
                for a in seq:
                    if not (1 <= a <= n):
                        raise NotAPermutationError(
                            f"{name} cycle entry {a} outside 1..{n}"
                        )
                    if hit[a - 1]:
                        raise NotAPermutationError(f"{name} repeats label {a}")
                    hit[a - 1] = True
                for a, b in zip(seq, seq[1:] + seq[:1]):
                    img[a - 1] = b
            return img

        return cls(expand(right_cycles, "h"), expand(top_cycles, "v"))

    def _check_transitive(self):
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            s = stack.pop()
            for nxt in (self.right[s], self.top[s], self.right_inv[s], self.top_inv[s]):
                if not seen[nxt]:
                    seen[nxt] = True
                    count += 1
                    stack.append(nxt)
        if count != self.n:
            raise NotTransitiveError(
                f"gluings reach only {count} of {self.n} squares; surface disconnected"
            )

    # -- vertex structure ------------------------------------------------

    def vertex_orbits(self) -> list[tuple]:
        """Orbits of squares under s -> right(top(right_inv(top_inv(s)))).

        Each orbit collects the squares whose bottom-left corners meet at
        one marked point; the orbit length is the cone angle in full turns.
        """
        if self._vertex_orbits is None:
            comm = tuple(
                self.right[self.top[self.right_inv[self.top_inv[s]]]]
                for s in range(self.n)
            )
            orbits = _cycles(comm)
            vertex_of = [0] * self.n
            for idx, orb in enumerate(orbits):
                for s in orb:
                    vertex_of[s] = idx
            self._vertex_orbits = orbits
            self._vertex_of = tuple(vertex_of)
        return self._vertex_orbits

    def vertex_class_of(self, square: int) -> int:
        """Index of the marked point at the bottom-left corner of `square`."""
        self.vertex_orbits()
        return self._vertex_of[square]

    def corner_class(self, square: int, cx: int, cy: int) -> int:
        """Marked-point index at the corner (cx, cy) of `square`, cx,cy in {0,1}."""
        if cx not in (0, 1) or cy not in (0, 1):
            raise DomainError(f"({cx}, {cy}) is not a square corner")
        s = square
        if cx:
            s = self.right[s]
        if cy:
            s = self.top[s]
        return self.vertex_class_of(s)

    @property
    def num_marked_points(self) -> int:
        return len(self.vertex_orbits())

    @property
    def genus(self) -> int:
        # V - E + F with E = 2n, F = n gives chi = V - n = 2 - 2g.
        chi = self.num_marked_points - self.n
        return (2 - chi) // 2

    @property
    def complexity(self) -> int:
        """3g - 3 + m for genus g with m marked points."""
        return 3 * self.genus - 3 + self.num_marked_points

    @property
    def surface_sig(self) -> SurfaceSig:
        return SurfaceSig(self.genus, self.num_marked_points)

    def cone_angle_turns(self, vertex_class: int) -> int:
        """Cone angle at the marked point, in full turns of 2*pi."""
        return len(self.vertex_orbits()[vertex_class])

    # -- cylinder-by-letter structure -------------------------------------

    def horizontal_cycles(self) -> list[tuple]:
        return _cycles(self.right)

    def vertical_cycles(self) -> list[tuple]:
        return _cycles(self.top)

    # -- identity ----------------------------------------------------------

    def key(self) -> tuple:
        return (self.right, self.top)

    def __eq__(self, other):
        return isinstance(other, Origami) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        r = [i + 1 for i in self.right]
        t = [i + 1 for i in self.top]
        return f"Origami(right={r}, top={t})"

    def to_dict(self) -> dict:
        """Wire form with permutations in disjoint-cycle notation, 1-based.

        Each cycle starts at its smallest label, cycles are listed by that
        label, so equal surfaces serialize identically.
        """

        def wire(perm):
            return [[s + 1 for s in cyc] for cyc in _cycles(perm)]

        return {"n": self.n, "h": wire(self.right), "v": wire(self.top)}

    @classmethod
    def from_dict(cls, data: dict) -> "Origami":
        """Parse the wire form: {"n": 4, "h": [[1,2,3,4]], "v": [[1,2,4,3]]}.

        Labels absent from the cycles are fixed points of that permutation.
        """
        try:
            n = data["n"]
            h = data["h"]
            v = data["v"]
        except (KeyError, TypeError):
            raise NotAPermutationError("surface record needs keys 'n', 'h' and 'v'")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise NotAPermutationError(f"square count must be a positive integer, got {n!r}")
        return cls.from_cycles(h, v, n)
