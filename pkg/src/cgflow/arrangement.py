"""Exact arrangement of curves on a square-tiled surface.

The curves cut the surface into open complement components.  Everything
here is combinatorial and exact: per square we build the planar
subdivision induced by the curve chords (plus the square boundary), glue
cells across square edges, and then read off, per component, the Euler
characteristic of the cut piece, its boundary circles, genus, and the
marked points in its interior.

Counting conventions for one component of the cut surface:

* faces: its cells;
* edges: glued square-boundary pieces once each, plus each curve piece
  once per side that faces the component;
* vertices: fans of cell corners around a subdivision point, split at
  curve germs.  Marked points carry no curve germs (curves avoid them),
  so each contributes exactly one fan and is interior to its component.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

from .errors import DomainError, SurfaceMismatchError
from .origami import Origami

ZERO = Fraction(0)
ONE = Fraction(1)


class _UF:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent
        while x in p:
            if p[x] in p:
                p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _dir_cmp(d1, d2):
    """Counterclockwise order of directions starting just above +x axis."""

    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    h1, h2 = half(d1), half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    c = _cross(d1, d2)
    return 0 if c == 0 else (-1 if c > 0 else 1)


def segment_meet(p1, p2, q1, q2):
    """Intersection of two closed segments.

    Returns ("none",), ("point", pt) or ("overlap",).
    """
    d1 = _sub(p2, p1)
    d2 = _sub(q2, q1)
    denom = _cross(d1, d2)
    w = _sub(q1, p1)
    if denom == 0:
        if _cross(w, d1) != 0:
            return ("none",)
        # collinear: compare parameter intervals along d1
        dot = d1[0] * d1[0] + d1[1] * d1[1]
        t0 = w[0] * d1[0] + w[1] * d1[1]
        t1 = t0 + (d2[0] * d1[0] + d2[1] * d1[1])
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > dot:
            return ("none",)
        if hi == 0 or lo == dot:
            return ("point", q1 if t0 in (0, dot) else q2)
        return ("overlap",)
    t = Fraction(_cross(w, d2), denom)
    u = Fraction(_cross(w, d1), denom)
    if 0 <= t <= 1 and 0 <= u <= 1:
        return ("point", (p1[0] + t * d1[0], p1[1] + t * d1[1]))
    return ("none",)


class _SquareCells:
    """Planar subdivision of one unit square by curve chords."""

    def __init__(self, square: int, chords):
        # chords: list of (curve_id, P, Q)
        self.square = square
        self.chords = chords
        self._build()

    def _build(self):
        pts = {(ZERO, ZERO), (ONE, ZERO), (ONE, ONE), (ZERO, ONE)}
        for _, p, q in self.chords:
            pts.add(p)
            pts.add(q)
        per_chord_pts = [{p, q} for _, p, q in self.chords]
        for i in range(len(self.chords)):
            for j in range(i + 1, len(self.chords)):
                _, p1, p2 = self.chords[i]
                _, q1, q2 = self.chords[j]
                meet = segment_meet(p1, p2, q1, q2)
                if meet[0] == "overlap":
                    raise DomainError(
                        "two curve pieces overlap along a segment; "
                        "isotope the curves apart before arranging"
                    )
                if meet[0] == "point":
                    pts.add(meet[1])
                    per_chord_pts[i].add(meet[1])
                    per_chord_pts[j].add(meet[1])

        self.verts = sorted(pts)
        vid = {p: i for i, p in enumerate(self.verts)}
        self.vid = vid

        edges = []  # (u, v, curve_id or None)
        side_pts = {
            "bottom": sorted(p for p in pts if p[1] == 0),
            "top": sorted(p for p in pts if p[1] == 1),
            "left": sorted(p for p in pts if p[0] == 0),
            "right": sorted(p for p in pts if p[0] == 1),
        }
        self.side_pieces = {}  # side -> list of (a_pt, b_pt) in coordinate order
        for side, plist in side_pts.items():
            pieces = []
            for a, b in zip(plist, plist[1:]):
                edges.append((vid[a], vid[b], None))
                pieces.append((a, b))
            self.side_pieces[side] = pieces
        self.chord_pieces = []  # (curve_id, a_pt, b_pt)
        for (cid, p, q), cpts in zip(self.chords, per_chord_pts):
            d = _sub(q, p)
            ordered = sorted(
                cpts, key=lambda r: (r[0] - p[0]) * d[0] + (r[1] - p[1]) * d[1]
            )
            for a, b in zip(ordered, ordered[1:]):
                edges.append((vid[a], vid[b], cid))
                self.chord_pieces.append((cid, a, b))

        germs = {i: [] for i in range(len(self.verts))}
        for u, v, _cid in edges:
            germs[u].append(v)
            germs[v].append(u)
        order = {}
        for u, lst in germs.items():
            pu = self.verts[u]
            lst.sort(
                key=cmp_to_key(
                    lambda a, b: _dir_cmp(
                        _sub(self.verts[a], pu), _sub(self.verts[b], pu)
                    )
                )
            )
            order[u] = {v: i for i, v in enumerate(lst)}
        self.germs = germs

        # Face-on-left traversal: next of (u -> v) leaves v one germ
        # clockwise from the germ back to u.
        he_face = {}
        next_he = {}
        faces = []
        for u, v, _cid in edges:
            for h in ((u, v), (v, u)):
                if h in he_face:
                    continue
                cycle = []
                cur = h
                while cur not in he_face:
                    he_face[cur] = len(faces)
                    cycle.append(cur)
                    a, b = cur
                    lst = germs[b]
                    idx = order[b][a]
                    nxt = (b, lst[(idx - 1) % len(lst)])
                    next_he[cur] = nxt
                    cur = nxt
                if cur != h:
                    raise DomainError("face walk did not close")
                faces.append(cycle)
        self.next_he = next_he
        self.he_face = he_face
        self.outer = None
        for fi, cycle in enumerate(faces):
            area2 = 0
            for a, b in cycle:
                pa, pb = self.verts[a], self.verts[b]
                area2 += pa[0] * pb[1] - pb[0] * pa[1]
            if area2 < 0:
                if self.outer is not None:
                    raise DomainError("multiple outer faces in a square cell complex")
                self.outer = fi
        if self.outer is None:
            raise DomainError("no outer face found")
        self.faces = faces

    def face_of(self, a_pt, b_pt) -> int:
        return self.he_face[(self.vid[a_pt], self.vid[b_pt])]

    def corner(self, face: int, at_pt, other_pt):
        """The face's corner at at_pt adjacent to the edge {at_pt, other_pt}.

        A corner is identified by the outgoing half-edge of the face walk,
        which distinguishes repeat visits of one glued vertex.
        """
        u, w = self.vid[at_pt], self.vid[other_pt]
        if self.he_face.get((u, w)) == face:
            return (u, w)
        if self.he_face.get((w, u)) == face:
            return self.next_he[(w, u)]
        raise DomainError("face is not adjacent to the given edge")

    def inner_face_of_side_piece(self, a_pt, b_pt) -> int:
        f1 = self.face_of(a_pt, b_pt)
        f2 = self.face_of(b_pt, a_pt)
        if f1 == self.outer:
            return f2
        if f2 == self.outer:
            return f1
        raise DomainError("side piece not on the outer boundary")

    def corner_face(self, corner_pt) -> int:
        """The inner face with a corner sector at a square corner."""
        vidx = self.vid[corner_pt]
        nbr = self.germs[vidx][0]
        f = self.he_face[(vidx, nbr)]
        if f == self.outer:
            f = self.he_face[(nbr, vidx)]
        return f

    def face_containing(self, pt) -> int:
        """Inner face whose interior contains pt; cells are convex."""
        for fi, cycle in enumerate(self.faces):
            if fi == self.outer:
                continue
            if all(
                _cross(
                    _sub(self.verts[b], self.verts[a]), _sub(pt, self.verts[a])
                ) > 0
                for a, b in cycle
            ):
                return fi
        raise DomainError(f"point {pt} is not interior to any cell")


class Component:
    """One complement component of the cut surface."""

    __slots__ = (
        "key",
        "num_faces",
        "chi",
        "boundary_circles",
        "genus",
        "marked_points",
        "switch_counts",
        "circle_curves",
    )

    def __init__(self, key):
        self.key = key
        self.num_faces = 0
        self.chi = 0
        self.boundary_circles = 0
        self.genus = 0
        self.marked_points = []
        self.switch_counts = []
        self.circle_curves = []

    @property
    def punctures(self) -> int:
        return len(self.marked_points)

    @property
    def is_disk(self) -> bool:
        return self.chi == 1 and self.punctures == 0

    @property
    def is_once_punctured_disk(self) -> bool:
        return self.chi == 1 and self.punctures == 1

    @property
    def is_pants(self) -> bool:
        """Genus zero with three ends, boundary circles and punctures combined."""
        return self.genus == 0 and self.boundary_circles + self.punctures == 3

    def __repr__(self):
        return (
            f"Component(chi={self.chi}, b={self.boundary_circles}, "
            f"genus={self.genus}, punctures={self.punctures})"
        )


class Arrangement:
    """The glued cell structure induced by a family of curves."""

    def __init__(self, surface: Origami, curves):
        self.surface = surface
        self.curves = list(curves)
        for c in self.curves:
            if c.surface != surface:
                raise SurfaceMismatchError("curve is not on the given surface")
        self._build()

    def _build(self):
        surface = self.surface
        chords_by_square = {s: [] for s in range(surface.n)}
        for cid, curve in enumerate(self.curves):
            for sq, a, b in curve.segments:
                chords_by_square[sq].append((cid, a, b))
        self.cells = {s: _SquareCells(s, chords_by_square[s]) for s in range(surface.n)}

        # -- vertex classes across gluings
        vuf = _UF()
        for s in range(surface.n):
            cell = self.cells[s]
            for (x, y) in cell.verts:
                if x == 1:
                    vuf.union((s, (x, y)), (surface.right[s], (ZERO, y)))
                if y == 1:
                    vuf.union((s, (x, y)), (surface.top[s], (x, ZERO)))

        # -- glue faces and corner sectors across side pieces
        fuf = _UF()
        suf = _UF()
        glued_pairs = 0
        interior_edge_count: dict = {}
        sides_spec = (
            ("right", "left", True),
            ("top", "bottom", False),
        )
        deferred = []
        for s in range(surface.n):
            cell = self.cells[s]
            for side, nside, match_y in sides_spec:
                neighbor = surface.right[s] if side == "right" else surface.top[s]
                ncell = self.cells[neighbor]
                mine = cell.side_pieces[side]
                theirs = ncell.side_pieces[nside]
                if len(mine) != len(theirs):
                    raise DomainError("side subdivisions disagree across a gluing")
                for (a, b), (a2, b2) in zip(mine, theirs):
                    coords = ((a[1], b[1]), (a2[1], b2[1])) if match_y else (
                        (a[0], b[0]),
                        (a2[0], b2[0]),
                    )
                    if coords[0] != coords[1]:
                        raise DomainError("side points disagree across a gluing")
                    fi1 = cell.inner_face_of_side_piece(a, b)
                    fi2 = ncell.inner_face_of_side_piece(a2, b2)
                    fuf.union((s, fi1), (neighbor, fi2))
                    glued_pairs += 1
                    suf.union(
                        (s,) + cell.corner(fi1, a, b),
                        (neighbor,) + ncell.corner(fi2, a2, b2),
                    )
                    suf.union(
                        (s,) + cell.corner(fi1, b, a),
                        (neighbor,) + ncell.corner(fi2, b2, a2),
                    )
                    deferred.append((s, fi1))
        for s, fi1 in deferred:
            key = fuf.find((s, fi1))
            interior_edge_count[key] = interior_edge_count.get(key, 0) + 1

        self._vuf, self._fuf, self._suf = vuf, fuf, suf

        comps: dict = {}
        for s in range(surface.n):
            cell = self.cells[s]
            for fi in range(len(cell.faces)):
                if fi == cell.outer:
                    continue
                key = fuf.find((s, fi))
                if key not in comps:
                    comps[key] = Component(key)
                comps[key].num_faces += 1

        # curve piece sides: boundary edges of the cut surface
        curve_sides = []  # (sid, curve_id, face_key, arc_u, arc_v)
        curve_side_count: dict = {}
        for s in range(surface.n):
            cell = self.cells[s]
            for cid, a, b in cell.chord_pieces:
                for (u, v) in ((a, b), (b, a)):
                    uu, vv = cell.vid[u], cell.vid[v]
                    fi = cell.he_face[(uu, vv)]
                    key = fuf.find((s, fi))
                    curve_side_count[key] = curve_side_count.get(key, 0) + 1
                    arc_u = suf.find((s, uu, vv))
                    arc_v = suf.find((s,) + cell.next_he[(uu, vv)])
                    curve_sides.append((len(curve_sides), cid, key, arc_u, arc_v))

        # vertices of the cut surface: corner arcs per component
        arc_count: dict = {}
        seen_arcs = set()
        for s in range(surface.n):
            cell = self.cells[s]
            for fi, cycle in enumerate(cell.faces):
                if fi == cell.outer:
                    continue
                key = fuf.find((s, fi))
                for he in cycle:
                    arc = suf.find((s,) + he)
                    if arc not in seen_arcs:
                        seen_arcs.add(arc)
                        arc_count[key] = arc_count.get(key, 0) + 1

        for key, comp in comps.items():
            e_count = interior_edge_count.get(key, 0) + curve_side_count.get(key, 0)
            comp.chi = arc_count.get(key, 0) - e_count + comp.num_faces

        # marked points are interior to exactly one component
        seen_vkeys = set()
        for s in range(surface.n):
            corner = (ZERO, ZERO)
            vkey = vuf.find((s, corner))
            if vkey in seen_vkeys:
                continue
            seen_vkeys.add(vkey)
            cell = self.cells[s]
            key = fuf.find((s, cell.corner_face(corner)))
            comps[key].marked_points.append(surface.vertex_class_of(s))

        # boundary circles: each fan arc on the cut boundary has exactly two
        # incident side-ends; sides and arcs alternate around a circle.
        slots: dict = {}
        for sid, _cid, _key, arc_u, arc_v in curve_sides:
            slots.setdefault(arc_u, []).append((sid, 0))
            slots.setdefault(arc_v, []).append((sid, 1))
        for arc, ends in slots.items():
            if len(ends) != 2:
                raise DomainError(
                    f"cut boundary fan has {len(ends)} loose ends, expected 2"
                )
        visited = set()
        for sid0, cid0, key0, arc_u0, arc_v0 in curve_sides:
            if sid0 in visited:
                continue
            cycle_sides = []
            sid, exit_end = sid0, 1
            while sid not in visited:
                visited.add(sid)
                cycle_sides.append(sid)
                rec = curve_sides[sid]
                arc = rec[4] if exit_end == 1 else rec[3]
                pair = slots[arc]
                other = pair[0] if pair[0] != (sid, exit_end) else pair[1]
                sid, enter_end = other
                exit_end = 1 - enter_end
            switches = 0
            k = len(cycle_sides)
            for i in range(k):
                c1 = curve_sides[cycle_sides[i]][1]
                c2 = curve_sides[cycle_sides[(i + 1) % k]][1]
                if c1 != c2:
                    switches += 1
            comps[key0].boundary_circles += 1
            comps[key0].switch_counts.append(switches)
            comps[key0].circle_curves.append(
                frozenset(curve_sides[i][1] for i in cycle_sides)
            )

        for comp in comps.values():
            two_g = 2 - comp.chi - comp.boundary_circles
            if two_g < 0 or two_g % 2:
                raise DomainError(
                    f"inconsistent cut component: chi={comp.chi}, "
                    f"b={comp.boundary_circles}"
                )
            comp.genus = two_g // 2

        self.components = sorted(
            comps.values(), key=lambda c: (c.chi, c.boundary_circles, c.punctures)
        )

    # -- queries -----------------------------------------------------------

    def component_containing(self, square: int, point) -> Component:
        fi = self.cells[square].face_containing(point)
        key = self._fuf.find((square, fi))
        for comp in self.components:
            if comp.key == key:
                return comp
        raise DomainError("component lookup failed")

    def find_bigon(self):
        """A disk component bounded by one arc of each of two curves."""
        for comp in self.components:
            if comp.chi == 1 and comp.punctures == 0 and comp.boundary_circles == 1:
                if comp.switch_counts[0] == 2:
                    return comp
        return None

    def is_filling(self) -> bool:
        """True when every component is a disk with at most one marked point."""
        return all(comp.chi == 1 and comp.punctures <= 1 for comp in self.components)
