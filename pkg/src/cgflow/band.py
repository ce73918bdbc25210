"""Combinatorial candidate curves confined to band strips.

A curve that never touches the horizontal mid-line y = 1/2 of any
square can still move vertically by slipping across the horizontal
seams.  Such curves live on a graph with two nodes per square, the
lower band (y < 1/2) and the upper band (y > 1/2):

* R/L edges cross a vertical seam and stay in the same band;
* U edges run from an upper band through y = 1 into the lower band of
  the square above; D edges go the other way through y = 0.

Every node-simple cycle of the graph is realized as an embedded
piecewise-straight curve: one horizontal run per visited band (rows
y = 1/3 and y = 2/3) joined by vertical stubs in fixed columns.  The
vertical family is the same construction on the transposed surface
with different offsets, so one curve of each family never shares a
line with the other.  Band curves are disjoint from the horizontal
core (respectively vertical core) by construction.
"""

from __future__ import annotations

from fractions import Fraction

from .curves import FlatCurve
from .origami import Origami

ZERO = Fraction(0)
ONE = Fraction(1)

LO, HI = 0, 1

# horizontal family: run rows and stub columns
H_ROWS = (Fraction(1, 3), Fraction(2, 3))
H_COLS = (Fraction(1, 3), Fraction(2, 3))  # up stub, down stub
# vertical family (offsets on the transposed surface, swapped on output)
V_ROWS = (Fraction(1, 4), Fraction(3, 4))
V_COLS = (Fraction(1, 5), Fraction(4, 5))


def _transposed(surface: Origami) -> Origami:
    return Origami(
        [t + 1 for t in surface.top],
        [r + 1 for r in surface.right],
    )


def _edges(surface: Origami, node):
    """Outgoing (move, target) pairs; moves are "R", "L", "U", "D"."""
    s, b = node
    out = [
        ("R", (surface.right[s], b)),
        ("L", (surface.right_inv[s], b)),
    ]
    if b == HI:
        out.append(("U", (surface.top[s], LO)))
    else:
        out.append(("D", (surface.top_inv[s], HI)))
    return out


_INVERSE = {"R": "L", "L": "R", "U": "D", "D": "U"}


def _simple_cycles(surface: Origami, max_edges: int, limit):
    """Node-simple directed cycles, deduplicated up to rotation and reversal."""
    seen = set()
    cycles = []
    nodes = [(s, b) for s in range(surface.n) for b in (LO, HI)]

    def canon(node_seq):
        best = None
        for seq in (tuple(node_seq), tuple(reversed(node_seq))):
            k = len(seq)
            for i in range(k):
                rot = seq[i:] + seq[:i]
                if best is None or rot < best:
                    best = rot
        return best

    def dfs(start, node, moves, path, on_path):
        if limit is not None and len(cycles) >= limit:
            return
        for move, nxt in _edges(surface, node):
            if moves and move == _INVERSE[moves[-1]]:
                continue
            if nxt == start:
                if len(moves) == 0:
                    continue
                if moves[0] == _INVERSE[move]:
                    continue  # re-entering through the port we left by
                key = canon(path)
                if key not in seen:
                    seen.add(key)
                    cycles.append((list(path), moves + [move]))
                continue
            if nxt in on_path or len(moves) + 1 >= max_edges:
                continue
            on_path.add(nxt)
            path.append(nxt)
            dfs(start, nxt, moves + [move], path, on_path)
            path.pop()
            on_path.discard(nxt)

    for start in nodes:
        if limit is not None and len(cycles) >= limit:
            break
        dfs(start, start, [], [start], {start})
    return cycles


def _realize(surface, nodes, moves, rows, cols):
    """Segments of the embedded curve realizing one band cycle."""
    up_col, down_col = cols
    k = len(nodes)

    def entry_port(i):
        prev = moves[i - 1]
        if prev == "R":
            return ZERO
        if prev == "L":
            return ONE
        if prev == "U":
            return up_col
        return down_col

    def exit_port(i):
        move = moves[i]
        if move == "R":
            return ONE
        if move == "L":
            return ZERO
        if move == "U":
            return up_col
        return down_col

    segments = []
    for i in range(k):
        s, b = nodes[i]
        y = rows[b]
        x_in, x_out = entry_port(i), exit_port(i)
        segments.append((s, (x_in, y), (x_out, y)))
        move = moves[i]
        if move == "U":
            target = surface.top[s]
            segments.append((s, (up_col, y), (up_col, ONE)))
            segments.append((target, (up_col, ZERO), (up_col, rows[LO])))
        elif move == "D":
            target = surface.top_inv[s]
            segments.append((s, (down_col, y), (down_col, ZERO)))
            segments.append((target, (down_col, ONE), (down_col, rows[HI])))
    return segments


def _band_curves(surface, rows, cols, max_segments, limit):
    # every edge contributes at least its connector segment
    max_edges = max(2, max_segments)
    out = []
    for nodes, moves in _simple_cycles(surface, max_edges, limit):
        segments = _realize(surface, nodes, moves, rows, cols)
        if len(segments) > max_segments:
            continue
        out.append(FlatCurve(surface, segments, label="band"))
    return out


def horizontal_band_cycles(surface: Origami, max_segments: int, limit=None):
    """Embedded curves avoiding y = 1/2 everywhere (so disjoint from ξ's core line)."""
    return _band_curves(surface, H_ROWS, H_COLS, max_segments, limit)


def vertical_band_cycles(surface: Origami, max_segments: int, limit=None):
    """Embedded curves avoiding x = 1/2 everywhere, by transposing."""
    transposed = _transposed(surface)
    out = []
    for curve in _band_curves(transposed, V_ROWS, V_COLS, max_segments, limit):
        swapped = [
            (sq, (a[1], a[0]), (b[1], b[0])) for sq, a, b in curve.segments
        ]
        out.append(FlatCurve(surface, swapped, label="band"))
    return out
