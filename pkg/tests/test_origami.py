"""Square-tiled surface combinatorics and the constructor error ladder."""

import random

import pytest

from cgflow.errors import (
    DomainError,
    NotAPermutationError,
    NotOneCylinderError,
    NotTransitiveError,
)
from cgflow.origami import Origami, SurfaceSig


def corner_count_oracle(surface):
    """Marked points counted by union-find over all 4n square corners.

    Independent of the commutator-orbit shortcut used by the class: the
    right gluing identifies (s,1,y) with (right[s],0,y), the top gluing
    (s,x,1) with (top[s],x,0), and within each square nothing is glued.
    """
    n = surface.n
    idx = {}
    for s in range(n):
        for cx in (0, 1):
            for cy in (0, 1):
                idx[(s, cx, cy)] = len(idx)
    parent = list(range(len(idx)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    for s in range(n):
        r = surface.right[s]
        t = surface.top[s]
        for cy in (0, 1):
            union(idx[(s, 1, cy)], idx[(r, 0, cy)])
        for cx in (0, 1):
            union(idx[(s, cx, 1)], idx[(t, cx, 0)])
    return len({find(a) for a in range(len(idx))})


class TestConstruction:
    def test_unit_torus(self, torus):
        assert torus.n == 1
        assert torus.genus == 1
        assert torus.num_marked_points == 1
        assert torus.complexity == 1
        assert torus.surface_sig == SurfaceSig(1, 1)

    def test_one_line_and_cycles_agree(self, genus2):
        direct = Origami([2, 3, 4, 1], [2, 4, 1, 3])
        assert direct == genus2

    def test_genus_two_example(self, genus2):
        assert genus2.n == 4
        assert genus2.genus == 2
        assert genus2.num_marked_points == 2
        assert genus2.complexity == 5
        # One regular marked point and one cone point of angle 6 pi; the
        # excess angle sum (1 - 1) + (3 - 1) = 2 matches 2g - 2.
        turns = sorted(
            genus2.cone_angle_turns(v) for v in range(genus2.num_marked_points)
        )
        assert turns == [1, 3]

    def test_wire_round_trip(self, genus2):
        d = genus2.to_dict()
        assert d == {"n": 4, "h": [[1, 2, 3, 4]], "v": [[1, 2, 4, 3]]}
        assert Origami.from_dict(d) == genus2

    def test_from_cycles_fixed_points(self):
        assert Origami.from_cycles([[1]], [[1]], 1) == Origami([1], [1])

    def test_repr_mentions_one_line_notation(self, genus2):
        assert "right=[2, 3, 4, 1]" in repr(genus2)


class TestErrorLadder:
    def test_not_a_permutation(self):
        with pytest.raises(NotAPermutationError):
            Origami([1, 1], [2, 1])
        with pytest.raises(NotAPermutationError):
            Origami([3, 1], [2, 1])
        with pytest.raises(NotAPermutationError):
            Origami([], [])
        with pytest.raises(NotAPermutationError):
            Origami.from_cycles([[1, 2], [2]], [[1, 2]], 2)

    def test_not_transitive(self):
        # Two disjoint tori: both rows are valid permutations first.
        with pytest.raises(NotTransitiveError):
            Origami([1, 2], [1, 2])

    def test_not_one_cylinder(self):
        # Connected but the horizontal direction splits into two cylinders.
        with pytest.raises(NotOneCylinderError):
            Origami([1, 2], [2, 1])

    def test_permutation_error_outranks_transitivity(self):
        with pytest.raises(NotAPermutationError):
            Origami([1, 1], [1, 2])

    def test_bad_wire_records(self):
        with pytest.raises(NotAPermutationError):
            Origami.from_dict({"n": 2, "h": [[1, 2]]})
        with pytest.raises(NotAPermutationError):
            Origami.from_dict({"n": 0, "h": [], "v": []})
        with pytest.raises(NotAPermutationError):
            Origami.from_dict({"n": True, "h": [[1]], "v": [[1]]})

    def test_surface_sig_guards(self):
        with pytest.raises(DomainError):
            SurfaceSig(0, 3)  # complexity 0
        with pytest.raises(DomainError):
            SurfaceSig(-1, 5)


def random_one_cylinder(rng, n):
    """h is the standard n-cycle, v a random conjugate of it.

    Any conjugate of an n-cycle is an n-cycle, so both axes are single
    cylinders and the surface is automatically connected.
    """
    sigma = list(range(1, n + 1))
    rng.shuffle(sigma)
    v = [0] * n
    for i in range(n):
        v[sigma[i] - 1] = sigma[(i + 1) % n]
    h = [i % n + 1 for i in range(1, n + 1)]
    return Origami(h, v)


class TestTopologyInvariants:
    def test_vertex_orbits_partition_squares(self, genus2):
        orbits = genus2.vertex_orbits()
        flat = sorted(s for orb in orbits for s in orb)
        assert flat == list(range(genus2.n))

    def test_corner_class_consistency(self, genus2):
        # Corner (1,0) of s is corner (0,0) of right[s].
        for s in range(genus2.n):
            assert genus2.corner_class(s, 1, 0) == genus2.vertex_class_of(
                genus2.right[s]
            )
            assert genus2.corner_class(s, 0, 1) == genus2.vertex_class_of(
                genus2.top[s]
            )
        with pytest.raises(DomainError):
            genus2.corner_class(0, 2, 0)

    def test_random_surfaces_satisfy_euler_identity(self):
        rng = random.Random(909)
        for _ in range(120):
            n = rng.randint(1, 50)
            s = random_one_cylinder(rng, n)
            v = s.num_marked_points
            assert corner_count_oracle(s) == v
            assert v - n == 2 - 2 * s.genus
            assert sum(s.cone_angle_turns(k) for k in range(v)) == n
            assert len(s.horizontal_cycles()) == 1
            assert len(s.vertical_cycles()) == 1
            assert s.complexity >= 1

    def test_key_equality_hash(self, torus):
        assert Origami([1], [1]) == torus
        assert hash(Origami([1], [1])) == hash(torus)
        assert Origami([2, 1], [2, 1]) != torus
