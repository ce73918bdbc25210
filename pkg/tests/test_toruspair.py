"""Marked torus pairs as exact lattice geometry, checked against the
origami conversion and plain brute force."""

import math
import random
from fractions import Fraction

import pytest

from cgflow.errors import DomainError
from cgflow.farey import farey_distance, normalize_slope
from cgflow.flow import FlowPoint
from cgflow.origami import Origami
from cgflow.toruspair import LatticeCurve, TorusPair, random_torus_pairs


def brute_shortest_sq(pair, t, box=60):
    """Smallest squared flowed length over lattice vectors in a box."""
    best = None
    et = math.exp(2 * t)
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            if (a, b) == (0, 0) or not pair.contains((a, b)):
                continue
            v = (a * a * et + b * b / et) / pair.N
            if best is None or v < best:
                best = v
    return best


class TestNormalForm:
    def test_frozen_example(self, pair58):
        assert (pair58.N, pair58.x, pair58.k) == (5, 3, 2)
        assert pair58.n == 5

    def test_intersection_number_is_N(self, pair58):
        from cgflow.farey import slope_intersection

        # Slope level and lattice level agree: the cores meet N times.
        assert slope_intersection((0, 1), (5, 8)) == 5
        assert pair58.intersection_of((5, 0), (0, 5)) == 5
        assert pair58.intersection_of((2, 1), (5, 0)) == 1

    def test_membership(self, pair58):
        # Lattice is a ≡ k b (mod N) with k = 2, N = 5.
        assert pair58.contains((2, 1))
        assert pair58.contains((5, 0))
        assert pair58.contains((0, 5))
        assert not pair58.contains((1, 1))
        assert not pair58.contains((0, 1))

    def test_rejects_degenerate_pairs(self):
        with pytest.raises(DomainError):
            TorusPair((0, 1), (0, 1))
        with pytest.raises(DomainError):
            TorusPair((1, 2), (2, 4))

    def test_unimodular_shuffle_invariance(self, rng):
        # Acting on both slopes by SL(2, Z) preserves the normal form.
        mats = [(1, 1, 0, 1), (1, 0, 1, 1), (0, -1, 1, 0), (2, 1, 1, 1)]
        for _ in range(25):
            p = TorusPair((0, 1), (rng.randint(1, 30), rng.randint(31, 60)))
            for m in mats:
                a, b, c, d = m
                xi = (a * p.xi[0] + b * p.xi[1], c * p.xi[0] + d * p.xi[1])
                zeta = (a * p.zeta[0] + b * p.zeta[1], c * p.zeta[0] + d * p.zeta[1])
                q = TorusPair(xi, zeta)
                assert (q.N, q.x, q.k) == (p.N, p.x, p.k)


class TestSlopeMaps:
    def test_core_curves_are_the_marked_pair(self, pair58):
        xi, zeta = pair58.core_curves()
        assert xi.vector == (5, 0)
        assert zeta.vector == (0, 5)
        assert pair58.to_slope(xi.vector) == (0, 1)
        assert pair58.to_slope(zeta.vector) == (5, 8)

    def test_to_slope_round_trips_lattice_vectors(self, pair58, rng):
        for _ in range(40):
            a, b = rng.randint(-20, 20), rng.randint(-20, 20)
            if (a, b) == (0, 0) or not pair58.contains((a, b)):
                continue
            s = pair58.to_slope((a, b))
            assert s == normalize_slope(*s)

    def test_farey_between_matches_slopes(self, pair58):
        xi, zeta = pair58.core_curves()
        assert pair58.farey_between(xi, zeta) == 3
        assert pair58.farey_between(xi, xi) == 0
        # Memoized path returns the same answer.
        assert pair58.farey_between(zeta, xi) == 3

    def test_oracle_distance(self, pair58):
        assert pair58.oracle_distance() == 3
        assert pair58.oracle_distance() == farey_distance((0, 1), (5, 8))


class TestLatticeGeometry:
    def test_core_lengths(self, pair58):
        xi, zeta = pair58.core_curves()
        # Vectors (5,0) and (0,5) on the area-N normalization: length
        # sqrt(25/5) = sqrt(5).
        assert xi.flat_length(0.0) == pytest.approx(math.sqrt(5))
        assert zeta.flat_length(0.0) == pytest.approx(math.sqrt(5))
        assert xi.flat_length(1.0) == pytest.approx(math.sqrt(5) * math.e)

    def test_systole_against_brute_force(self, rng):
        pairs = [
            TorusPair((0, 1), (5, 8)),
            TorusPair((0, 1), (3, 7)),
            TorusPair((1, 1), (7, 12)),
        ]
        for p in pairs:
            for t in (-1.0, -0.25, 0.0, 0.5, 1.0):
                got = p.systole_sq(t)
                want = brute_shortest_sq(p, t)
                assert got == pytest.approx(want, rel=1e-9), (p.xi, p.zeta, t)

    def test_shortest_vector_is_in_lattice(self, pair58):
        for t in (-1.0, 0.0, 1.0):
            v = pair58.shortest_vector(t)
            assert pair58.contains(v)

    def test_widest_mark_reciprocal_width(self, pair58):
        m = pair58.widest_mark(0.0, Fraction(1, 10))
        assert m.curve.vector == (2, 1)
        assert m.id_string() == "2:1:0"
        # Unit area: width = 1 / shortest length = 1 / sqrt(systole_sq).
        assert m.width == pytest.approx(1 / math.sqrt(pair58.systole_sq(0.0)))

    def test_minkowski_keeps_marks_wide(self, rng):
        # lambda_1^2 <= 2/sqrt(3) on a unit-area torus, so widths never
        # drop below ~0.93 and the default target 0.1 is always met.
        for p in random_torus_pairs(10, seed=5):
            m = p.widest_mark(0.0, Fraction(1, 10))
            assert m.width >= math.sqrt(math.sqrt(3) / 2) - 1e-9


class TestOrigamiCrossChecks:
    """The N-square origami realizes the same flat torus with N marked
    points; marking-independent quantities must agree."""

    def test_frozen_wire_form(self, pair58):
        o = pair58.origami()
        assert o.to_dict() == {"n": 5, "h": [[1, 2, 3, 4, 5]], "v": [[1, 4, 2, 5, 3]]}
        assert o.genus == 1
        assert o.num_marked_points == 5

    def test_core_lengths_match_lattice_model(self, pair58):
        from cgflow.cylinders import core_curves

        o = pair58.origami()
        h, v = core_curves(o)
        xi, zeta = pair58.core_curves()
        for t in (-1.0, 0.0, 1.0):
            assert h.flat_length(t) == pytest.approx(xi.flat_length(t), rel=1e-12)
            assert v.flat_length(t) == pytest.approx(zeta.flat_length(t), rel=1e-12)

    def test_origami_systole_dominates_lattice_systole(self):
        # Extra marked points squeeze every annulus, so the extremal
        # systole of the N-marked origami sits above the once-marked
        # value, while the witness curve's flat length can never beat
        # the lattice minimum.
        from cgflow.extremal import systole_estimate

        p = TorusPair((0, 1), (3, 7))
        o = p.origami()
        est = systole_estimate(FlowPoint(o, 0))
        assert est.value >= p.systole_sq(0.0) - 1e-9
        assert est.witness.length_form().value(0) >= math.sqrt(p.systole_sq(0.0)) - 1e-9


class TestRandomCorpus:
    def test_deterministic(self):
        a = random_torus_pairs(12, seed=3)
        b = random_torus_pairs(12, seed=3)
        assert [(p.xi, p.zeta) for p in a] == [(q.xi, q.zeta) for q in b]

    def test_count_and_distance_range(self):
        pairs = random_torus_pairs(20, low=3, high=15, seed=9)
        assert len(pairs) == 20
        for p in pairs:
            d = farey_distance(p.to_slope(p.core_curves()[0].vector),
                               p.to_slope(p.core_curves()[1].vector))
            assert 3 <= d <= 15

    def test_normal_forms_distinct_within_corpus(self):
        pairs = random_torus_pairs(30, seed=9)
        keys = {(p.N, p.x, p.k) for p in pairs}
        assert len(keys) == 30

    def test_exclusion_by_pair_and_by_slope(self):
        train = random_torus_pairs(15, seed=11)
        holdout = random_torus_pairs(15, seed=77, exclude=train)
        train_keys = {(p.N, p.x, p.k) for p in train}
        assert all((q.N, q.x, q.k) not in train_keys for q in holdout)
        # Excluding by raw zeta slope works too.
        other = random_torus_pairs(5, seed=77, exclude=[p.zeta for p in train])
        assert len(other) == 5

    def test_seed_eleven_prefix_frozen(self):
        pairs = random_torus_pairs(3, seed=11)
        got = [(p.xi, p.zeta, p.oracle_distance()) for p in pairs]
        assert got == [
            ((0, 1), (3607, 12303), 9),
            ((0, 1), (12, 17), 4),
            ((0, 1), (844510, 5290873), 12),
        ]

    def test_bad_arguments(self):
        assert random_torus_pairs(0) == []
        with pytest.raises(DomainError):
            random_torus_pairs(-1)
        with pytest.raises(DomainError):
            random_torus_pairs(5, low=7, high=3)


class TestLatticeCurveIdentity:
    def test_same_curve_ignores_sign(self, pair58):
        a = LatticeCurve(pair58, (2, 1))
        b = LatticeCurve(pair58, (-2, -1))
        assert a.same_curve(b)
        assert not a.same_curve(LatticeCurve(pair58, (4, 2)))

    def test_direction_and_slope(self, pair58):
        c = LatticeCurve(pair58, (-2, -1))
        assert c.direction == (2, 1)
        assert c.slope == pair58.to_slope((2, 1))
