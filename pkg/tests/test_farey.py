"""Slope graph distance: continued-fraction route against the box BFS."""

import random
from fractions import Fraction
from math import gcd

import pytest

from cgflow.errors import DomainError
from cgflow.farey import (
    farey_distance,
    farey_distance_bfs,
    is_farey_edge,
    normalize_slope,
    slope_intersection,
    slope_of_fraction,
)


class TestSlopes:
    def test_normalize_reduces_and_fixes_sign(self):
        assert normalize_slope(-2, -4) == (1, 2)
        assert normalize_slope(3, -6) == (-1, 2)
        assert normalize_slope(0, 5) == (0, 1)
        assert normalize_slope(-4, 0) == (1, 0)

    def test_zero_slope_rejected(self):
        with pytest.raises(DomainError):
            normalize_slope(0, 0)

    def test_slope_of_fraction(self):
        assert slope_of_fraction(Fraction(5, 8)) == (5, 8)
        assert slope_of_fraction((10, 16)) == (5, 8)
        assert slope_of_fraction(2) == (2, 1)

    def test_intersection_is_determinant(self):
        assert slope_intersection((1, 2), (3, 5)) == 1
        assert slope_intersection((1, 0), (0, 1)) == 1
        assert slope_intersection((2, 5), (2, 5)) == 0

    def test_edge_iff_unit_determinant(self):
        assert is_farey_edge((0, 1), (1, 1))
        assert is_farey_edge((1, 0), (3, 1))
        assert not is_farey_edge((0, 1), (2, 5))


class TestDistance:
    def test_frozen_small_cases(self):
        assert farey_distance((0, 1), (0, 1)) == 0
        assert farey_distance((1, 0), (0, 1)) == 1
        assert farey_distance((0, 1), (1, 2)) == 1
        assert farey_distance((0, 1), (2, 5)) == 2
        assert farey_distance((0, 1), (5, 8)) == 3

    def test_symmetry(self, rng):
        for _ in range(60):
            a = normalize_slope(rng.randint(-20, 20), rng.randint(1, 20))
            b = normalize_slope(rng.randint(-20, 20), rng.randint(1, 20))
            assert farey_distance(a, b) == farey_distance(b, a)

    def test_triangle_inequality(self, rng):
        for _ in range(40):
            pts = [
                normalize_slope(rng.randint(-15, 15), rng.randint(1, 15))
                for _ in range(3)
            ]
            a, b, c = pts
            assert farey_distance(a, c) <= farey_distance(a, b) + farey_distance(b, c)

    def test_distance_one_iff_edge(self, rng):
        for _ in range(60):
            a = normalize_slope(rng.randint(-12, 12), rng.randint(1, 12))
            b = normalize_slope(rng.randint(-12, 12), rng.randint(1, 12))
            if a == b:
                continue
            assert (farey_distance(a, b) == 1) == is_farey_edge(a, b)

    def test_unimodular_invariance(self, rng):
        # Applying any integer matrix of determinant +-1 to both slopes
        # is a graph automorphism, so distances must not move.
        mats = [(1, 1, 0, 1), (1, 0, 1, 1), (0, -1, 1, 0), (2, 1, 1, 1), (3, 2, 1, 1)]
        for _ in range(40):
            a = normalize_slope(rng.randint(-10, 10), rng.randint(1, 10))
            b = normalize_slope(rng.randint(-10, 10), rng.randint(1, 10))
            d = farey_distance(a, b)
            for p, q, r, s in mats:
                assert abs(p * s - q * r) == 1
                ga = normalize_slope(p * a[0] + q * a[1], r * a[0] + s * a[1])
                gb = normalize_slope(p * b[0] + q * b[1], r * b[0] + s * b[1])
                assert farey_distance(ga, gb) == d


class TestAgainstBFS:
    """The CF recursion and the box BFS are independent routes."""

    def test_exhaustive_small_box(self):
        # Denominators to 5 here; the acceptance suite runs the larger sweep.
        slopes = [(1, 0)]
        for den in range(1, 6):
            for num in range(-5, 6):
                if gcd(abs(num), den) == 1:
                    slopes.append((num, den))
        for a in slopes:
            for b in slopes:
                fast = farey_distance(a, b)
                slow = farey_distance_bfs(a, b, 40)
                assert slow == fast, (a, b, fast, slow)

    def test_random_pairs(self, rng):
        for _ in range(25):
            a = normalize_slope(rng.randint(-30, 30), rng.randint(1, 30))
            b = normalize_slope(rng.randint(-30, 30), rng.randint(1, 30))
            assert farey_distance_bfs(a, b, 400) == farey_distance(a, b)

    def test_bfs_reports_none_when_boxed_out(self):
        # A geodesic from 0/1 to 5/8 passes through slopes the unit box
        # cannot hold.
        assert farey_distance_bfs((0, 1), (5, 8), 1) is None
