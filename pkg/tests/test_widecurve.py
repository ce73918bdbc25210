"""Marking the widest cylinder along the flow."""

import math
from fractions import Fraction

import pytest

from cgflow.cylinders import cylinders_in_direction
from cgflow.errors import DomainError, SurfaceMismatchError
from cgflow.extremal import flat_length
from cgflow.flow import FlowPoint
from cgflow.saddles import admissible_directions
from cgflow.widecurve import annulus_width, mark_widest, widest_cylinder

DELTA = Fraction(1, 10)


class TestWidestCylinder:
    def test_torus_frozen_choices(self, torus):
        # At t = 0 the tie between the axes breaks to the horizontal; for
        # t > 0 the vertical cylinder fattens, for t < 0 the horizontal.
        assert widest_cylinder(FlowPoint(torus, 0)).id_string() == "1:0:0"
        assert widest_cylinder(FlowPoint(torus, 1)).id_string() == "0:1:0"
        assert widest_cylinder(FlowPoint(torus, -1)).id_string() == "1:0:0"

    def test_flow_symmetry_on_symmetric_surface(self, genus2):
        # Exchanging h and v matches t -> -t on this surface.
        for t in (Fraction(1, 2), 1, 2):
            a = widest_cylinder(FlowPoint(genus2, t))
            b = widest_cylinder(FlowPoint(genus2, -t))
            ax, ay = a.direction
            bx, by = b.direction
            assert (ax, ay) == (by, bx)

    def test_determinism(self, genus2):
        P = FlowPoint(genus2, Fraction(3, 10))
        first = widest_cylinder(P).id_string()
        for _ in range(3):
            assert widest_cylinder(P).id_string() == first

    def test_actually_the_widest(self, genus2):
        # No admissible direction hides a wider cylinder.
        for t in (0, Fraction(1, 2), -1):
            P = FlowPoint(genus2, t)
            best = widest_cylinder(P)
            w = best.width().value(t)
            for d in admissible_directions(P, 6):
                for c in cylinders_in_direction(genus2, d):
                    assert c.width().value(t) <= w + 1e-12

    def test_budget_cap_raises_when_exhausted(self, genus2):
        with pytest.raises(DomainError):
            widest_cylinder(FlowPoint(genus2, 0), bound_cap=Fraction(1, 1000))


class TestMarkWidest:
    def test_mark_records_flow_time_and_width(self, torus):
        m = mark_widest(FlowPoint(torus, 0), DELTA)
        assert m.kind == "flat-cylinder"
        assert m.t == 0
        assert m.id_string() == "1:0:0"
        assert m.width == pytest.approx(1.0)
        assert m.target == pytest.approx(float(DELTA))

    def test_achieved_delta_on_square_torus(self, torus):
        # Width 1 at t = 0 sits far above the target delta.
        m = mark_widest(FlowPoint(torus, 0), DELTA)
        assert m.achieved_delta >= float(DELTA)
        assert not m.below_target

    def test_below_target_flag(self, genus2):
        # Absurd target: no cylinder is 10-wide on a unit-area surface.
        m = mark_widest(FlowPoint(genus2, 0), 10)
        assert m.below_target
        assert m.achieved_delta < 10

    def test_curve_is_cylinder_core(self, genus2):
        m = mark_widest(FlowPoint(genus2, Fraction(1, 2)), DELTA)
        assert m.curve.same_curve(m.cylinder.core)

    def test_sc_bound_threads_through(self, genus2):
        with pytest.raises(DomainError):
            mark_widest(FlowPoint(genus2, 0), DELTA, sc_bound=Fraction(1, 1000))

    def test_widths_match_reported_cylinder(self, genus2):
        for t in (-1, 0, 1):
            m = mark_widest(FlowPoint(genus2, t), DELTA)
            assert m.width == pytest.approx(m.cylinder.width().value(t), rel=1e-12)


class TestAnnulusWidth:
    def test_equals_cylinder_height(self, torus, torus_curve):
        P = FlowPoint(torus, 0)
        assert annulus_width(torus_curve(1, 0), P) == pytest.approx(1.0)
        # (1,1) cylinder: area 1, circumference sqrt(2).
        assert annulus_width(torus_curve(1, 1), P) == pytest.approx(1 / math.sqrt(2))

    def test_flows_with_the_curve(self, torus, torus_curve):
        h = torus_curve(1, 0)
        for t in (-1, 0, 1):
            assert annulus_width(h, FlowPoint(torus, t)) == pytest.approx(math.exp(-t))

    def test_surface_mismatch_rejected(self, genus2, torus_curve):
        with pytest.raises(SurfaceMismatchError):
            annulus_width(torus_curve(1, 0), FlowPoint(genus2, 0))

    def test_width_reciprocal_to_flat_length_on_torus(self, torus, torus_curve):
        # Unit area: width * flat length = 1 for every slope.
        P = FlowPoint(torus, Fraction(1, 2))
        for pq in ((1, 0), (0, 1), (1, 1), (2, 1), (1, 2)):
            c = torus_curve(*pq)
            lw = annulus_width(c, P) * flat_length(c, P).value(P.t)
            assert lw == pytest.approx(1.0, rel=1e-12)
