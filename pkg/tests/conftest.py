import random
from fractions import Fraction

import pytest

from cgflow.curves import FlatCurve
from cgflow.errors import DomainError
from cgflow.origami import Origami
from cgflow.toruspair import TorusPair

# Offsets tried when closing a slope curve on the unit torus.  The orbit
# of a rational offset can run into a corner for some slopes, so a few
# candidates are needed; the first that closes wins, deterministically.
_OFFSETS = (
    Fraction(1, 2),
    Fraction(1, 3),
    Fraction(2, 5),
    Fraction(1, 7),
    Fraction(3, 7),
    Fraction(5, 11),
    Fraction(7, 13),
)


def close_torus_curve(surface, p, q):
    """A straight closed curve of slope (p, q) on the one-square torus.

    The ray launches from the left edge for rightward slopes and from
    the right edge for leftward ones, so it always enters the square.
    """
    from cgflow.curves import canonical_direction

    p, q = canonical_direction(p, q)
    for off in _OFFSETS:
        if q == 0:
            start, d = (Fraction(0), off), (1, 0)
        elif p == 0:
            start, d = (off, Fraction(0)), (0, 1)
        elif p > 0:
            start, d = (Fraction(0), off), (p, q)
        else:
            start, d = (Fraction(1), off), (p, q)
        try:
            return FlatCurve.closed_from_ray(surface, 0, start, d, max_steps=20000)
        except DomainError:
            continue
    raise AssertionError(f"no closing offset found for slope ({p}, {q})")


@pytest.fixture(scope="session")
def torus():
    return Origami([1], [1])


@pytest.fixture(scope="session")
def genus2():
    # One horizontal and one vertical cylinder, genus 2, two cone points.
    return Origami.from_cycles(((1, 2, 3, 4),), ((1, 2, 4, 3),), 4)


@pytest.fixture
def torus_curve(torus):
    def make(p, q):
        return close_torus_curve(torus, p, q)

    return make


@pytest.fixture
def pair58():
    return TorusPair((0, 1), (5, 8))


@pytest.fixture
def rng():
    return random.Random(20260818)
