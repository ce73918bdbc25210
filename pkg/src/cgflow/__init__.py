"""Coarse curve-graph distance estimation along the diagonal flow on
square-tiled surfaces.

The package is organised bottom-up:

* ``forms``        exact deformed-length values and comparisons
* ``origami``      square-tiled surfaces given by a pair of permutations
* ``curves``       straight curves and segment traces through the squares
* ``cylinders``    flat cylinders in a rational direction, moduli, cores
* ``saddles``      saddle-connection enumeration up to a length bound
* ``arrangement``  exact planar subdivision, Euler counts, complements
* ``farey``        distance in the Farey graph (once-punctured torus)
* ``intersection`` crossing numbers, filling tests, distance brackets
* ``extremal``     extremal-length brackets, systole, thin-thick report
* ``widecurve``    the wide-curve choice along the flow
* ``toruspair``    marked-torus curve pairs as exact lattice geometry
* ``estimator``    breakpoint sampler and the distance estimate itself
* ``cli``          command-line harness, caching, report formats
"""

from .errors import (
    CGFlowError,
    DomainError,
    NotAPermutationError,
    NotOneCylinderError,
    NotTightenableError,
    NotTransitiveError,
    ProjectionUndefinedError,
    SurfaceMismatchError,
    UnsupportedSurfaceError,
)

__version__ = "0.1.0"

__all__ = [
    "CGFlowError",
    "DomainError",
    "NotAPermutationError",
    "NotOneCylinderError",
    "NotTightenableError",
    "NotTransitiveError",
    "ProjectionUndefinedError",
    "SurfaceMismatchError",
    "UnsupportedSurfaceError",
    "__version__",
]
