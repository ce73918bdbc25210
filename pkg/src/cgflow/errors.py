"""Exception types shared across the package."""


class CGFlowError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CGFlowError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class NotAPermutationError(DomainError):
    """A square labelling does not describe a bijection on 1..n."""


class NotTransitiveError(DomainError):
    """The gluing permutations do not act transitively, so the surface
    would be disconnected."""


class NotOneCylinderError(DomainError):
    """The surface is not horizontally and vertically one-cylinder."""


class UnsupportedSurfaceError(CGFlowError, NotImplementedError):
    """The requested operation is only available for a narrower class of
    surfaces than the one supplied."""


class SurfaceMismatchError(DomainError):
    """Two objects living on different surfaces were combined."""


class NotTightenableError(CGFlowError, ValueError):
    """A curve has no straight representative that this package can
    produce, so flat-length queries must be refused rather than guessed."""


class ProjectionUndefinedError(DomainError):
    """An annular coefficient was requested for a curve that does not
    cross the annulus core."""
