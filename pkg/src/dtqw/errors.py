"""Exception types raised across the package."""


class WalkError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(WalkError, ValueError):
    """A numeric parameter is non-finite or otherwise out of contract."""


class InvalidDimensionError(WalkError, ValueError):
    """A matrix or vector has a dimension the operation cannot accept."""


class InvalidInputError(WalkError, ValueError):
    """Structurally invalid input (empty trajectory, malformed config, ...)."""


class AngleTableError(WalkError, ValueError):
    """A disorder angle table is missing entries or has the wrong length."""


class LatticeTooSmallError(WalkError, ValueError):
    """The lattice cannot hold the requested number of steps without boundary contact."""


class BoundaryOverflowError(WalkError, RuntimeError):
    """Nonzero amplitude would be shifted off the edge of the lattice."""


class NumericalError(WalkError, RuntimeError):
    """A numerical invariant (norm, trace, eigenvalue positivity) broke beyond tolerance."""
