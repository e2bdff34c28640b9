"""Exception types shared across the toolkit."""


class BiharmError(Exception):
    """Base class for all toolkit errors."""


class LambdaOnPositiveAxis(BiharmError):
    """Spectral parameter sits exactly on [0, inf); shift by +i*eps instead."""


class DomainError(BiharmError):
    """Argument outside the domain of a special function."""


class DiagonalSingularity(BiharmError):
    """Second-order kernel evaluated at coincident points where it diverges."""


class MissingC2(BiharmError):
    """d=2 bound requested without a numerically estimated constant."""


class StencilTouchesDiagonal(BiharmError):
    """Finite-difference stencil would cross the kernel diagonal."""


class UnboundedSupportWithoutTail(BiharmError):
    """Integral over an unbounded potential with no negligible tail found."""


class WrongDimension(BiharmError):
    """Operation defined only for a specific spatial dimension."""


class NotRadial(BiharmError):
    """Radial reduction requested for a non-radial potential."""


class DimensionUnsupported(BiharmError):
    """Kernel assembly not available for this dimension/potential combination."""


class NoConvergence(BiharmError):
    """Iteration exhausted its budget without meeting the tolerance."""


class DivergedOutOfRegion(BiharmError):
    """Root iteration left the search region."""


class NoRootInRegion(BiharmError):
    """No determinant zero found inside the scan region."""


class EmptySpectrum(BiharmError):
    """No eigenvalue found where the caller required one."""


class ConfigError(BiharmError):
    """Run configuration failed validation."""
