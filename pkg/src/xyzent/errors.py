"""Exception types shared across the package."""


class XyzentError(Exception):
    """Base class for all library errors."""


class NonFiniteInput(XyzentError, ValueError):
    """A model parameter is NaN or infinite."""


class NonHermitianInput(XyzentError, ValueError):
    """Matrix deviates from Hermiticity beyond tolerance."""


class NonPhysicalState(XyzentError, ValueError):
    """Density matrix fails the trace or positivity requirements."""


class InvalidSpectrum(XyzentError, ValueError):
    """Probability spectrum is not normalized or has genuine negativity."""


class InvalidTemperature(XyzentError, ValueError):
    """Temperature is negative or non-finite."""


class InvalidMixture(XyzentError, ValueError):
    """Mixture weights are not a probability vector."""


class DegenerateBasis(XyzentError, ValueError):
    """Closed form requested for a degenerate eigenbasis with unequal
    weights on the degenerate pair, where no single convention is exact."""


class OutOfRange(XyzentError, ValueError):
    """Scalar argument outside its documented domain."""


class NoConvergence(XyzentError, RuntimeError):
    """Self-consistent solver failed to converge from every seed."""
