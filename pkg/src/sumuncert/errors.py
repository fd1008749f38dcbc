"""Exception types shared across the package.

Validation never repairs its input: a non-Hermitian matrix is not
symmetrized, an unnormalized vector is not rescaled.  Each defect gets
its own exception so callers (and the CLI) can report precisely.
"""


class SumUncertError(Exception):
    """Base class for every error raised by this package."""


class NonFiniteError(SumUncertError):
    """Input contains NaN or infinity."""


class NotHermitianError(SumUncertError):
    """Matrix is not Hermitian within tolerance."""

    def __init__(self, message, max_deviation=None):
        super().__init__(message)
        self.max_deviation = max_deviation


class NotNormalizedError(SumUncertError):
    """State vector norm differs from 1 beyond tolerance."""

    def __init__(self, message, norm=None):
        super().__init__(message)
        self.norm = norm


class NotDensityMatrixError(SumUncertError):
    """Density matrix fails Hermiticity, unit trace, or positivity.

    ``reason`` is one of "hermiticity", "trace", "negativity".
    """

    def __init__(self, message, reason):
        super().__init__(message)
        self.reason = reason


class NotPSDError(SumUncertError):
    """Matrix has an eigenvalue below the PSD tolerance floor."""


class DimensionMismatchError(SumUncertError):
    """Operands live in different Hilbert-space dimensions."""


class NegativeVarianceError(SumUncertError):
    """Computed variance fell below the roundoff clamp window."""


class BlochVectorTooLongError(SumUncertError):
    """Bloch vector norm exceeds 1 beyond tolerance."""


class NTooSmallError(SumUncertError):
    """Operation needs more observables than were supplied."""


class UnknownFamilyError(SumUncertError):
    """Named observable/state family is not registered."""


class NumericalCorruptionError(SumUncertError):
    """An internal consistency check failed (imaginary residue, identity)."""


class ConvergenceError(SumUncertError):
    """Iterative eigensolver did not converge within its sweep budget."""
