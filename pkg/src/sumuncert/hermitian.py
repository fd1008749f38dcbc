"""Hermitian operator core: validated types, moments, HS-space helpers.

Everything downstream (bounds, sweeps, verification) funnels its moment
computations through `_stack_moments`, so there is a single numerical
path for expectations and variances regardless of batch size or of
which kernel backend is active.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import (
    DimensionMismatchError,
    NegativeVarianceError,
    NonFiniteError,
    NotDensityMatrixError,
    NotHermitianError,
    NotNormalizedError,
    NotPSDError,
    NumericalCorruptionError,
)

# Relative Hermiticity / state tolerances; absolute clamp windows.
HERMITICITY_TOL = 1e-10
STATE_TOL = 1e-10
IMAG_TOL = 1e-10
VARIANCE_CLAMP = 1e-10
PSD_FLOOR = -1e-10
PURITY_TOL = 1e-10


def _as_complex_matrix(data) -> np.ndarray:
    arr = np.array(data, dtype=np.complex128, order="C")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise NonFiniteError("matrix contains NaN or infinity")
    return arr


def _hermiticity_deviation(arr: np.ndarray) -> float:
    scale = max(1.0, float(np.max(np.abs(arr), initial=0.0)))
    dev = float(np.max(np.abs(arr - arr.conj().T), initial=0.0))
    return dev / scale


@dataclass(frozen=True)
class Observable:
    """A Hermitian matrix.  Build through `validate_observable`; the
    constructor itself does not re-check (internal code forms sums of
    already-validated observables, which stay Hermitian)."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __add__(self, other: "Observable") -> "Observable":
        _require_same_dim(self.dim, other.dim)
        return Observable(self.matrix + other.matrix)

    def __sub__(self, other: "Observable") -> "Observable":
        _require_same_dim(self.dim, other.dim)
        return Observable(self.matrix - other.matrix)


@dataclass(frozen=True)
class QuantumState:
    """A pure state (``kind="pure"``, vector set) or a density matrix
    (``kind="mixed"``, density set).  ``is_pure`` records whether the
    state is physically pure, which a density representation can be."""

    kind: str
    vector: np.ndarray | None
    density: np.ndarray | None
    is_pure: bool

    @property
    def dim(self) -> int:
        if self.kind == "pure":
            return self.vector.shape[0]
        return self.density.shape[0]

    def density_matrix(self) -> np.ndarray:
        """The state as a density matrix, whichever way it is stored."""
        if self.kind == "pure":
            return np.outer(self.vector, np.conj(self.vector))
        return self.density


@dataclass(frozen=True)
class HSVector:
    """An element of the Hilbert-Schmidt space of d x d complex matrices."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _require_same_dim(a: int, b: int):
    if a != b:
        raise DimensionMismatchError(f"dimension mismatch: {a} vs {b}")


def validate_observable(matrix) -> Observable:
    """Check square/finite/Hermitian and wrap.  Never symmetrizes."""
    arr = _as_complex_matrix(matrix)
    dev = _hermiticity_deviation(arr)
    if dev > HERMITICITY_TOL:
        raise NotHermitianError(
            f"matrix is not Hermitian: max relative deviation {dev:.3e}",
            max_deviation=dev,
        )
    arr.setflags(write=False)
    return Observable(arr)


def validate_state(raw) -> QuantumState:
    """Validate a state vector (1-D input) or density matrix (2-D input).

    Vectors must have unit norm; densities must be Hermitian, unit
    trace, and positive semidefinite, each failure reported separately.
    Never renormalizes.
    """
    arr = np.array(raw, dtype=np.complex128, order="C")
    if arr.ndim == 1:
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise NonFiniteError("state vector contains NaN or infinity")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > STATE_TOL:
            raise NotNormalizedError(
                f"state vector norm is {norm!r}, not 1", norm=norm
            )
        arr.setflags(write=False)
        return QuantumState(kind="pure", vector=arr, density=None, is_pure=True)

    if arr.ndim != 2:
        raise DimensionMismatchError(
            f"state must be a vector or a square matrix, got shape {arr.shape}"
        )
    arr = _as_complex_matrix(arr)
    dev = _hermiticity_deviation(arr)
    if dev > HERMITICITY_TOL:
        raise NotDensityMatrixError(
            f"density matrix is not Hermitian: max relative deviation {dev:.3e}",
            reason="hermiticity",
        )
    trace = complex(np.trace(arr))
    if abs(trace - 1.0) > STATE_TOL:
        raise NotDensityMatrixError(
            f"density matrix trace is {trace!r}, not 1", reason="trace"
        )
    eigvals, _ = _backend.jacobi_eigh(arr)
    low = float(eigvals[0])
    if low < PSD_FLOOR:
        raise NotDensityMatrixError(
            f"density matrix has negative eigenvalue {low:.3e}", reason="negativity"
        )
    arr.setflags(write=False)
    purity = float(np.sum(np.abs(arr) ** 2))
    return QuantumState(
        kind="mixed", vector=None, density=arr, is_pure=purity >= 1.0 - PURITY_TOL
    )


def _stack_moments(mats: np.ndarray, state: QuantumState):
    """Means and second moments of a (m, d, d) Hermitian stack in ``state``.

    Single entry point for both state representations and both kernel
    backends; raises if the imaginary residue of any mean or trace
    exceeds the corruption tolerance.
    """
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    _require_same_dim(mats.shape[-1], state.dim)
    if state.kind == "pure":
        means, seconds, resid = _backend.moments_pure(mats, state.vector)
    else:
        means, seconds, resid = _backend.moments_density(mats, state.density)
    if resid > IMAG_TOL:
        raise NumericalCorruptionError(
            f"imaginary residue {resid:.3e} exceeds {IMAG_TOL:.0e}"
        )
    return means, seconds


def variance_stack(mats: np.ndarray, state: QuantumState) -> np.ndarray:
    """Variances of a stack of Hermitian matrices, clamped at zero.

    Values in [-1e-10, 0) are roundoff from the mean subtraction and
    clamp to exactly 0; anything lower raises.
    """
    means, seconds = _stack_moments(mats, state)
    var = seconds - means * means
    worst = float(np.min(var, initial=0.0))
    if worst < -VARIANCE_CLAMP:
        raise NegativeVarianceError(
            f"variance {worst:.3e} is below the clamp window"
        )
    np.maximum(var, 0.0, out=var)
    return var


def expectation(obs: Observable, state: QuantumState) -> float:
    """<A> in the given state (real part; imaginary residue checked)."""
    means, _ = _stack_moments(obs.matrix[np.newaxis], state)
    return float(means[0])


def variance(obs: Observable, state: QuantumState) -> float:
    """(Delta A)^2 = <A^2> - <A>^2, clamped at zero."""
    return float(variance_stack(obs.matrix[np.newaxis], state)[0])


def stddev(obs: Observable, state: QuantumState) -> float:
    """Delta A, the square root of the clamped variance."""
    return float(np.sqrt(variance(obs, state)))


def commutator_expectation(a: Observable, b: Observable, state: QuantumState) -> float:
    """|<[A, B]>| in the given state.

    The commutator of Hermitians is anti-Hermitian, so the raw value is
    purely imaginary; the modulus is returned without a residue check.
    """
    _require_same_dim(a.dim, b.dim)
    _require_same_dim(a.dim, state.dim)
    comm = a.matrix @ b.matrix - b.matrix @ a.matrix
    if state.kind == "pure":
        val = complex(np.vdot(state.vector, comm @ state.vector))
    else:
        val = complex(np.einsum("ij,ji->", state.density, comm))
    return abs(val)


def psd_sqrt(rho) -> np.ndarray:
    """Hermitian square root of a PSD matrix via its eigensystem.

    Eigenvalues in [-1e-10, 0) clamp to 0; anything lower raises
    NotPSDError.  Satisfies ||S @ S - rho|| <= 1e-10 for well-formed
    input.
    """
    arr = _as_complex_matrix(rho)
    w, v = _backend.jacobi_eigh(arr)
    low = float(w[0])
    if low < PSD_FLOOR:
        raise NotPSDError(f"matrix has eigenvalue {low:.3e} below the PSD floor")
    w = np.maximum(w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def hs_norm(vec: HSVector) -> float:
    """Hilbert-Schmidt norm sqrt(Tr(M^H M)) = Frobenius norm."""
    return float(np.linalg.norm(vec.matrix))


def hs_add(a: HSVector, b: HSVector) -> HSVector:
    """Sum of two HS vectors (entrywise matrix sum)."""
    _require_same_dim(a.dim, b.dim)
    return HSVector(a.matrix + b.matrix)
