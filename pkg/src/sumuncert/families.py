"""Built-in observables, parametrized state families, random instances.

Two named families drive the sweep machinery:

* ``qubit-paper``: Pauli triple {X, Y, Z} with the Bloch-circle states
  r(theta) = (cos(theta)/sqrt(2), cos(theta)/sqrt(2), sin(theta)),
  which are pure for every theta.
* ``qutrit-paper``: spin-1 triple {J_x, J_y, J_z} with the pure states
  cos(theta/2)|0> + sin(theta/2)|2>.
"""

import numpy as np

from .errors import (
    BlochVectorTooLongError,
    DimensionMismatchError,
    NonFiniteError,
    UnknownFamilyError,
)
from .hermitian import Observable, QuantumState, validate_observable, validate_state
from .rng import RandomStream

BLOCH_TOL = 1e-10

_SQRT2 = np.sqrt(2.0)

_PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli(which: str) -> Observable:
    """One of the Pauli observables "X", "Y", "Z"."""
    try:
        mat = _PAULI[which]
    except KeyError:
        raise UnknownFamilyError(f"unknown Pauli label {which!r}") from None
    return validate_observable(mat)


def spin1_ops() -> tuple[Observable, Observable, Observable]:
    """The spin-1 angular momentum triple (J_x, J_y, J_z)."""
    jx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128) / _SQRT2
    jy = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=np.complex128) / _SQRT2
    jz = np.array([[1, 0, 0], [0, 0, 0], [0, 0, -1]], dtype=np.complex128)
    return tuple(validate_observable(m) for m in (jx, jy, jz))


def bloch_state(r) -> QuantumState:
    """Qubit state with Bloch vector ``r = (rx, ry, rz)``.

    rho = (I + rx X + ry Y + rz Z) / 2.  Requires ||r|| <= 1 (within
    tolerance); the state is flagged pure exactly when ||r|| = 1 within
    tolerance.  The construction satisfies the density invariants, so
    no separate validation pass is run.
    """
    vec = np.asarray(r, dtype=np.float64)
    if vec.shape != (3,):
        raise DimensionMismatchError(
            f"Bloch vector must have 3 entries, got shape {vec.shape}"
        )
    if not np.all(np.isfinite(vec)):
        raise NonFiniteError("Bloch vector contains NaN or infinity")
    norm = float(np.linalg.norm(vec))
    if norm > 1.0 + BLOCH_TOL:
        raise BlochVectorTooLongError(f"Bloch vector norm {norm!r} exceeds 1")
    rx, ry, rz = (float(x) for x in vec)
    rho = 0.5 * np.array(
        [[1.0 + rz, rx - 1j * ry], [rx + 1j * ry, 1.0 - rz]], dtype=np.complex128
    )
    rho.setflags(write=False)
    return QuantumState(
        kind="mixed", vector=None, density=rho, is_pure=abs(norm - 1.0) <= BLOCH_TOL
    )


def qubit_family(theta: float) -> QuantumState:
    """Bloch-circle state at angle theta; pure for every theta."""
    c = np.cos(theta)
    return bloch_state((c / _SQRT2, c / _SQRT2, np.sin(theta)))


def qutrit_family(theta: float) -> QuantumState:
    """Pure qutrit state cos(theta/2)|0> + sin(theta/2)|2>."""
    half = 0.5 * theta
    return validate_state(np.array([np.cos(half), 0.0, np.sin(half)]))


_FAMILIES = {
    "qubit-paper": {
        "observables": lambda: (pauli("X"), pauli("Y"), pauli("Z")),
        "labels": ("X", "Y", "Z"),
        "state": qubit_family,
        "dim": 2,
    },
    "qutrit-paper": {
        "observables": spin1_ops,
        "labels": ("J_x", "J_y", "J_z"),
        "state": qutrit_family,
        "dim": 3,
    },
}


def family_names() -> tuple[str, ...]:
    return tuple(sorted(_FAMILIES))


def _family(name: str) -> dict:
    try:
        return _FAMILIES[name]
    except KeyError:
        known = ", ".join(family_names())
        raise UnknownFamilyError(f"unknown family {name!r} (known: {known})") from None


def family_observables(name: str) -> tuple[Observable, ...]:
    """The observable triple registered under ``name``."""
    return tuple(_family(name)["observables"]())


def family_labels(name: str) -> tuple[str, ...]:
    return _family(name)["labels"]


def family_state(name: str, theta: float) -> QuantumState:
    """The family's state at parameter ``theta``."""
    return _family(name)["state"](theta)


def random_hermitian(dim: int, seed: int, scale: float = 1.0) -> Observable:
    """Random Hermitian matrix (G + G^H)/2 scaled, G complex Gaussian."""
    stream = RandomStream(seed)
    g = stream.complex_gaussians(dim * dim).reshape(dim, dim)
    return validate_observable((g + g.conj().T) * (0.5 * scale))


def random_pure(dim: int, seed: int) -> QuantumState:
    """Haar-ish random pure state: normalized complex Gaussian vector."""
    stream = RandomStream(seed)
    v = stream.complex_gaussians(dim)
    return validate_state(v / np.linalg.norm(v))


def random_density(dim: int, seed: int) -> QuantumState:
    """Random full-rank density matrix G G^H / Tr(G G^H).

    Hermitian PSD with unit trace by construction, so the eigenvalue
    check of `validate_state` is skipped (it would dominate the cost of
    large verification campaigns).
    """
    stream = RandomStream(seed)
    g = stream.complex_gaussians(dim * dim).reshape(dim, dim)
    m = g @ g.conj().T
    rho = m / np.trace(m).real
    rho.setflags(write=False)
    purity = float(np.sum(np.abs(rho) ** 2))
    return QuantumState(
        kind="mixed", vector=None, density=rho, is_pure=purity >= 1.0 - 1e-10
    )
