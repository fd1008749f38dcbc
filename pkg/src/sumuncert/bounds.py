"""Lower bounds on sums of variances / standard deviations of N observables.

Bound ids used throughout the package, the CLI, and the verify output:

* ``cb1``: variance-sum bound built from all pairwise sums,
  [ sum_{i<j} D2(A_i+A_j) - (sum_{i<j} D(A_i+A_j))^2 / (N-1)^2 ] / (N-2),
  where D2 is the variance and D the standard deviation of the summed
  observable.  Needs N >= 3.
* ``tb1``: the weaker pairwise variance bound
  sum_{i<j} D2(A_i+A_j) / (2(N-1)).
* ``cb3``: stddev-sum bound
  [ sum_{i<j} D(A_i+A_j) - D(A_1+...+A_N) ] / (N-2).  Needs N >= 3.
* ``tb2``: the triangle bound D(A_1+...+A_N).

For two observables the engine instead reports ``pair_variance``
(= D2(A+B)/2 against D2(A)+D2(B)), ``pair_stddev``
(= max(D(A+B), D(A-B)) against D(A)+D(B)) and ``robertson``
(= |<[A,B]>|/2 against the product D(A) D(B)).

Every pairwise deviation is computed by forming the summed observable
and taking its variance through the same moment path as everything
else; no covariance shortcuts, so a defect in the moment code cannot
cancel out of the comparison.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import DimensionMismatchError, NTooSmallError, NumericalCorruptionError
from .hermitian import (
    HSVector,
    Observable,
    QuantumState,
    _require_same_dim,
    _stack_moments,
    commutator_expectation,
    hs_norm,
    psd_sqrt,
    variance_stack,
)

IDENTITY_TOL = 1e-9

BOUND_IDS = ("cb1", "tb1", "cb3", "tb2")
VARIANCE_BOUNDS = ("cb1", "tb1")
STDDEV_BOUNDS = ("cb3", "tb2")


@dataclass(frozen=True)
class ObservableSet:
    """An ordered collection of N >= 2 same-dimension observables."""

    observables: tuple[Observable, ...]

    def __post_init__(self):
        obs = tuple(self.observables)
        object.__setattr__(self, "observables", obs)
        if len(obs) < 2:
            raise NTooSmallError(f"need at least 2 observables, got {len(obs)}")
        dims = {o.dim for o in obs}
        if len(dims) != 1:
            raise DimensionMismatchError(f"mixed observable dimensions: {sorted(dims)}")

    @property
    def n(self) -> int:
        return len(self.observables)

    @property
    def dim(self) -> int:
        return self.observables[0].dim

    def stack(self) -> np.ndarray:
        return np.stack([o.matrix for o in self.observables])

    def pair_indices(self) -> list[tuple[int, int]]:
        return list(combinations(range(self.n), 2))

    def pair_sum_stack(self) -> np.ndarray:
        """Stack of A_i + A_j over pairs i < j in lexicographic order."""
        mats = self.stack()
        return np.stack([mats[i] + mats[j] for i, j in self.pair_indices()])

    def total(self) -> np.ndarray:
        return self.stack().sum(axis=0)


@dataclass(frozen=True)
class VectorTuple:
    """An ordered tuple of N >= 2 same-dimension Hilbert-Schmidt vectors."""

    vectors: tuple[HSVector, ...]

    def __post_init__(self):
        vecs = tuple(self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if len(vecs) < 2:
            raise NTooSmallError(f"need at least 2 vectors, got {len(vecs)}")
        dims = {v.dim for v in vecs}
        if len(dims) != 1:
            raise DimensionMismatchError(f"mixed vector dimensions: {sorted(dims)}")

    @property
    def n(self) -> int:
        return len(self.vectors)


def _check_state(obs_set: ObservableSet, state: QuantumState):
    _require_same_dim(obs_set.dim, state.dim)


def _pair_deviations(obs_set: ObservableSet, state: QuantumState):
    """(variances, stddevs) of the summed observables over all pairs."""
    pair_vars = variance_stack(obs_set.pair_sum_stack(), state)
    return pair_vars, np.sqrt(pair_vars)


def lhs_variance_sum(obs_set: ObservableSet, state: QuantumState) -> float:
    """sum_i D2(A_i), the left side the variance bounds sit under."""
    _check_state(obs_set, state)
    return float(np.sum(variance_stack(obs_set.stack(), state)))


def lhs_stddev_sum(obs_set: ObservableSet, state: QuantumState) -> float:
    """sum_i D(A_i), the left side the stddev bounds sit under."""
    _check_state(obs_set, state)
    return float(np.sum(np.sqrt(variance_stack(obs_set.stack(), state))))


def _require_n3(obs_set: ObservableSet, bound_id: str):
    if obs_set.n < 3:
        raise NTooSmallError(f"bound {bound_id} needs at least 3 observables")


def bound_cb1(obs_set: ObservableSet, state: QuantumState) -> float:
    """Pairwise lower bound on the variance sum (N >= 3)."""
    _require_n3(obs_set, "cb1")
    _check_state(obs_set, state)
    pair_vars, pair_stds = _pair_deviations(obs_set, state)
    n = obs_set.n
    return float(
        (np.sum(pair_vars) - np.sum(pair_stds) ** 2 / (n - 1) ** 2) / (n - 2)
    )


def bound_tb1(obs_set: ObservableSet, state: QuantumState) -> float:
    """Weaker pairwise lower bound on the variance sum (any N >= 2)."""
    _check_state(obs_set, state)
    pair_vars, _ = _pair_deviations(obs_set, state)
    return float(np.sum(pair_vars) / (2.0 * (obs_set.n - 1)))


def bound_cb3(obs_set: ObservableSet, state: QuantumState) -> float:
    """Pairwise-minus-total lower bound on the stddev sum (N >= 3)."""
    _require_n3(obs_set, "cb3")
    _check_state(obs_set, state)
    _, pair_stds = _pair_deviations(obs_set, state)
    total_std = float(np.sqrt(variance_stack(obs_set.total()[np.newaxis], state)[0]))
    return float((np.sum(pair_stds) - total_std) / (obs_set.n - 2))


def bound_tb2(obs_set: ObservableSet, state: QuantumState) -> float:
    """Triangle lower bound on the stddev sum: D(A_1 + ... + A_N)."""
    _check_state(obs_set, state)
    return float(np.sqrt(variance_stack(obs_set.total()[np.newaxis], state)[0]))


def bound_pair_variance(a: Observable, b: Observable, state: QuantumState) -> float:
    """D2(A+B)/2, a lower bound on D2(A) + D2(B)."""
    mats = np.stack([a.matrix + b.matrix])
    return float(variance_stack(mats, state)[0] / 2.0)


def bound_pair_stddev(a: Observable, b: Observable, state: QuantumState) -> float:
    """max(D(A+B), D(A-B)), a lower bound on D(A) + D(B)."""
    mats = np.stack([a.matrix + b.matrix, a.matrix - b.matrix])
    devs = np.sqrt(variance_stack(mats, state))
    return float(np.max(devs))


def bound_robertson(a: Observable, b: Observable, state: QuantumState) -> float:
    """|<[A, B]>| / 2, a lower bound on the product D(A) D(B)."""
    return 0.5 * commutator_expectation(a, b, state)


def identity_residual(vt: VectorTuple) -> float:
    """Defect of the exact norm identity the pairwise bounds rest on.

    For vectors m_1..m_N the quantity
    ||sum m_i||^2 + (N-2) sum ||m_i||^2  equals  sum_{i<j} ||m_i+m_j||^2
    in exact arithmetic.  Returns |left - right| and raises if it
    exceeds 1e-9 * max(1, right): this is an algebraic identity, so a
    larger defect can only mean corrupted numerics.
    """
    arr = np.stack([v.matrix for v in vt.vectors])
    total = arr.sum(axis=0)
    norms_sq = np.einsum("mij,mij->m", np.conj(arr), arr).real
    idx = list(combinations(range(vt.n), 2))
    pair_mats = np.stack([arr[i] + arr[j] for i, j in idx])
    pair_sq = np.einsum("mij,mij->m", np.conj(pair_mats), pair_mats).real
    left = float(np.linalg.norm(total) ** 2 + (vt.n - 2) * np.sum(norms_sq))
    right = float(np.sum(pair_sq))
    residual = abs(left - right)
    if residual > IDENTITY_TOL * max(1.0, right):
        raise NumericalCorruptionError(
            f"norm identity residual {residual:.3e} exceeds tolerance"
        )
    return residual


def hlawka_slack(vt: VectorTuple) -> float:
    """Slack of the generalized polygon inequality for HS vectors.

    ||sum m_i|| + (N-2) sum ||m_i|| - sum_{i<j} ||m_i+m_j||, which is
    >= 0 in exact arithmetic for any vectors in an inner-product space.
    """
    arr = np.stack([v.matrix for v in vt.vectors])
    total_norm = float(np.linalg.norm(arr.sum(axis=0)))
    norms = np.sqrt(np.einsum("mij,mij->m", np.conj(arr), arr).real)
    idx = list(combinations(range(vt.n), 2))
    pair_mats = np.stack([arr[i] + arr[j] for i, j in idx])
    pair_norms = np.sqrt(np.einsum("mij,mij->m", np.conj(pair_mats), pair_mats).real)
    return float(total_norm + (vt.n - 2) * np.sum(norms) - np.sum(pair_norms))


def methods_vector_tuple(obs_set: ObservableSet, state: QuantumState) -> VectorTuple:
    """The HS vectors (A_i - <A_i>) S underlying the bounds.

    S is the PSD square root of the density matrix; for a pure state
    the projector |psi><psi| is its own square root, so it is used
    directly.  The HS norm of each vector equals D(A_i).
    """
    _check_state(obs_set, state)
    mats = obs_set.stack()
    means, _ = _stack_moments(mats, state)
    if state.kind == "pure":
        s_mat = np.outer(state.vector, np.conj(state.vector))
    else:
        s_mat = psd_sqrt(state.density)
    vecs = tuple(
        HSVector(mats[i] @ s_mat - means[i] * s_mat) for i in range(obs_set.n)
    )
    return VectorTuple(vecs)


@dataclass(frozen=True)
class BoundReport:
    """Everything the engine knows about one (observables, state) pair.

    ``bounds`` maps bound ids to values; ``gaps`` maps the same ids to
    (matching left side) - bound, nonnegative when the bound holds; the
    left side is the variance sum for cb1/tb1/pair_variance, the stddev
    sum for cb3/tb2/pair_stddev, and the product D(A) D(B) for
    robertson.  ``orderings`` maps "x>=y" to the slack x - y.
    """

    n: int
    dim: int
    state_kind: str
    state_is_pure: bool
    lhs_variance_sum: float
    lhs_stddev_sum: float
    bounds: dict[str, float]
    gaps: dict[str, float]
    orderings: dict[str, float] = field(default_factory=dict)
    product_lhs: float | None = None


def bound_report(obs_set: ObservableSet, state: QuantumState) -> BoundReport:
    """Evaluate every applicable bound and its gap for one instance."""
    _check_state(obs_set, state)
    lhs_var = lhs_variance_sum(obs_set, state)
    lhs_std = lhs_stddev_sum(obs_set, state)
    bounds: dict[str, float] = {}
    gaps: dict[str, float] = {}
    orderings: dict[str, float] = {}
    product_lhs = None

    if obs_set.n >= 3:
        bounds["cb1"] = bound_cb1(obs_set, state)
        bounds["tb1"] = bound_tb1(obs_set, state)
        bounds["cb3"] = bound_cb3(obs_set, state)
        bounds["tb2"] = bound_tb2(obs_set, state)
        gaps["cb1"] = lhs_var - bounds["cb1"]
        gaps["tb1"] = lhs_var - bounds["tb1"]
        gaps["cb3"] = lhs_std - bounds["cb3"]
        gaps["tb2"] = lhs_std - bounds["tb2"]
        orderings["cb1>=tb1"] = bounds["cb1"] - bounds["tb1"]
        orderings["cb3>=tb2"] = bounds["cb3"] - bounds["tb2"]
    else:
        a, b = obs_set.observables
        singles = np.sqrt(variance_stack(obs_set.stack(), state))
        product_lhs = float(singles[0] * singles[1])
        bounds["tb1"] = bound_tb1(obs_set, state)
        bounds["tb2"] = bound_tb2(obs_set, state)
        bounds["pair_variance"] = bound_pair_variance(a, b, state)
        bounds["pair_stddev"] = bound_pair_stddev(a, b, state)
        bounds["robertson"] = bound_robertson(a, b, state)
        gaps["tb1"] = lhs_var - bounds["tb1"]
        gaps["tb2"] = lhs_std - bounds["tb2"]
        gaps["pair_variance"] = lhs_var - bounds["pair_variance"]
        gaps["pair_stddev"] = lhs_std - bounds["pair_stddev"]
        gaps["robertson"] = product_lhs - bounds["robertson"]

    return BoundReport(
        n=obs_set.n,
        dim=obs_set.dim,
        state_kind=state.kind,
        state_is_pure=state.is_pure,
        lhs_variance_sum=lhs_var,
        lhs_stddev_sum=lhs_std,
        bounds=bounds,
        gaps=gaps,
        orderings=orderings,
        product_lhs=product_lhs,
    )
