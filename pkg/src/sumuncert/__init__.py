"""Lower bounds on sums of variances and standard deviations of N
quantum observables, with parameter sweeps, saturation search, and a
randomized verification campaign.

Kernels (eigensolver, batched moments) run from a compiled extension
when it was built, with a numpy fallback selected automatically at
import; see `sumuncert.backend_name()`.
"""

from ._backend import backend_name
from .bounds import (
    BoundReport,
    ObservableSet,
    VectorTuple,
    bound_cb1,
    bound_cb3,
    bound_pair_stddev,
    bound_pair_variance,
    bound_report,
    bound_robertson,
    bound_tb1,
    bound_tb2,
    hlawka_slack,
    identity_residual,
    lhs_stddev_sum,
    lhs_variance_sum,
    methods_vector_tuple,
)
from .errors import (
    BlochVectorTooLongError,
    ConvergenceError,
    DimensionMismatchError,
    NegativeVarianceError,
    NonFiniteError,
    NotDensityMatrixError,
    NotHermitianError,
    NotNormalizedError,
    NotPSDError,
    NTooSmallError,
    NumericalCorruptionError,
    SumUncertError,
    UnknownFamilyError,
)
from .families import (
    bloch_state,
    family_labels,
    family_names,
    family_observables,
    family_state,
    pauli,
    qubit_family,
    qutrit_family,
    random_density,
    random_hermitian,
    random_pure,
    spin1_ops,
)
from .hermitian import (
    HSVector,
    Observable,
    QuantumState,
    commutator_expectation,
    expectation,
    hs_add,
    hs_norm,
    psd_sqrt,
    stddev,
    validate_observable,
    validate_state,
    variance,
)
from .rng import RandomStream, mix64
from .sweeps import (
    SweepResult,
    SweepSpec,
    VerifyConfig,
    VerifySummary,
    Violation,
    find_saturation,
    golden_section_min,
    random_verify,
    sweep,
)

__version__ = "0.1.0"
