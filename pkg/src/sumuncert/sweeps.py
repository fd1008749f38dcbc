"""Parameter sweeps, saturation search, and the randomized verification
campaign.

Sweeps walk a named (observables, state(theta)) family over a half-open
theta grid and tabulate the left side and both bounds of the chosen
kind.  `find_saturation` locates the angles where a bound is attained:
coarse 10,000-point scan, golden-section refinement of each bracketed
local minimum of the gap, then a gap <= 1e-7 acceptance test.

`random_verify` mechanizes every inequality the bounds engine exposes
as a falsification target over seeded random instances.  Per-trial
seeds are seed XOR trial-index, so the campaign is reproducible and
order-independent regardless of how trials are scheduled.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .bounds import (
    ObservableSet,
    bound_cb1,
    bound_cb3,
    bound_pair_stddev,
    bound_pair_variance,
    bound_robertson,
    bound_tb1,
    bound_tb2,
    hlawka_slack,
    identity_residual,
    lhs_stddev_sum,
    lhs_variance_sum,
    methods_vector_tuple,
)
from .errors import SumUncertError
from .families import (
    family_labels,
    family_observables,
    family_state,
    random_density,
    random_hermitian,
    random_pure,
)
from .hermitian import Observable, QuantumState, hs_norm, variance_stack
from .rng import RandomStream

TWO_PI = 2.0 * np.pi

SATURATION_GAP_TOL = 1e-7
REFINE_TOL = 1e-9
DEDUPE_TOL = 1e-6
PRESCAN_POINTS = 10000

_KIND_BOUNDS = {
    "variance": ("cb1", "tb1"),
    "stddev": ("cb3", "tb2"),
}
_BOUND_FNS = {
    "cb1": bound_cb1,
    "tb1": bound_tb1,
    "cb3": bound_cb3,
    "tb2": bound_tb2,
}

# Stride for the two reconstruction-style invariants (shift invariance,
# pure-vs-density agreement) inside the campaign; every trial would
# roughly double the cost for properties that have dedicated unit tests.
RECHECK_STRIDE = 25


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for one sweep."""

    family: str
    kind: str
    points: int = 1000
    theta_range: tuple[float, float] = (0.0, TWO_PI)

    def __post_init__(self):
        if self.kind not in _KIND_BOUNDS:
            raise ValueError(f"kind must be 'variance' or 'stddev', got {self.kind!r}")
        if self.points < 2:
            raise ValueError(f"need at least 2 grid points, got {self.points}")
        lo, hi = self.theta_range
        if not lo < hi:
            raise ValueError(f"empty theta range [{lo}, {hi})")

    def grid(self) -> np.ndarray:
        """theta_k = lo + k (hi - lo) / points for k < points (half-open)."""
        lo, hi = self.theta_range
        return lo + (hi - lo) * np.arange(self.points) / self.points


@dataclass(frozen=True)
class SweepResult:
    """Tabulated sweep: per-row (theta, lhs, cb bound, tb bound)."""

    spec: SweepSpec
    labels: tuple[str, ...]
    cb_id: str
    tb_id: str
    thetas: np.ndarray
    lhs: np.ndarray
    cb: np.ndarray
    tb: np.ndarray

    def rows(self):
        for k in range(len(self.thetas)):
            yield (
                float(self.thetas[k]),
                float(self.lhs[k]),
                float(self.cb[k]),
                float(self.tb[k]),
            )


def sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate lhs and both bounds of the kind at every grid point."""
    obs_set = ObservableSet(family_observables(spec.family))
    cb_id, tb_id = _KIND_BOUNDS[spec.kind]
    lhs_fn = lhs_variance_sum if spec.kind == "variance" else lhs_stddev_sum
    cb_fn = _BOUND_FNS[cb_id]
    tb_fn = _BOUND_FNS[tb_id]
    thetas = spec.grid()
    lhs = np.empty(spec.points)
    cb = np.empty(spec.points)
    tb = np.empty(spec.points)
    for k, theta in enumerate(thetas):
        state = family_state(spec.family, float(theta))
        lhs[k] = lhs_fn(obs_set, state)
        cb[k] = cb_fn(obs_set, state)
        tb[k] = tb_fn(obs_set, state)
    return SweepResult(
        spec=spec,
        labels=family_labels(spec.family),
        cb_id=cb_id,
        tb_id=tb_id,
        thetas=thetas,
        lhs=lhs,
        cb=cb,
        tb=tb,
    )


_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(fn, lo: float, hi: float, tol: float = REFINE_TOL) -> float:
    """Argmin of a unimodal function by golden-section search.

    Shrinks [lo, hi] until its width is <= tol and returns the midpoint.
    """
    a, b = float(lo), float(hi)
    h = b - a
    if h <= tol:
        return 0.5 * (a + b)
    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    fc = fn(c)
    fd = fn(d)
    while h > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_PHI * h
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = fn(d)
    return 0.5 * (a + b)


def find_saturation(
    family: str,
    kind: str,
    bound: str,
    theta_range: tuple[float, float] = (0.0, TWO_PI),
) -> list[float]:
    """All angles in the range where lhs(theta) - bound(theta) <= 1e-7.

    The bound id must belong to the kind (cb1/tb1 to variance, cb3/tb2
    to stddev), otherwise the gap would mix incompatible quantities.
    Returns refined angles sorted ascending, deduplicated within 1e-6.
    """
    if bound not in _BOUND_FNS:
        raise ValueError(f"unknown bound id {bound!r}")
    if bound not in _KIND_BOUNDS.get(kind, ()):
        raise ValueError(f"bound {bound!r} does not apply to kind {kind!r}")
    lo, hi = (float(theta_range[0]), float(theta_range[1]))
    if not lo < hi:
        raise ValueError(f"empty theta range [{lo}, {hi})")

    obs_set = ObservableSet(family_observables(family))
    lhs_fn = lhs_variance_sum if kind == "variance" else lhs_stddev_sum
    bound_fn = _BOUND_FNS[bound]

    def gap(theta: float) -> float:
        state = family_state(family, theta)
        return lhs_fn(obs_set, state) - bound_fn(obs_set, state)

    thetas = lo + (hi - lo) * np.arange(PRESCAN_POINTS) / PRESCAN_POINTS
    gaps = np.array([gap(float(t)) for t in thetas])

    last = PRESCAN_POINTS - 1
    candidates = []
    for i in range(PRESCAN_POINTS):
        left_ok = i == 0 or gaps[i] <= gaps[i - 1]
        right_ok = i == last or gaps[i] <= gaps[i + 1]
        if left_ok and right_ok:
            candidates.append(i)

    found = []
    for i in candidates:
        bracket_lo = thetas[max(i - 1, 0)]
        bracket_hi = thetas[min(i + 1, last)]
        theta_hat = golden_section_min(gap, float(bracket_lo), float(bracket_hi))
        if gap(theta_hat) <= SATURATION_GAP_TOL:
            found.append(theta_hat)

    found.sort()
    deduped: list[float] = []
    for theta_hat in found:
        if not deduped or theta_hat - deduped[-1] > DEDUPE_TOL:
            deduped.append(theta_hat)
    return deduped


@dataclass(frozen=True)
class VerifyConfig:
    """Knobs of the randomized verification campaign."""

    trials: int = 10000
    dims: tuple[int, ...] = (2, 3, 4, 8)
    n_range: tuple[int, int] = (2, 6)
    seed: int = 42
    tolerance: float = 1e-9
    state_mix: float = 0.3

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "n_range", tuple(self.n_range))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.dims or any(d < 2 or d > 64 for d in self.dims):
            raise ValueError(f"dims must lie in [2, 64], got {self.dims}")
        lo, hi = self.n_range
        if lo < 2 or hi < lo:
            raise ValueError(f"invalid n_range {self.n_range}")
        if not 0.0 <= self.state_mix <= 1.0:
            raise ValueError(f"state_mix must be in [0, 1], got {self.state_mix}")


@dataclass(frozen=True)
class Violation:
    """One property falling below -tolerance on one instance."""

    prop: str
    seed: int
    descriptor: str
    slack: float


@dataclass(frozen=True)
class VerifySummary:
    """Campaign outcome: violations iff slack < -tolerance somewhere."""

    trials_run: int
    violations: tuple[Violation, ...]
    min_slack: dict[str, float]
    elapsed: float = field(compare=False, default=0.0)


class _Recorder:
    def __init__(self, tolerance: float):
        self.tolerance = tolerance
        self.min_slack: dict[str, float] = {}
        self.violations: list[Violation] = []

    def note(self, prop: str, slack: float, seed: int, descriptor: str):
        cur = self.min_slack.get(prop)
        if cur is None or slack < cur:
            self.min_slack[prop] = slack
        if slack < -self.tolerance:
            self.violations.append(Violation(prop, seed, descriptor, slack))


def _bound_profile(obs_set: ObservableSet, state: QuantumState) -> dict[str, float]:
    """Every bound and lhs value that must be invariant under shifts
    and representation changes."""
    profile = {
        "lhs_var": lhs_variance_sum(obs_set, state),
        "lhs_std": lhs_stddev_sum(obs_set, state),
        "tb1": bound_tb1(obs_set, state),
        "tb2": bound_tb2(obs_set, state),
    }
    if obs_set.n >= 3:
        profile["cb1"] = bound_cb1(obs_set, state)
        profile["cb3"] = bound_cb3(obs_set, state)
    else:
        a, b = obs_set.observables
        profile["pair_variance"] = bound_pair_variance(a, b, state)
        profile["pair_stddev"] = bound_pair_stddev(a, b, state)
        profile["robertson"] = bound_robertson(a, b, state)
    return profile


def _check_instance(
    obs_set: ObservableSet,
    state: QuantumState,
    seed: int,
    descriptor: str,
    rec: _Recorder,
    stream: RandomStream | None = None,
    recheck: bool = False,
):
    """Evaluate every applicable inequality property on one instance."""
    singles_var = variance_stack(obs_set.stack(), state)
    singles_std = np.sqrt(singles_var)
    lhs_var = float(np.sum(singles_var))
    lhs_std = float(np.sum(singles_std))

    tb1 = bound_tb1(obs_set, state)
    tb2 = bound_tb2(obs_set, state)
    rec.note("lhs_var>=tb1", lhs_var - tb1, seed, descriptor)
    rec.note("lhs_std>=tb2", lhs_std - tb2, seed, descriptor)

    if obs_set.n >= 3:
        cb1 = bound_cb1(obs_set, state)
        cb3 = bound_cb3(obs_set, state)
        rec.note("lhs_var>=cb1", lhs_var - cb1, seed, descriptor)
        rec.note("lhs_std>=cb3", lhs_std - cb3, seed, descriptor)
        rec.note("cb1>=tb1", cb1 - tb1, seed, descriptor)
        rec.note("cb3>=tb2", cb3 - tb2, seed, descriptor)

        if cb1 <= 1e-9 or cb3 <= 1e-9:
            pair_stds = np.sqrt(variance_stack(obs_set.pair_sum_stack(), state))
            if cb1 <= 1e-9:
                rec.note(
                    "zero_forcing_var",
                    1e-4 - float(np.max(pair_stds)),
                    seed,
                    descriptor,
                )
            if cb3 <= 1e-9:
                worst = max(tb2, float(np.sum(pair_stds)))
                rec.note("zero_forcing_std", 1e-4 - worst, seed, descriptor)

    for i, j in obs_set.pair_indices():
        a = obs_set.observables[i]
        b = obs_set.observables[j]
        pair_desc = f"{descriptor} pair=({i},{j})"
        rec.note(
            "pair_variance",
            float(singles_var[i] + singles_var[j]) - bound_pair_variance(a, b, state),
            seed,
            pair_desc,
        )
        rec.note(
            "pair_stddev",
            float(singles_std[i] + singles_std[j]) - bound_pair_stddev(a, b, state),
            seed,
            pair_desc,
        )
        rec.note(
            "robertson",
            float(singles_std[i] * singles_std[j]) - bound_robertson(a, b, state),
            seed,
            pair_desc,
        )

    vt = methods_vector_tuple(obs_set, state)
    norms = np.array([hs_norm(v) for v in vt.vectors])
    rec.note(
        "methods_stddev",
        -float(np.max(np.abs(norms - singles_std))),
        seed,
        descriptor,
    )
    # Identity slack is the negated absolute residual; the op itself
    # raises if the residual climbs past corruption scale.
    rec.note("hs_identity", -identity_residual(vt), seed, descriptor)
    rec.note("hlawka", hlawka_slack(vt), seed, descriptor)

    if recheck and stream is not None:
        shift = 5.0 * (2.0 * stream.uniform() - 1.0)
        idx = stream.integer(obs_set.n)
        shifted_mat = obs_set.observables[idx].matrix + shift * np.eye(
            obs_set.dim, dtype=np.complex128
        )
        shifted_obs = list(obs_set.observables)
        shifted_obs[idx] = Observable(shifted_mat)
        shifted_set = ObservableSet(tuple(shifted_obs))
        base = _bound_profile(obs_set, state)
        moved = _bound_profile(shifted_set, state)
        diff = max(abs(base[k] - moved[k]) for k in base)
        rec.note("shift_invariance", -diff, seed, f"{descriptor} shift={shift:.3f}")

        if state.kind == "pure":
            dm = state.density_matrix()
            as_mixed = QuantumState(
                kind="mixed", vector=None, density=dm, is_pure=True
            )
            base = _bound_profile(obs_set, state)
            via_density = _bound_profile(obs_set, as_mixed)
            diff = max(abs(base[k] - via_density[k]) for k in base)
            rec.note("pure_mixed_agreement", -diff, seed, descriptor)


def random_verify(cfg: VerifyConfig, extra_instances=()) -> VerifySummary:
    """Run the seeded campaign; violations are data, never exceptions.

    ``extra_instances`` takes (ObservableSet, QuantumState, descriptor)
    triples evaluated after the random trials, e.g. constructed
    common-eigenstate instances that exercise the zero-bound forcing
    properties random draws almost never hit.
    """
    start = time.perf_counter()
    extras = tuple(extra_instances)
    rec = _Recorder(cfg.tolerance)
    n_lo, n_hi = cfg.n_range

    for trial in range(cfg.trials):
        trial_seed = cfg.seed ^ trial
        stream = RandomStream(trial_seed)
        dim = cfg.dims[stream.integer(len(cfg.dims))]
        n = n_lo + stream.integer(n_hi - n_lo + 1)
        mixed = stream.uniform() < cfg.state_mix
        observables = tuple(
            random_hermitian(dim, stream.fresh_seed()) for _ in range(n)
        )
        if mixed:
            state = random_density(dim, stream.fresh_seed())
        else:
            state = random_pure(dim, stream.fresh_seed())
        descriptor = (
            f"trial={trial} dim={dim} n={n} state={'mixed' if mixed else 'pure'}"
        )
        try:
            _check_instance(
                ObservableSet(observables),
                state,
                trial_seed,
                descriptor,
                rec,
                stream=stream,
                recheck=trial % RECHECK_STRIDE == 0,
            )
        except SumUncertError as exc:
            rec.note(
                f"exception:{type(exc).__name__}",
                float("-inf"),
                trial_seed,
                f"{descriptor} message={exc}",
            )

    for k, (obs_set, state, desc) in enumerate(extras):
        inj_seed = cfg.seed ^ (cfg.trials + k)
        try:
            _check_instance(
                obs_set, state, inj_seed, f"injected={k} {desc}", rec
            )
        except SumUncertError as exc:
            rec.note(
                f"exception:{type(exc).__name__}",
                float("-inf"),
                inj_seed,
                f"injected={k} {desc} message={exc}",
            )

    return VerifySummary(
        trials_run=cfg.trials + len(extras),
        violations=tuple(rec.violations),
        min_slack=dict(sorted(rec.min_slack.items())),
        elapsed=time.perf_counter() - start,
    )
