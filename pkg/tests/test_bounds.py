"""Bound values on worked examples plus structural checks.

Expected numbers are derived by hand from the 2x2 / 3x3 operator algebra
(anticommuting flip operators square to the identity, so pair variances
reduce to trig in the state parameter) or recomputed inside the test
through an independent path.
"""

import numpy as np
import pytest

from sumuncert.bounds import (
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
from sumuncert.errors import (
    DimensionMismatchError,
    NTooSmallError,
)
from sumuncert.families import (
    pauli,
    qubit_family,
    qutrit_family,
    random_density,
    random_hermitian,
    random_pure,
    spin1_ops,
)
from sumuncert.hermitian import (
    HSVector,
    Observable,
    hs_norm,
    stddev,
    validate_observable,
    validate_state,
    variance,
)

THETA_STAR = np.arcsin(1.0 / np.sqrt(3.0))

PAULI_SET = ObservableSet((pauli("X"), pauli("Y"), pauli("Z")))
SPIN_SET = ObservableSet(spin1_ops())

KET0 = validate_state([1.0, 0.0])
KET_PLUS = validate_state(np.array([1.0, 1.0]) / np.sqrt(2.0))


# ------------------------------------------------------------ construction


def test_observable_set_validation():
    with pytest.raises(NTooSmallError):
        ObservableSet((pauli("X"),))
    with pytest.raises(DimensionMismatchError):
        ObservableSet((pauli("X"), spin1_ops()[0]))
    assert PAULI_SET.n == 3
    assert PAULI_SET.dim == 2


def test_pair_enumeration_order():
    four = ObservableSet(tuple(random_hermitian(2, seed=i) for i in range(4)))
    assert four.pair_indices() == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    np.testing.assert_array_equal(
        four.pair_sum_stack()[2],
        four.observables[0].matrix + four.observables[3].matrix,
    )
    np.testing.assert_array_equal(four.total(), four.stack().sum(axis=0))


def test_small_bounds_require_three_observables():
    two = ObservableSet((pauli("X"), pauli("Y")))
    with pytest.raises(NTooSmallError):
        bound_cb1(two, KET0)
    with pytest.raises(NTooSmallError):
        bound_cb3(two, KET0)
    # tb1 / tb2 remain defined at N = 2.
    bound_tb1(two, KET0)
    bound_tb2(two, KET0)


def test_state_dimension_checked():
    with pytest.raises(DimensionMismatchError):
        lhs_variance_sum(PAULI_SET, validate_state([1.0, 0.0, 0.0]))


# ------------------------------------------------- worked qubit examples


def test_qubit_triple_at_theta_zero():
    st = qubit_family(0.0)
    assert lhs_variance_sum(PAULI_SET, st) == pytest.approx(2.0, abs=1e-12)
    assert lhs_stddev_sum(PAULI_SET, st) == pytest.approx(1.0 + np.sqrt(2.0), abs=1e-9)
    assert bound_cb1(PAULI_SET, st) == pytest.approx(1.5, abs=1e-6)
    assert bound_tb1(PAULI_SET, st) == pytest.approx(0.75, abs=1e-12)
    # Total (sum of the three) squares to 3I; its mean here is sqrt(2).
    assert bound_tb2(PAULI_SET, st) == pytest.approx(1.0, abs=1e-12)
    assert bound_cb3(PAULI_SET, st) == pytest.approx(
        2.0 * np.sqrt(1.5) - 1.0, abs=1e-7
    )


def test_qubit_triple_pair_variances_closed_form():
    for theta in (0.0, 0.4, 1.1, np.pi / 2, 3.9):
        st = qubit_family(theta)
        pv = np.asarray(
            [
                variance(pauli("X") + pauli("Y"), st),
                variance(pauli("X") + pauli("Z"), st),
                variance(pauli("Y") + pauli("Z"), st),
            ]
        )
        c2, s2 = np.cos(2 * theta), np.sin(2 * theta)
        expect = [
            1.0 - c2,
            1.25 + 0.25 * c2 - s2 / np.sqrt(2.0),
            1.25 + 0.25 * c2 - s2 / np.sqrt(2.0),
        ]
        np.testing.assert_allclose(pv, expect, atol=1e-12)


def test_qubit_stddev_bound_saturates_at_special_angle():
    st = qubit_family(THETA_STAR)
    lhs = lhs_stddev_sum(PAULI_SET, st)
    cb3 = bound_cb3(PAULI_SET, st)
    assert cb3 == pytest.approx(np.sqrt(6.0), abs=1e-6)
    assert lhs - cb3 == pytest.approx(0.0, abs=1e-7)
    assert bound_tb2(PAULI_SET, st) == pytest.approx(0.0, abs=1e-7)


def test_qubit_tb2_at_pole():
    # theta = pi/2 points the state along the third axis.
    st = qubit_family(np.pi / 2)
    assert bound_tb2(PAULI_SET, st) == pytest.approx(np.sqrt(2.0), abs=1e-9)


def test_identical_observables_in_common_eigenstate_give_zero():
    z3 = ObservableSet((pauli("Z"), pauli("Z"), pauli("Z")))
    for fn in (bound_cb1, bound_tb1, bound_cb3, bound_tb2):
        assert fn(z3, KET0) == pytest.approx(0.0, abs=1e-9)
    assert lhs_variance_sum(z3, KET0) == pytest.approx(0.0, abs=1e-12)


# ------------------------------------------------- worked qutrit examples


def test_qutrit_triple_at_theta_zero():
    st = qutrit_family(0.0)
    assert bound_cb3(SPIN_SET, st) == pytest.approx(np.sqrt(2.0), abs=1e-9)
    assert bound_tb2(SPIN_SET, st) == pytest.approx(1.0, abs=1e-12)
    assert lhs_variance_sum(SPIN_SET, st) == pytest.approx(1.0, abs=1e-12)


def test_qutrit_pair_variances_closed_form():
    jx, jy, jz = spin1_ops()
    for theta in (0.3, 1.0, np.pi / 2, 4.4):
        st = qutrit_family(theta)
        sn = np.sin(theta)
        assert variance(jx + jy, st) == pytest.approx(1.0, abs=1e-12)
        assert variance(jy + jz, st) == pytest.approx(
            0.5 * (1 - sn) + sn * sn, abs=1e-12
        )
        assert variance(jx + jz, st) == pytest.approx(
            0.5 * (1 + sn) + sn * sn, abs=1e-12
        )
        total = validate_observable(jx.matrix + jy.matrix + jz.matrix)
        assert variance(total, st) == pytest.approx(1.0 + sn * sn, abs=1e-12)


def test_qutrit_stddev_bound_saturates_at_zero_angle():
    st = qutrit_family(0.0)
    lhs = lhs_stddev_sum(SPIN_SET, st)
    assert lhs - bound_cb3(SPIN_SET, st) == pytest.approx(0.0, abs=1e-9)


# ------------------------------------------------------- two-observable row


def test_pair_variance_flip_pair():
    x, y = pauli("X"), pauli("Y")
    assert bound_pair_variance(x, y, KET0) == pytest.approx(1.0, abs=1e-12)
    lhs = variance(x, KET0) + variance(y, KET0)
    assert lhs == pytest.approx(2.0, abs=1e-12)


def test_pair_bounds_saturate_for_identical_observables():
    z = pauli("Z")
    assert bound_pair_variance(z, z, KET_PLUS) == pytest.approx(2.0, abs=1e-12)
    assert bound_pair_stddev(z, z, KET_PLUS) == pytest.approx(2.0, abs=1e-9)
    # lhs equals the bound in both cases: the pair bound is tight here.
    assert variance(z, KET_PLUS) + variance(z, KET_PLUS) == pytest.approx(
        2.0, abs=1e-12
    )
    assert bound_robertson(z, z, KET_PLUS) == 0.0


def test_pair_stddev_uses_better_of_sum_and_difference():
    x, z = pauli("X"), pauli("Z")
    assert bound_pair_stddev(x, z, KET0) == pytest.approx(1.0, abs=1e-12)
    assert stddev(x, KET0) + stddev(z, KET0) == pytest.approx(1.0, abs=1e-12)


def test_robertson_flip_pair():
    x, y = pauli("X"), pauli("Y")
    assert bound_robertson(x, y, KET0) == pytest.approx(1.0, abs=1e-14)
    prod = stddev(x, KET0) * stddev(y, KET0)
    assert prod == pytest.approx(1.0, abs=1e-12)
    # In the flip eigenstate the third-axis mean vanishes.
    assert bound_robertson(x, y, KET_PLUS) == pytest.approx(0.0, abs=1e-14)


# ------------------------------------------------------- cross-validation


def test_cb1_matches_scalar_recomputation():
    obs = tuple(random_hermitian(3, seed=400 + i) for i in range(4))
    st = random_density(3, seed=404)
    os4 = ObservableSet(obs)
    got = bound_cb1(os4, st)

    pair_vars = []
    for i in range(4):
        for j in range(i + 1, 4):
            pair_vars.append(variance(obs[i] + obs[j], st))
    pair_vars = np.asarray(pair_vars)
    n = 4
    expect = (pair_vars.sum() - np.sqrt(pair_vars).sum() ** 2 / (n - 1) ** 2) / (n - 2)
    assert got == pytest.approx(expect, abs=1e-10)


def test_cb3_matches_scalar_recomputation():
    obs = tuple(random_hermitian(4, seed=500 + i) for i in range(3))
    st = random_pure(4, seed=505)
    os3 = ObservableSet(obs)
    got = bound_cb3(os3, st)

    total = obs[0] + obs[1] + obs[2]
    pair_stds = [
        stddev(obs[i] + obs[j], st) for i in range(3) for j in range(i + 1, 3)
    ]
    expect = sum(pair_stds) - stddev(total, st)
    assert got == pytest.approx(expect, abs=1e-10)


def test_bounds_shift_invariant_under_identity_offset():
    obs = tuple(random_hermitian(3, seed=600 + i) for i in range(3))
    st = random_density(3, seed=606)
    base = ObservableSet(obs)
    shifted = ObservableSet(
        tuple(
            Observable(o.matrix + c * np.eye(3))
            for o, c in zip(obs, (1.5, -2.0, 0.25))
        )
    )
    for fn in (bound_cb1, bound_tb1, bound_cb3, bound_tb2):
        assert fn(base, st) == pytest.approx(fn(shifted, st), abs=1e-9)


@pytest.mark.parametrize("seed", range(20))
def test_bound_hierarchy_on_random_instances(seed):
    n = 3 + seed % 3
    dim = (2, 3, 4)[seed % 3]
    obs = tuple(random_hermitian(dim, seed=seed * 100 + i) for i in range(n))
    st = random_pure(dim, seed=seed * 100 + 50) if seed % 2 else random_density(
        dim, seed=seed * 100 + 50
    )
    os_n = ObservableSet(obs)
    lhs_var = lhs_variance_sum(os_n, st)
    lhs_std = lhs_stddev_sum(os_n, st)
    cb1, tb1 = bound_cb1(os_n, st), bound_tb1(os_n, st)
    cb3, tb2 = bound_cb3(os_n, st), bound_tb2(os_n, st)
    assert lhs_var - cb1 >= -1e-9
    assert lhs_var - tb1 >= -1e-9
    assert lhs_std - cb3 >= -1e-9
    assert lhs_std - tb2 >= -1e-9
    assert cb1 - tb1 >= -1e-9
    assert cb3 - tb2 >= -1e-9


# --------------------------------------------------- vector-space backing


def test_identity_residual_two_matrix_units():
    e11 = HSVector(np.diag([1.0, 0.0]).astype(complex))
    e22 = HSVector(np.diag([0.0, 1.0]).astype(complex))
    assert identity_residual(VectorTuple((e11, e22))) == pytest.approx(0.0, abs=1e-14)


def test_identity_residual_orthonormal_triple():
    units = tuple(HSVector(np.diag(row).astype(complex)) for row in np.eye(3))
    vt = VectorTuple(units)
    # Left side 3 + 3, right side three pair norms of 2 each.
    assert identity_residual(vt) == pytest.approx(0.0, abs=1e-14)


def test_identity_residual_random_tuples():
    from sumuncert.rng import RandomStream

    for seed in range(50):
        s = RandomStream(seed + 7000)
        n = 2 + seed % 4
        dim = 2 + seed % 3
        vecs = tuple(
            HSVector(s.complex_gaussians(dim * dim).reshape(dim, dim))
            for _ in range(n)
        )
        assert identity_residual(VectorTuple(vecs)) <= 1e-11


def test_hlawka_orthonormal_triple_closed_form():
    units = tuple(HSVector(np.diag(row).astype(complex)) for row in np.eye(3))
    slack = hlawka_slack(VectorTuple(units))
    assert slack == pytest.approx(np.sqrt(3.0) + 3.0 - 3.0 * np.sqrt(2.0), abs=1e-14)


def test_hlawka_zero_vectors():
    zeros = tuple(HSVector(np.zeros((2, 2), dtype=complex)) for _ in range(3))
    assert hlawka_slack(VectorTuple(zeros)) == 0.0


def test_hlawka_nonnegative_on_random_tuples():
    from sumuncert.rng import RandomStream

    for seed in range(50):
        s = RandomStream(seed + 8000)
        n = 2 + seed % 4
        vecs = tuple(
            HSVector(s.complex_gaussians(9).reshape(3, 3)) for _ in range(n)
        )
        assert hlawka_slack(VectorTuple(vecs)) >= -1e-9


def test_methods_vectors_norms_equal_stddevs_mixed():
    obs = tuple(random_hermitian(4, seed=700 + i) for i in range(3))
    st = random_density(4, seed=707)
    vt = methods_vector_tuple(ObservableSet(obs), st)
    for o, v in zip(obs, vt.vectors):
        assert hs_norm(v) == pytest.approx(stddev(o, st), abs=1e-10)


def test_methods_vectors_norms_equal_stddevs_pure():
    obs = tuple(random_hermitian(3, seed=800 + i) for i in range(4))
    st = random_pure(3, seed=808)
    vt = methods_vector_tuple(ObservableSet(obs), st)
    assert vt.n == 4
    for o, v in zip(obs, vt.vectors):
        assert hs_norm(v) == pytest.approx(stddev(o, st), abs=1e-10)


def test_methods_vectors_feed_the_identity():
    obs = tuple(random_hermitian(3, seed=900 + i) for i in range(3))
    st = random_density(3, seed=909)
    vt = methods_vector_tuple(ObservableSet(obs), st)
    assert identity_residual(vt) <= 1e-10
    assert hlawka_slack(vt) >= -1e-9


# -------------------------------------------------------------- reporting


def test_bound_report_triple():
    st = qubit_family(0.0)
    rep = bound_report(PAULI_SET, st)
    assert isinstance(rep, BoundReport)
    assert rep.n == 3 and rep.dim == 2
    assert rep.state_kind == "mixed" and rep.state_is_pure
    assert set(rep.bounds) == {"cb1", "tb1", "cb3", "tb2"}
    assert set(rep.gaps) == set(rep.bounds)
    assert rep.product_lhs is None
    assert rep.orderings["cb1>=tb1"] == pytest.approx(0.75, abs=1e-6)
    assert rep.gaps["cb1"] == pytest.approx(0.5, abs=1e-6)
    assert rep.gaps["tb1"] == pytest.approx(1.25, abs=1e-12)


def test_bound_report_pair():
    rep = bound_report(ObservableSet((pauli("X"), pauli("Y"))), KET0)
    assert set(rep.bounds) == {"tb1", "tb2", "pair_variance", "pair_stddev", "robertson"}
    assert rep.orderings == {}
    assert rep.product_lhs == pytest.approx(1.0, abs=1e-12)
    assert rep.bounds["pair_variance"] == pytest.approx(1.0, abs=1e-12)
    assert rep.bounds["pair_stddev"] == pytest.approx(np.sqrt(2.0), abs=1e-9)
    assert rep.bounds["robertson"] == pytest.approx(1.0, abs=1e-12)
    assert rep.gaps["robertson"] == pytest.approx(0.0, abs=1e-12)
    # At N = 2 the weak variance bound coincides with the pair bound.
    assert rep.bounds["tb1"] == pytest.approx(rep.bounds["pair_variance"], abs=1e-12)


def test_bound_report_gaps_nonnegative_random():
    for seed in range(10):
        obs = tuple(random_hermitian(3, seed=seed * 31 + i) for i in range(2 + seed % 4))
        st = random_density(3, seed=seed * 31 + 29)
        rep = bound_report(ObservableSet(obs), st)
        for name, gap in rep.gaps.items():
            assert gap >= -1e-9, name
