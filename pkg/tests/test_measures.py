import math

import numpy as np
import pytest

from dtqw import (
    Homogeneous,
    InitialCoinState,
    InvalidDimensionError,
    InvalidInputError,
    Lattice,
    NumericalError,
    SpatialDisorder,
    SplitStep,
    TemporalDisorder,
    correlated_coherence,
    degree_of_interference,
    degree_of_interference_split_step,
    entanglement,
    evolve,
    full_density,
    initial_state,
    l1_coherence_normalized,
    localization_indicator,
    measure_record,
    reduce_to_coin,
    reduce_to_position,
    relative_entropy_coherence,
    std_dev,
    von_neumann_entropy,
)

INV_SQRT2 = 1 / math.sqrt(2)
SYMMETRIC = InitialCoinState(INV_SQRT2, 1j * INV_SQRT2)
EQUAL = InitialCoinState(INV_SQRT2, INV_SQRT2)

BINARY_ENTROPY_QUARTER = 0.811278124459133  # -(1/4)log2(1/4) - (3/4)log2(3/4)


def _brute_partial_traces(state):
    n = state.lattice.site_count
    blocks = full_density(state).reshape(2, n, 2, n)
    return blocks.trace(axis1=1, axis2=3), blocks.trace(axis1=0, axis2=2)


def test_full_density_product_state():
    state = initial_state(Lattice(1), InitialCoinState(1, 0))
    rho = full_density(state)
    assert rho.shape == (6, 6)
    assert rho[1, 1] == 1.0
    assert np.count_nonzero(rho) == 1


def test_full_density_equal_superposition_block():
    state = initial_state(Lattice(1), EQUAL)
    rho = full_density(state)
    # indices 1 (up, x=0) and 4 (down, x=0) carry the 1/2 block
    for i in (1, 4):
        for j in (1, 4):
            assert abs(rho[i, j] - 0.5) < 1e-15
    assert abs(np.trace(rho).real - 1.0) < 1e-15


def test_full_density_matches_outer_product_after_step():
    traj = evolve(SYMMETRIC, Homogeneous(math.pi / 4), 1, Lattice(2))
    v = traj[-1].flatten()
    np.testing.assert_allclose(full_density(traj[-1]), np.outer(v, v.conj()), atol=1e-15)


def test_reduce_to_coin_product_state():
    state = initial_state(Lattice(2), InitialCoinState(0.6, 0.8j))
    rho = reduce_to_coin(state)
    expected = np.array([[0.36, -0.48j], [0.48j, 0.64]])
    np.testing.assert_allclose(rho, expected, atol=1e-15)


def test_reduce_to_coin_no_shared_site_is_diagonal():
    # amplitudes (1+i)/2 and (1-i)/2 square to exactly 1/2 in binary floats
    lat = Lattice(1)
    up = np.zeros(3, dtype=np.complex128)
    down = np.zeros(3, dtype=np.complex128)
    up[lat.index_of(-1)] = (1 + 1j) / 2
    down[lat.index_of(1)] = (1 - 1j) / 2
    from dtqw import WalkState

    rho = reduce_to_coin(WalkState(lat, up, down, 1))
    np.testing.assert_array_equal(rho, np.diag([0.5, 0.5]))


def test_reductions_match_brute_force_partial_trace():
    for steps in (0, 1, 5, 10):
        traj = evolve(SYMMETRIC, Homogeneous(math.pi / 4), steps, Lattice(10))
        state = traj[-1]
        rho_c, rho_p = _brute_partial_traces(state)
        np.testing.assert_allclose(rho_c, reduce_to_coin(state), atol=1e-12)
        np.testing.assert_allclose(rho_p, reduce_to_position(state), atol=1e-12)


def test_l1_coherence_maximally_coherent_qubit():
    value, norm = l1_coherence_normalized(np.full((2, 2), 0.5))
    assert abs(value - 1.0) < 1e-15
    assert norm == 1.0


def test_l1_coherence_diagonal_is_zero():
    value, norm = l1_coherence_normalized(np.diag([0.3, 0.2, 0.5]))
    assert value == 0.0
    assert norm == 2.0


def test_l1_coherence_shortcut_example():
    # one step on a 3-site lattice: two amplitudes of magnitude 1/sqrt2,
    # dim 6, so ((sqrt2)^2 - 1)/5 = 0.2
    traj = evolve(SYMMETRIC, Homogeneous(math.pi / 4), 1, Lattice(1))
    rec = measure_record(traj[-1], 1, Homogeneous(math.pi / 4))
    assert abs(rec.I_full - 0.2) < 1e-12
    direct, norm = l1_coherence_normalized(full_density(traj[-1]))
    assert norm == 5.0
    assert abs(direct - rec.I_full) < 1e-12


def test_l1_coherence_rejects_tiny_matrices():
    with pytest.raises(InvalidDimensionError):
        l1_coherence_normalized(np.array([[1.0]]))


def test_entropy_values():
    assert abs(von_neumann_entropy(np.diag([0.5, 0.5])) - 1.0) < 1e-12
    assert von_neumann_entropy(np.array([[1.0, 0.0], [0.0, 0.0]])) == 0.0
    assert abs(von_neumann_entropy(np.diag([0.25, 0.75])) - BINARY_ENTROPY_QUARTER) < 1e-12


def test_entropy_clips_rounding_negatives_only():
    assert von_neumann_entropy(np.diag([1.0 + 5e-11, -5e-11])) == 0.0
    with pytest.raises(NumericalError):
        von_neumann_entropy(np.diag([1.1, -0.1]))


def test_entanglement_product_state_is_zero():
    assert entanglement(initial_state(Lattice(3), SYMMETRIC)) < 1e-12


def test_entanglement_after_one_step_is_maximal():
    traj = evolve(SYMMETRIC, Homogeneous(math.pi / 4), 1, Lattice(1))
    assert abs(entanglement(traj[-1]) - 1.0) < 1e-12


def test_relative_entropy_coherence_values():
    pure_plus = np.full((2, 2), 0.5)
    assert abs(relative_entropy_coherence(pure_plus) - 1.0) < 1e-12
    assert relative_entropy_coherence(np.diag([0.4, 0.6])) == 0.0


def test_relative_entropy_coherence_eigen_oracle():
    traj = evolve(SYMMETRIC, Homogeneous(math.pi / 4), 3, Lattice(3))
    rho = reduce_to_coin(traj[-1])
    w = np.linalg.eigvalsh(rho)
    s_rho = -sum(p * math.log2(p) for p in w if p > 1e-15)
    d = rho.diagonal().real
    s_diag = -sum(p * math.log2(p) for p in d if p > 1e-15)
    assert abs(relative_entropy_coherence(rho) - (s_diag - s_rho)) < 1e-12


def test_correlated_coherence_values():
    value, raw = correlated_coherence(np.diag([0.5, 0.5]))
    assert abs(value - 1.0) < 1e-12 and abs(raw - 1.0) < 1e-12
    value, raw = correlated_coherence(np.full((2, 2), 0.5))
    assert value == 0.0
    assert abs(raw) < 1e-12
    with pytest.raises(InvalidDimensionError):
        correlated_coherence(np.diag([0.2, 0.3, 0.5]))


def test_correlated_coherence_clamps_but_reports_raw():
    # pure (sqrt(.9), sqrt(.1)): C_l1 = 0.6 exceeds S(diag) = H(0.9) ~ 0.469
    v = np.array([math.sqrt(0.9), math.sqrt(0.1)])
    value, raw = correlated_coherence(np.outer(v, v))
    h = -(0.9 * math.log2(0.9) + 0.1 * math.log2(0.1))
    assert abs(raw - (h - 0.6)) < 1e-12
    assert raw < 0
    assert value == 0.0


def test_correlated_coherence_disordered_oracle():
    rng = np.random.default_rng(8)
    lat = Lattice(50)
    spec = SpatialDisorder(rng.uniform(0, math.pi, lat.site_count))
    traj = evolve(SYMMETRIC, spec, 50, lat)
    rho = reduce_to_coin(traj[-1])
    c_l1 = abs(rho[0, 1]) + abs(rho[1, 0])
    d = rho.diagonal().real
    s_diag = -sum(p * math.log2(p) for p in d if p > 1e-15)
    _, raw = correlated_coherence(rho)
    assert abs(raw - (s_diag - c_l1)) < 1e-12


def test_degree_of_interference_symmetric_initial_cancels():
    state = initial_state(Lattice(2), SYMMETRIC)
    mu = degree_of_interference(state, math.pi / 4)
    assert np.all(mu == 0.0)


def test_degree_of_interference_equal_initial_half():
    state = initial_state(Lattice(2), EQUAL)
    mu = degree_of_interference(state, math.pi / 4)
    lat = state.lattice
    assert abs(mu[lat.index_of(1)] - 0.5) < 1e-15
    assert abs(mu[lat.index_of(-1)] - 0.5) < 1e-15
    assert mu[lat.index_of(0)] == 0.0


def test_degree_of_interference_rejects_bad_table():
    state = initial_state(Lattice(2), EQUAL)
    with pytest.raises(InvalidInputError):
        degree_of_interference(state, np.ones(4))


def test_degree_of_interference_equals_decomposition_residual():
    # mu == |P(x,t+1) - incoherent four-term transfer|, checked step by step
    theta = math.pi / 4
    spec = Homogeneous(theta)
    c2, s2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    state = initial_state(Lattice(12), SYMMETRIC)
    for t in range(10):
        pop_up = np.abs(state.up) ** 2
        pop_down = np.abs(state.down) ** 2
        incoherent = np.zeros_like(pop_up)
        incoherent[:-1] += c2 * pop_up[1:] + s2 * pop_down[1:]
        incoherent[1:] += s2 * pop_up[:-1] + c2 * pop_down[:-1]
        mu = degree_of_interference(state, theta)
        from dtqw import apply_step

        state = apply_step(state, spec, t)
        np.testing.assert_allclose(
            mu, np.abs(state.probability() - incoherent), atol=1e-12
        )


def test_split_step_interference_vanishes_for_diagonal_rotations():
    state = initial_state(Lattice(2), InitialCoinState(1, 0))
    mu = degree_of_interference_split_step(state, SplitStep(0.0, 0.0, 0.0))
    assert np.all(mu == 0.0)


def test_std_dev_examples():
    assert abs(std_dev(np.array([0.5, 0.0, 0.5])) - 1.0) < 1e-15
    assert std_dev(np.array([0.0, 1.0, 0.0])) == 0.0
    p = np.zeros(5)
    p[0] = 0.25
    p[2] = 0.5
    p[4] = 0.25
    assert abs(std_dev(p) - math.sqrt(2)) < 1e-15


def test_std_dev_explicit_positions():
    assert abs(std_dev(np.array([0.5, 0.5]), positions=[0, 2]) - 1.0) < 1e-15


def test_std_dev_validation():
    with pytest.raises(InvalidInputError):
        std_dev(np.array([0.5, 0.4, 0.0]))  # sums to 0.9
    with pytest.raises(InvalidInputError):
        std_dev(np.array([0.5, 0.5]))  # even length, no positions


def test_localization_indicator():
    assert localization_indicator([0.2, 1.0, 0.3]) == 0.0
    assert localization_indicator([0.0, 0.0]) == 1.0
    assert abs(localization_indicator([0.1, 0.25]) - 0.75) < 1e-15
    with pytest.raises(InvalidInputError):
        localization_indicator([])


def test_measure_record_bundles_everything_consistently():
    spec = Homogeneous(math.pi / 4)
    traj = evolve(SYMMETRIC, spec, 5, Lattice(6))
    state = traj[-1]
    rec = measure_record(state, 5, spec)
    assert rec.t == 5
    assert abs(rec.prob.sum() - 1.0) < 1e-10
    full_value, _ = l1_coherence_normalized(full_density(state))
    pos_value, _ = l1_coherence_normalized(reduce_to_position(state))
    coin_value, _ = l1_coherence_normalized(reduce_to_coin(state))
    assert abs(rec.I_full - full_value) < 1e-12
    assert abs(rec.I_p - pos_value) < 1e-12
    assert abs(rec.I_c - coin_value) < 1e-12
    assert abs(rec.E - entanglement(state)) < 1e-15
    assert abs(rec.C_r - relative_entropy_coherence(reduce_to_coin(state))) < 1e-15
    assert 0.0 <= rec.I_full <= 1 + 1e-10
    assert 0.0 <= rec.I_p <= 1 + 1e-10
    assert 0.0 <= rec.I_c <= 1 + 1e-10
    assert 0.0 <= rec.E <= 1.0
    assert rec.sigma >= 0.0
    np.testing.assert_array_equal(rec.mu, degree_of_interference(state, math.pi / 4))


def test_measure_record_temporal_needs_next_angle():
    spec = TemporalDisorder(np.array([0.3, 0.9]))
    traj = evolve(SYMMETRIC, spec, 2, Lattice(2))
    with pytest.raises(InvalidInputError):
        measure_record(traj[-1], 2, spec)  # table has no entry for step 2
    rec = measure_record(traj[1], 1, spec)
    np.testing.assert_array_equal(rec.mu, degree_of_interference(traj[1], 0.9))


def test_coin_inequality_chain_along_disordered_trajectories():
    rng = np.random.default_rng(9)
    lat = Lattice(60)
    specs = [
        Homogeneous(math.pi / 4),
        SpatialDisorder(rng.uniform(0, math.pi, lat.site_count)),
        TemporalDisorder(rng.uniform(0, math.pi, 60)),
    ]
    for spec in specs:
        for state in evolve(SYMMETRIC, spec, 60, lat):
            rho = reduce_to_coin(state)
            c_l1 = abs(rho[0, 1]) + abs(rho[1, 0])
            c_r = relative_entropy_coherence(rho)
            e = von_neumann_entropy(rho)
            _, raw = correlated_coherence(rho)
            assert c_l1 >= c_r - 1e-10
            assert e >= raw - 1e-10
