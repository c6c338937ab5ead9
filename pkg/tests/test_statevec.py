import math

import numpy as np
import pytest

from conftest import haar_state, random_unitary
from qbudget.statevec import (
    CapacityError,
    MixedState,
    PureState,
    apply_1q,
    apply_2q,
    fidelity,
    measure_destructive,
    partial_trace,
    trace_distance,
    zero_state,
)

H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)


def test_zero_state_one_qubit():
    s = zero_state(1)
    np.testing.assert_array_equal(s.amplitudes, [1, 0])


def test_zero_state_three_qubits():
    s = zero_state(3)
    assert s.amplitudes[0] == 1
    assert np.count_nonzero(s.amplitudes) == 1
    assert len(s.amplitudes) == 8


def test_zero_state_empty_register():
    s = zero_state(0)
    np.testing.assert_array_equal(s.amplitudes, [1])


def test_zero_state_cap():
    with pytest.raises(CapacityError):
        zero_state(25)
    with pytest.raises(ValueError):
        zero_state(-1)


def test_hadamard_on_zero():
    s = apply_1q(zero_state(1), H, 0)
    np.testing.assert_allclose(s.amplitudes, [1 / math.sqrt(2), 1 / math.sqrt(2)])


def test_identity_is_bit_exact(rng):
    s = haar_state(3, rng)
    before = s.amplitudes.copy()
    apply_1q(s, np.eye(2, dtype=np.complex128), 1)
    np.testing.assert_array_equal(s.amplitudes, before)
    apply_2q(s, np.eye(4, dtype=np.complex128), 0, 2)
    np.testing.assert_array_equal(s.amplitudes, before)


def test_ry_preparation():
    # oracle: direct 2x2 matrix evaluation of Ry(2*arccos(sqrt(p))) |0>
    p = 0.25
    theta = 2 * math.acos(math.sqrt(p))
    c, s_ = math.cos(theta / 2), math.sin(theta / 2)
    ry = np.array([[c, -s_], [s_, c]], dtype=np.complex128)
    expected = ry @ np.array([1, 0])
    np.testing.assert_allclose(expected, [0.5, math.sqrt(0.75)], atol=1e-15)
    state = apply_1q(zero_state(1), ry, 0)
    np.testing.assert_allclose(state.amplitudes, [0.5, math.sqrt(0.75)], atol=1e-12)


def test_apply_1q_validation(rng):
    s = zero_state(2)
    with pytest.raises(ValueError):
        apply_1q(s, H, 2)
    with pytest.raises(ValueError):
        apply_1q(s, np.array([[1, 1], [0, 1]], dtype=np.complex128), 0)


def test_cnot_makes_bell():
    s = apply_1q(zero_state(2), H, 0)
    apply_2q(s, CNOT, 0, 1)
    np.testing.assert_allclose(
        s.amplitudes, [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)], atol=1e-15
    )


def test_partial_swap_phase():
    # PartialSwap(pi/2) = i SWAP: |01> -> i|10>
    u = np.eye(4) * math.cos(math.pi / 2) + 1j * math.sin(math.pi / 2) * np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    )
    s = zero_state(2)
    s.amplitudes[:] = [0, 0, 1, 0]  # qubit 1 excited
    apply_2q(s, u.astype(np.complex128), 0, 1)
    np.testing.assert_allclose(s.amplitudes, [0, 1j, 0, 0], atol=1e-15)


def test_apply_2q_same_qubit_rejected():
    with pytest.raises(ValueError):
        apply_2q(zero_state(2), np.eye(4, dtype=np.complex128), 1, 1)


def test_norm_preserved_over_random_gates(rng):
    s = haar_state(4, rng)
    for _ in range(50):
        if rng.random() < 0.5:
            apply_1q(s, random_unitary(2, rng), int(rng.integers(4)))
        else:
            q1, q2 = rng.choice(4, size=2, replace=False)
            apply_2q(s, random_unitary(4, rng), int(q1), int(q2))
    assert abs(s.norm() - 1.0) < 1e-12


def test_unitary_roundtrip(rng):
    for _ in range(100):
        s = haar_state(3, rng)
        before = s.amplitudes.copy()
        u = random_unitary(4, rng)
        q1, q2 = rng.choice(3, size=2, replace=False)
        apply_2q(s, u, int(q1), int(q2))
        apply_2q(s, u.conj().T, int(q1), int(q2))
        np.testing.assert_allclose(s.amplitudes, before, atol=1e-12)


def test_partial_trace_bath_pair():
    p = 0.3
    amps = np.zeros(4, dtype=np.complex128)
    amps[0] = math.sqrt(p)
    amps[3] = math.sqrt(1 - p)
    s = PureState(2, amps)
    rho = partial_trace(s, [0])
    np.testing.assert_allclose(rho.matrix, np.diag([0.3, 0.7]), atol=1e-14)


def test_partial_trace_product_state(rng):
    psi = haar_state(1, rng)
    chi = haar_state(1, rng)
    amps = np.kron(chi.amplitudes, psi.amplitudes)  # qubit 0 = psi
    rho = partial_trace(PureState(2, amps), [0])
    expected = np.outer(psi.amplitudes, psi.amplitudes.conj())
    np.testing.assert_allclose(rho.matrix, expected, atol=1e-14)


def test_partial_trace_bell_is_maximally_mixed():
    amps = np.array([1, 0, 0, 1], dtype=np.complex128) / math.sqrt(2)
    for q in (0, 1):
        rho = partial_trace(PureState(2, amps), [q])
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-14)


def test_partial_trace_keep_all_equals_density_matrix(rng):
    s = haar_state(3, rng)
    rho = partial_trace(s, [0, 1, 2])
    np.testing.assert_allclose(rho.matrix, s.density_matrix().matrix, atol=1e-12)
    rho.validate()


def test_partial_trace_keep_order(rng):
    s = haar_state(3, rng)
    a = partial_trace(s, [0, 2]).matrix
    b = partial_trace(s, [2, 0]).matrix
    # swapping the keep order permutes the tensor factors
    perm = [0, 2, 1, 3]
    np.testing.assert_allclose(a, b[np.ix_(perm, perm)], atol=1e-12)


def test_partial_trace_validation(rng):
    s = haar_state(2, rng)
    with pytest.raises(ValueError):
        partial_trace(s, [])
    with pytest.raises(ValueError):
        partial_trace(s, [0, 0])
    with pytest.raises(ValueError):
        partial_trace(s, [2])


def test_partial_trace_of_mixed_state(rng):
    s = haar_state(3, rng)
    rho3 = s.density_matrix()
    via_mixed = partial_trace(rho3, [1])
    via_pure = partial_trace(s, [1])
    np.testing.assert_allclose(via_mixed.matrix, via_pure.matrix, atol=1e-12)


def test_trace_distance_identical(rng):
    rho = partial_trace(haar_state(2, rng), [0])
    assert trace_distance(rho, rho) == 0.0


def test_trace_distance_orthogonal_pure():
    a = MixedState(1, np.diag([1.0, 0.0]).astype(np.complex128))
    b = MixedState(1, np.diag([0.0, 1.0]).astype(np.complex128))
    assert abs(trace_distance(a, b) - 1.0) < 1e-14


def test_trace_distance_vs_svd_oracle(rng):
    for _ in range(20):
        a = partial_trace(haar_state(2, rng), [0])
        b = partial_trace(haar_state(2, rng), [1])
        oracle = 0.5 * np.sum(np.linalg.svd(a.matrix - b.matrix, compute_uv=False))
        assert abs(trace_distance(a, b) - oracle) < 1e-10


def test_trace_distance_metric_properties(rng):
    rhos = [partial_trace(haar_state(2, rng), [0]) for _ in range(6)]
    for a in rhos:
        for b in rhos:
            d_ab = trace_distance(a, b)
            assert d_ab >= 0
            assert abs(d_ab - trace_distance(b, a)) < 1e-12
            for c in rhos:
                assert d_ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-10


def test_trace_distance_dim_mismatch(rng):
    a = partial_trace(haar_state(2, rng), [0])
    b = partial_trace(haar_state(3, rng), [0, 1])
    with pytest.raises(ValueError):
        trace_distance(a, b)


def test_fidelity_cases(rng):
    psi = haar_state(2, rng)
    assert abs(fidelity(psi, psi) - 1.0) < 1e-12
    zero, one = zero_state(1), PureState(1, np.array([0, 1], dtype=np.complex128))
    assert fidelity(zero, one) == 0.0
    plus = apply_1q(zero_state(1), H, 0)
    assert abs(fidelity(zero_state(1), plus) - 0.5) < 1e-12
    with pytest.raises(ValueError):
        fidelity(psi, zero)


def test_measure_deterministic_zero():
    rng = np.random.default_rng(7)
    outcome, post = measure_destructive(zero_state(1), 0, rng)
    assert outcome == 0
    np.testing.assert_array_equal(post.amplitudes, [1])


def test_measure_ghz2_born_frequencies():
    amps = np.array([1, 0, 0, 1], dtype=np.complex128) / math.sqrt(2)
    rng = np.random.default_rng(99)
    hits = 0
    for _ in range(10_000):
        outcome, _ = measure_destructive(PureState(2, amps.copy()), 0, rng)
        hits += outcome
    assert abs(hits / 10_000 - 0.5) <= 0.02


def test_measure_product_state():
    amps = np.zeros(4, dtype=np.complex128)
    amps[0] = amps[2] = 1 / math.sqrt(2)  # |0> (x) |+> with qubit 1 the plus
    outcome, post = measure_destructive(PureState(2, amps), 0, np.random.default_rng(3))
    assert outcome == 0
    np.testing.assert_allclose(post.amplitudes, [1 / math.sqrt(2), 1 / math.sqrt(2)])


def test_measure_seed_reproducible(rng):
    amps = haar_state(3, rng).amplitudes
    runs = []
    for _ in range(2):
        g = np.random.default_rng(2024)
        out, post = measure_destructive(PureState(3, amps.copy()), 1, g)
        runs.append((out, post.amplitudes.tobytes()))
    assert runs[0] == runs[1]


def test_measure_validation():
    with pytest.raises(ValueError):
        measure_destructive(zero_state(0), 0, np.random.default_rng(0))
    with pytest.raises(ValueError):
        measure_destructive(zero_state(2), 2, np.random.default_rng(0))
