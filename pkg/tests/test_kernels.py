"""Backend parity: numba kernels must agree with the pure-numpy fallback."""

import importlib

import numpy as np
import pytest

from conftest import haar_state, random_unitary
from qbudget.kernels import _numpy

numba_kernels = pytest.importorskip("qbudget.kernels._numba")


def test_backend_flag_is_exposed():
    import qbudget.kernels as k

    assert k.BACKEND in ("numba", "numpy")


@pytest.mark.parametrize("n", [1, 2, 4, 7])
def test_apply_1q_parity(n, rng):
    for _ in range(10):
        u = random_unitary(2, rng)
        q = int(rng.integers(n))
        a = haar_state(n, rng).amplitudes
        b = a.copy()
        _numpy.apply_1q(a, u, q)
        numba_kernels.apply_1q(b, u, q)
        np.testing.assert_allclose(a, b, atol=1e-14)


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_apply_2q_parity(n, rng):
    for _ in range(10):
        u = random_unitary(4, rng)
        q1, q2 = rng.choice(n, size=2, replace=False)
        a = haar_state(n, rng).amplitudes
        b = a.copy()
        _numpy.apply_2q(a, u, int(q1), int(q2))
        numba_kernels.apply_2q(b, u, int(q1), int(q2))
        np.testing.assert_allclose(a, b, atol=1e-14)


def test_qubit_order_convention():
    # qubit 0 is the least-significant amplitude-index bit
    x = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    for mod in (_numpy, numba_kernels):
        state = np.zeros(4, dtype=np.complex128)
        state[0] = 1.0
        mod.apply_1q(state, x, 1)
        assert state[2] == 1.0
