"""Dense statevector engine.

Pure states are 1-D complex128 arrays of 2**n amplitudes; qubit 0 is the
least-significant bit of the amplitude index.  Gate application mutates
the state in place through the strided kernels (numba or numpy backend,
see :mod:`qbudget.kernels`).  Mixedness only ever arises via partial
trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels

DEFAULT_QUBIT_CAP = 24
ATOL = 1e-10
UNITARY_ATOL = 1e-12


class CapacityError(ValueError):
    """Register size exceeds the configured amplitude-array cap."""


@dataclass
class PureState:
    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def copy(self) -> "PureState":
        return PureState(self.num_qubits, self.amplitudes.copy())

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def density_matrix(self) -> "MixedState":
        a = self.amplitudes
        return MixedState(self.num_qubits, np.outer(a, a.conj()))


@dataclass
class MixedState:
    """Density matrix over a kept subset of qubits."""

    num_qubits: int
    matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def validate(self, atol: float = 1e-12) -> None:
        m = self.matrix
        if m.shape != (self.dim, self.dim):
            raise ValueError("density matrix shape mismatch")
        if not np.allclose(m, m.conj().T, atol=atol):
            raise ValueError("density matrix not Hermitian")
        if abs(np.trace(m).real - 1.0) > atol:
            raise ValueError("density matrix trace != 1")
        if np.min(np.linalg.eigvalsh(m)) < -1e-10:
            raise ValueError("density matrix not positive semidefinite")


def _check_unitary(u: np.ndarray, dim: int) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (dim, dim):
        raise ValueError(f"expected {dim}x{dim} matrix, got shape {u.shape}")
    if not np.allclose(u.conj().T @ u, np.eye(dim), atol=1e-10):
        raise ValueError("matrix is not unitary")
    return u


def zero_state(n: int, cap: int = DEFAULT_QUBIT_CAP) -> PureState:
    """|0...0> on n qubits (n=0 gives the scalar state)."""
    if n < 0:
        raise ValueError("qubit count must be >= 0")
    if n > cap:
        raise CapacityError(f"{n} qubits exceeds cap {cap}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return PureState(n, amps)


def apply_1q(state: PureState, u: np.ndarray, q: int) -> PureState:
    if not 0 <= q < state.num_qubits:
        raise ValueError(f"qubit {q} out of range")
    u = _check_unitary(u, 2)
    kernels.apply_1q(state.amplitudes, u, q)
    return state


def apply_2q(state: PureState, u: np.ndarray, q1: int, q2: int) -> PureState:
    """Apply a 4x4 unitary with q1 the first tensor factor."""
    if q1 == q2:
        raise ValueError("two-qubit gate needs two distinct qubits")
    for q in (q1, q2):
        if not 0 <= q < state.num_qubits:
            raise ValueError(f"qubit {q} out of range")
    u = _check_unitary(u, 4)
    kernels.apply_2q(state.amplitudes, u, q1, q2)
    return state


def partial_trace(state: PureState | MixedState, keep: list[int]) -> MixedState:
    """Reduced density matrix over ``keep``, in the given order.

    keep[0] becomes the least-significant bit of the reduced index,
    matching the full-register convention.
    """
    n = state.num_qubits
    if len(keep) == 0:
        raise ValueError("keep set must be non-empty")
    if len(set(keep)) != len(keep):
        raise ValueError("keep indices must be distinct")
    for q in keep:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range")

    # numpy axis i of the reshaped tensor carries qubit n-1-i
    axis_of = [n - 1 - q for q in keep]
    rest = [ax for ax in range(n) if ax not in axis_of]
    # reversed: last moved axis must be the most significant kept bit
    order = list(reversed(axis_of)) + rest

    k = len(keep)
    if isinstance(state, PureState):
        psi = state.amplitudes.reshape((2,) * n).transpose(order)
        m = psi.reshape(1 << k, 1 << (n - k))
        rho = m @ m.conj().T
    else:
        row_order = order + [n + ax for ax in order]
        t = state.matrix.reshape((2,) * (2 * n)).transpose(row_order)
        t = t.reshape(1 << k, 1 << (n - k), 1 << k, 1 << (n - k))
        rho = np.einsum("ajbj->ab", t)
    return MixedState(k, rho)


def trace_distance(a: MixedState, b: MixedState) -> float:
    """Half the trace norm of a - b (so orthogonal pure states are at 1)."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    diff = a.matrix - b.matrix
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def fidelity(a: PureState, b: PureState) -> float:
    if a.num_qubits != b.num_qubits:
        raise ValueError("dimension mismatch")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def measure_destructive(
    state: PureState, q: int, rng: np.random.Generator
) -> tuple[int, PureState]:
    """Measure qubit q in Z and drop it from the register."""
    n = state.num_qubits
    if n < 1:
        raise ValueError("no qubit to measure")
    if not 0 <= q < n:
        raise ValueError(f"qubit {q} out of range")

    view = state.amplitudes.reshape(-1, 2, 1 << q)
    p0 = float(np.sum(np.abs(view[:, 0, :]) ** 2))
    outcome = 0 if rng.random() < p0 else 1
    branch = view[:, outcome, :].reshape(-1)
    p = p0 if outcome == 0 else 1.0 - p0
    post = PureState(n - 1, np.ascontiguousarray(branch) / np.sqrt(p))
    return outcome, post
