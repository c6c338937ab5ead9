"""Named experiments with pass/fail bound checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import statevec
from .budget import BudgetPolicy, CHARGE_SCHEDULE, decide_interaction, register_oracle_run
from .circuit import (
    Circuit,
    ClusterPatch,
    Gate,
    GateKind,
    bath_pair_prep,
    cnot,
    cz,
    dagger,
    gate_matrix_1q,
    gate_matrix_2q,
    partial_swap_matrix,
    pswap,
    run,
    rx,
    ry,
    rz,
)
from .statevec import (
    MixedState,
    PureState,
    fidelity,
    partial_trace,
    trace_distance,
    zero_state,
)

BOUND_TOL = 1e-9

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Z = np.diag([1, -1]).astype(np.complex128)


# ---------------------------------------------------------------------------
# thermalization (collision model)


@dataclass
class InitialQubitParams:
    """Initial system qubit [[1-d0, conj(k0)], [k0, d0]]; d0 is the excited population."""

    d0: float
    k0: complex = 0.0

    def density_matrix(self) -> np.ndarray:
        rho = np.array(
            [[1.0 - self.d0, np.conj(self.k0)], [self.k0, self.d0]],
            dtype=np.complex128,
        )
        if not 0.0 <= self.d0 <= 1.0:
            raise ValueError("d0 must be in [0, 1]")
        if np.min(np.linalg.eigvalsh(rho)) < -1e-12:
            raise ValueError("initial parameters do not give a valid density matrix")
        return rho


@dataclass
class ThermalizationReport:
    p: float
    phi: float
    m_max: int
    distances: list[float]
    bound: list[float]
    system_budget_spent: int
    collisions_applied: int
    violations: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def _purify_qubit(rho: np.ndarray) -> np.ndarray:
    """2-qubit pure amplitudes (ancilla = qubit 0, system = qubit 1)."""
    lam, vec = np.linalg.eigh(rho)
    lam = np.clip(lam, 0.0, None)
    amps = np.zeros(4, dtype=np.complex128)
    for i in range(2):
        for b_sys in range(2):
            amps[i + 2 * b_sys] = math.sqrt(lam[i]) * vec[b_sys, i]
    return amps


def thermalize(
    init: InitialQubitParams,
    p: float,
    phi: float,
    m_max: int,
    k: int | None,
    policy: BudgetPolicy = BudgetPolicy.EITHER_EXHAUSTED,
) -> ThermalizationReport:
    """Collide the system qubit with fresh bath qubits via partial swaps.

    Each collision prepares a bath pair sqrt(p)|00>+sqrt(1-p)|11>, traces
    out the partner, partial-swaps system and bath qubit, then traces the
    bath away again; the system's mixed state is carried between steps by
    re-purifying against a hidden ancilla (never interacted with, never
    charged).  The swap charges 3 CNOT equivalents to the system and to
    the bath qubit (the latter already carries 1 from its prep CNOT).
    Once the system budget is exhausted the collisions suppress and the
    distance trace freezes.
    """
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    c = math.cos(phi)
    if not 0.0 <= c <= 1.0:
        raise ValueError("cos(phi) must be in [0, 1]")

    sigma_t = MixedState(1, np.diag([p, 1.0 - p]).astype(np.complex128))
    rho = init.density_matrix()
    swap_cost = CHARGE_SCHEDULE["pswap"]
    prep_circuit = bath_pair_prep(p)
    cap = k if k is not None else m_max * swap_cost + swap_cost

    distances = [trace_distance(MixedState(1, rho), sigma_t)]
    sys_usage = 0
    applied = 0
    for _ in range(m_max):
        # qubits: 0 ancilla, 1 system, 2 bath, 3 bath partner
        amps = np.zeros(16, dtype=np.complex128)
        amps[:4] = _purify_qubit(rho)
        state = PureState(4, amps)
        for g in prep_circuit.gates:
            if len(g.qubits) == 1:
                statevec.apply_1q(state, gate_matrix_1q(g), g.qubits[0] + 2)
            else:
                statevec.apply_2q(
                    state, gate_matrix_2q(g), g.qubits[0] + 2, g.qubits[1] + 2
                )
        bath_usage = 1  # prep CNOT already charged to the bath qubit
        ok, new_sys, _ = decide_interaction(sys_usage, bath_usage, cap, policy, swap_cost)
        if ok:
            statevec.apply_2q(state, partial_swap_matrix(phi), 1, 2)
            sys_usage = new_sys
            applied += 1
        rho = partial_trace(state, [1]).matrix
        distances.append(trace_distance(MixedState(1, rho), sigma_t))

    bound = [c**m for m in range(m_max + 1)]
    violations = [m for m in range(m_max + 1) if distances[m] > bound[m] + BOUND_TOL]
    return ThermalizationReport(
        p=p,
        phi=phi,
        m_max=m_max,
        distances=distances,
        bound=bound,
        system_budget_spent=sys_usage,
        collisions_applied=applied,
        violations=violations,
    )


def k_thermal(epsilon: float, phi: float) -> int:
    """Per-qubit CNOT budget guaranteeing thermalization to trace distance epsilon."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must be in (0, 1)")
    c = math.cos(phi)
    if c >= 1.0:
        raise ValueError("cos(phi) = 1 never converges")
    if c < 0.0:
        raise ValueError("cos(phi) must be in [0, 1)")
    if c == 0.0:
        return 3  # one full swap
    return 3 * math.ceil(math.log(epsilon) / math.log(c))


def k_thermal_per_digit(phi: float) -> float:
    """CNOTs per decimal digit of thermalization precision."""
    c = math.cos(phi)
    if not 0.0 < c < 1.0:
        raise ValueError("cos(phi) must be in (0, 1)")
    return 3.0 * math.log(10.0) / abs(math.log(c))


# ---------------------------------------------------------------------------
# reversibility


@dataclass
class ReversibilityReport:
    reversible: bool
    max_forward_usage: int
    return_fidelity: float
    forward_suppressions: int
    reverse_suppressions: int


def reversibility_check(
    circuit: Circuit,
    k: int,
    policy: BudgetPolicy = BudgetPolicy.EITHER_EXHAUSTED,
) -> ReversibilityReport:
    """Run C then dagger(C) under one shared ledger; check return to |0..0>."""
    inverse = dagger(circuit)  # raises on measurements
    result = run(circuit, k, policy=policy)
    max_forward = max(result.ledger.usage, default=0)
    n_forward_sup = len(result.suppressions)

    from .circuit import execute_gates

    rng = np.random.default_rng(0)
    execute_gates(
        inverse.gates,
        result.state,
        result.ledger,
        rng,
        result.suppressions,
        result.measurements,
        gate_offset=len(circuit.gates),
    )
    fid = fidelity(result.state, zero_state(circuit.num_qubits))
    return ReversibilityReport(
        reversible=fid >= 1.0 - 1e-9,
        max_forward_usage=max_forward,
        return_fidelity=fid,
        forward_suppressions=n_forward_sup,
        reverse_suppressions=len(result.suppressions) - n_forward_sup,
    )


# ---------------------------------------------------------------------------
# cluster-state stabilizers


@dataclass
class ClusterReport:
    all_pass: bool
    expectations: list[float]
    suppressions: int


def cluster_stabilizer_check(
    patch: ClusterPatch,
    k: int | None,
    policy: BudgetPolicy = BudgetPolicy.EITHER_EXHAUSTED,
    tol: float = 1e-10,
) -> ClusterReport:
    """Expectation of X_a prod_{b in N(a)} Z_b for every vertex a."""
    result = run(patch.circuit, k, policy=policy)
    psi = result.state
    expectations = []
    for a in range(patch.num_qubits):
        phi_state = psi.copy()
        statevec.apply_1q(phi_state, _X, a)
        for b in patch.neighbors(a):
            statevec.apply_1q(phi_state, _Z, b)
        expectations.append(
            float(np.vdot(psi.amplitudes, phi_state.amplitudes).real)
        )
    all_pass = all(abs(e - 1.0) <= tol for e in expectations)
    return ClusterReport(all_pass, expectations, len(result.suppressions))


# ---------------------------------------------------------------------------
# ledger-vs-register-oracle equivalence


def random_circuit(
    n: int,
    depth: int,
    rng: np.random.Generator,
    two_qubit_prob: float = 0.5,
    include_pswap: bool = True,
) -> Circuit:
    """Random measurement-free circuit over the charged gate set."""
    gates: list[Gate] = []
    two_kinds = ["cnot", "cz", "pswap"] if include_pswap else ["cnot", "cz"]
    for _ in range(depth):
        if n >= 2 and rng.random() < two_qubit_prob:
            q1, q2 = rng.choice(n, size=2, replace=False)
            kind = two_kinds[rng.integers(len(two_kinds))]
            if kind == "cnot":
                gates.append(cnot(int(q1), int(q2)))
            elif kind == "cz":
                gates.append(cz(int(q1), int(q2)))
            else:
                gates.append(pswap(int(q1), int(q2), float(rng.uniform(0, math.pi))))
        else:
            q = int(rng.integers(n))
            angle = float(rng.uniform(0, 2 * math.pi))
            maker = (rx, ry, rz)[rng.integers(3)]
            gates.append(maker(q, angle))
    return Circuit(n, gates)


@dataclass
class EquivalenceReport:
    trials: int
    max_deviation: float
    passed: bool


def oracle_equivalence_suite(
    trials: int,
    n: int,
    k: int,
    seed: int,
    policy: BudgetPolicy = BudgetPolicy.EITHER_EXHAUSTED,
    depth: int = 12,
    tol: float = 1e-10,
) -> EquivalenceReport:
    """Ledger semantics vs explicit register-extension simulation."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        circ = random_circuit(n, int(rng.integers(1, depth + 1)), rng)
        via_ledger = run(circ, k, policy=policy).state
        via_oracle = register_oracle_run(circ, k, policy=policy)
        dev = float(np.max(np.abs(via_ledger.amplitudes - via_oracle.amplitudes)))
        worst = max(worst, dev)
    return EquivalenceReport(trials=trials, max_deviation=worst, passed=worst <= tol)
