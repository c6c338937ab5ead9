"""Per-qubit interaction budgets.

Every two-qubit gate is charged against a per-qubit counter capped at K.
Whether a gate with insufficient budget is suppressed depends on the
policy: EITHER_EXHAUSTED suppresses as soon as one participant lacks
headroom, BOTH_EXHAUSTED only when both participants are already at K.
The register-extension oracle re-derives the same semantics by explicit
simulation on the qubit (x) register product space and is used as ground
truth in the equivalence suite.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from . import kernels
from .statevec import CapacityError, DEFAULT_QUBIT_CAP, PureState

if TYPE_CHECKING:
    from .circuit import Circuit


class BudgetPolicy(enum.Enum):
    EITHER_EXHAUSTED = "either"
    BOTH_EXHAUSTED = "both"


#: Charge of each two-qubit gate kind, in CNOT equivalents.  CZ is locally
#: equivalent to CNOT; a partial swap decomposes into 3 CNOTs.
CHARGE_SCHEDULE: dict[str, int] = {"cnot": 1, "cz": 1, "pswap": 3}


class ResetDisabledError(RuntimeError):
    """Register reset was requested but the feature flag is off."""


def decide_interaction(
    u1: int, u2: int, cap: int, policy: BudgetPolicy, cost: int
) -> tuple[bool, int, int]:
    """Pure decision rule: (applied, new_usage1, new_usage2).

    Depends only on the two participants' counters, so the rule is local
    (no-signalling); exhaustively property-tested for small caps.
    """
    if cost < 1:
        raise ValueError("cost must be >= 1")
    if policy is BudgetPolicy.EITHER_EXHAUSTED:
        if u1 + cost <= cap and u2 + cost <= cap:
            return True, u1 + cost, u2 + cost
        return False, u1, u2
    # BOTH_EXHAUSTED: counters saturate at the cap
    if u1 == cap and u2 == cap:
        return False, u1, u2
    return True, min(cap, u1 + cost), min(cap, u2 + cost)


@dataclass
class InteractionLedger:
    cap: int
    num_qubits: int
    policy: BudgetPolicy = BudgetPolicy.EITHER_EXHAUSTED
    allow_reset: bool = False
    usage: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.cap < 0:
            raise ValueError("cap must be >= 0")
        if not self.usage:
            self.usage = [0] * self.num_qubits

    def try_interact(self, q1: int, q2: int, cost: int = 1) -> bool:
        """Charge a two-qubit gate; True if it applies, False if suppressed."""
        if q1 == q2:
            raise ValueError("interaction needs two distinct qubits")
        applied, n1, n2 = decide_interaction(
            self.usage[q1], self.usage[q2], self.cap, self.policy, cost
        )
        if applied:
            self.usage[q1] = n1
            self.usage[q2] = n2
        return applied

    def remaining(self, q: int) -> int:
        return self.cap - self.usage[q]

    def reset_register(self, q: int) -> "InteractionLedger":
        if not self.allow_reset:
            raise ResetDisabledError("register reset is disabled on this ledger")
        self.usage[q] = 0
        return self


def register_oracle_run(
    circuit: "Circuit",
    k: int,
    policy: BudgetPolicy = BudgetPolicy.EITHER_EXHAUSTED,
    cap: int = DEFAULT_QUBIT_CAP,
) -> PureState:
    """Simulate the budget rule by explicit (K+1)-level registers.

    The full product space qubits (x) registers is evolved: every charged
    gate acts conditioned on the register values and shifts them, exactly
    the construction that embeds the restricted theory in ordinary
    quantum mechanics.  Registers start at 0 and evolve classically, so
    the final state must factorize as (qubit part) (x) |k-config>; this
    is verified before the qubit part is returned.
    """
    from .circuit import GateKind, gate_matrix_1q, gate_matrix_2q

    n = circuit.num_qubits
    reg_dim = (k + 1) ** n
    if reg_dim * (1 << n) > (1 << cap):
        raise CapacityError("register-extension space exceeds engine cap")

    # rows: register configurations (base K+1 digits, qubit i = digit i)
    # cols: qubit amplitudes
    state = np.zeros((reg_dim, 1 << n), dtype=np.complex128)
    state[0, 0] = 1.0
    digit_stride = [(k + 1) ** q for q in range(n)]

    for gate in circuit.gates:
        if gate.kind is GateKind.MEASURE_Z:
            raise ValueError("register oracle does not support measurements")
        if len(gate.qubits) == 1:
            u = gate_matrix_1q(gate)
            for row in range(reg_dim):
                kernels.apply_1q(state[row], u, gate.qubits[0])
            continue

        u = gate_matrix_2q(gate)
        cost = CHARGE_SCHEDULE[gate.kind.value]
        q1, q2 = gate.qubits
        new_state = np.zeros_like(state)
        for row in range(reg_dim):
            k1 = (row // digit_stride[q1]) % (k + 1)
            k2 = (row // digit_stride[q2]) % (k + 1)
            applied, nk1, nk2 = decide_interaction(k1, k2, k, policy, cost)
            if applied:
                target = (
                    row
                    + (nk1 - k1) * digit_stride[q1]
                    + (nk2 - k2) * digit_stride[q2]
                )
                amps = state[row].copy()
                kernels.apply_2q(amps, u, q1, q2)
                new_state[target] += amps
            else:
                new_state[row] += state[row]
        state = new_state

    row_norms = np.sum(np.abs(state) ** 2, axis=1)
    live = np.flatnonzero(row_norms > 1e-12)
    if len(live) != 1 or abs(row_norms[live[0]] - 1.0) > 1e-10:
        raise AssertionError("registers entangled with qubits; oracle invariant broken")
    return PureState(n, state[live[0]].copy())
