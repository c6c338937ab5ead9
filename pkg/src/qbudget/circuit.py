"""Gate-list circuit IR, named builders, reversal, and the budgeted runner."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import statevec
from .budget import (
    BudgetPolicy,
    CHARGE_SCHEDULE,
    InteractionLedger,
)
from .statevec import PureState, zero_state


class GateKind(enum.Enum):
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    U1Q = "u1q"
    CNOT = "cnot"
    CZ = "cz"
    PSWAP = "pswap"
    MEASURE_Z = "measure_z"


_ONE_QUBIT = {GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.U1Q, GateKind.MEASURE_Z}
_TWO_QUBIT = {GateKind.CNOT, GateKind.CZ, GateKind.PSWAP}


class NotInvertibleError(ValueError):
    """Circuit contains a measurement and cannot be reversed."""


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]
    angle: float | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        arity = 1 if self.kind in _ONE_QUBIT else 2
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind.value} expects {arity} qubit(s)")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError("two-qubit gate needs distinct qubits")
        if self.kind in (GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.PSWAP):
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"{self.kind.value} needs a finite angle")
        if self.kind is GateKind.U1Q and self.matrix is None:
            raise ValueError("u1q needs a matrix")


def rx(q: int, angle: float) -> Gate:
    return Gate(GateKind.RX, (q,), angle=angle)


def ry(q: int, angle: float) -> Gate:
    return Gate(GateKind.RY, (q,), angle=angle)


def rz(q: int, angle: float) -> Gate:
    return Gate(GateKind.RZ, (q,), angle=angle)


def u1q(q: int, matrix: np.ndarray) -> Gate:
    return Gate(GateKind.U1Q, (q,), matrix=np.asarray(matrix, dtype=np.complex128))


def h(q: int) -> Gate:
    m = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
    return u1q(q, m)


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def cz(q1: int, q2: int) -> Gate:
    return Gate(GateKind.CZ, (q1, q2))


def pswap(q1: int, q2: int, angle: float) -> Gate:
    return Gate(GateKind.PSWAP, (q1, q2), angle=angle)


def measure_z(q: int) -> Gate:
    return Gate(GateKind.MEASURE_Z, (q,))


_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)
_CZ = np.diag([1, 1, 1, -1]).astype(np.complex128)
_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)


def rotation_matrix(kind: GateKind, angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    if kind is GateKind.RX:
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    if kind is GateKind.RY:
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if kind is GateKind.RZ:
        return np.array(
            [[np.exp(-0.5j * angle), 0], [0, np.exp(0.5j * angle)]],
            dtype=np.complex128,
        )
    raise ValueError(f"not a rotation kind: {kind}")


def partial_swap_matrix(angle: float) -> np.ndarray:
    """cos(phi) I + i sin(phi) SWAP; phi=0 is no interaction, phi=pi/2 a full swap."""
    return math.cos(angle) * np.eye(4, dtype=np.complex128) + (
        1j * math.sin(angle)
    ) * _SWAP


def gate_matrix_1q(gate: Gate) -> np.ndarray:
    if gate.kind is GateKind.U1Q:
        return gate.matrix
    return rotation_matrix(gate.kind, gate.angle)


def gate_matrix_2q(gate: Gate) -> np.ndarray:
    if gate.kind is GateKind.CNOT:
        return _CNOT
    if gate.kind is GateKind.CZ:
        return _CZ
    if gate.kind is GateKind.PSWAP:
        return partial_swap_matrix(gate.angle)
    raise ValueError(f"not a two-qubit kind: {gate.kind}")


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        for g in self.gates:
            if max(g.qubits) >= self.num_qubits or min(g.qubits) < 0:
                raise ValueError(f"gate {g} outside {self.num_qubits}-qubit register")

    def total_charge(self) -> int:
        """Sum of CNOT-equivalent costs over all two-qubit gates."""
        return sum(
            CHARGE_SCHEDULE[g.kind.value] for g in self.gates if g.kind in _TWO_QUBIT
        )


@dataclass
class RunResult:
    state: PureState
    ledger: InteractionLedger
    suppressions: list[dict]
    measurements: list[tuple[int, int]]


def execute_gates(
    gates: list[Gate],
    state: PureState,
    ledger: InteractionLedger,
    rng: np.random.Generator,
    suppressions: list[dict],
    measurements: list[tuple[int, int]],
    gate_offset: int = 0,
) -> None:
    """Apply gates in order against a shared state and ledger."""
    for idx, gate in enumerate(gates):
        if gate.kind is GateKind.MEASURE_Z:
            # projective collapse in place; the qubit stays in the register
            q = gate.qubits[0]
            view = state.amplitudes.reshape(-1, 2, 1 << q)
            p0 = float(np.sum(np.abs(view[:, 0, :]) ** 2))
            outcome = 0 if rng.random() < p0 else 1
            view[:, 1 - outcome, :] = 0.0
            p = p0 if outcome == 0 else 1.0 - p0
            state.amplitudes /= math.sqrt(p)
            measurements.append((q, outcome))
        elif gate.kind in _ONE_QUBIT:
            statevec.apply_1q(state, gate_matrix_1q(gate), gate.qubits[0])
        else:
            q1, q2 = gate.qubits
            cost = CHARGE_SCHEDULE[gate.kind.value]
            usage_before = [ledger.usage[q1], ledger.usage[q2]]
            if ledger.try_interact(q1, q2, cost):
                statevec.apply_2q(state, gate_matrix_2q(gate), q1, q2)
            else:
                suppressions.append(
                    {
                        "gate_index": gate_offset + idx,
                        "kind": gate.kind.value,
                        "qubits": [q1, q2],
                        "usage_before": usage_before,
                    }
                )


def run(
    circuit: Circuit,
    k: int | None,
    policy: BudgetPolicy = BudgetPolicy.EITHER_EXHAUSTED,
    seed: int = 0,
    cap: int = statevec.DEFAULT_QUBIT_CAP,
) -> RunResult:
    """Run a circuit under budget K (None = enough budget for everything)."""
    if k is None:
        k = circuit.total_charge()
    state = zero_state(circuit.num_qubits, cap=cap)
    ledger = InteractionLedger(cap=k, num_qubits=circuit.num_qubits, policy=policy)
    rng = np.random.default_rng(seed)
    suppressions: list[dict] = []
    measurements: list[tuple[int, int]] = []
    execute_gates(circuit.gates, state, ledger, rng, suppressions, measurements)
    return RunResult(state, ledger, suppressions, measurements)


def suppression_log_jsonl(suppressions: list[dict]) -> str:
    return "\n".join(json.dumps(s, sort_keys=True) for s in suppressions)


# ---------------------------------------------------------------------------
# named builders


def ghz_chain(n: int) -> Circuit:
    """H then a CNOT ladder: (|0..0> + |1..1>)/sqrt(2) with <=2 CNOTs per qubit."""
    if n < 1:
        raise ValueError("need at least one qubit")
    gates = [h(0)] + [cnot(i, i + 1) for i in range(n - 1)]
    return Circuit(n, gates)


def bath_pair_prep(p: float) -> Circuit:
    """Two-qubit prep of sqrt(p)|00> + sqrt(1-p)|11> with one CNOT per qubit."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    theta = 2.0 * math.acos(math.sqrt(p))
    return Circuit(2, [ry(0, theta), cnot(0, 1)])


@dataclass
class ClusterPatch:
    """Honeycomb cluster-state patch in a brick-wall embedding."""

    rows: int
    cols: int
    num_qubits: int
    edges: list[tuple[int, int]]
    circuit: Circuit

    def degrees(self) -> list[int]:
        deg = [0] * self.num_qubits
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)


def hex_cluster(
    rows: int, cols: int, cap: int = statevec.DEFAULT_QUBIT_CAP
) -> ClusterPatch:
    """rows x cols bricks of hexagons; every vertex has degree <= 3.

    Nodes sit on a (rows+1) x (2*cols+1) grid.  All horizontal neighbors
    are bonded; vertical bonds between node-rows r and r+1 sit at columns
    with c % 2 == r % 2, which staggers the bricks.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    width = 2 * cols + 1
    n = (rows + 1) * width
    if n > cap:
        raise statevec.CapacityError(f"{n} qubits exceeds cap {cap}")

    def node(r: int, c: int) -> int:
        return r * width + c

    edges: list[tuple[int, int]] = []
    for r in range(rows + 1):
        for c in range(width - 1):
            edges.append((node(r, c), node(r, c + 1)))
    for r in range(rows):
        for c in range(width):
            if c % 2 == r % 2:
                edges.append((node(r, c), node(r + 1, c)))

    gates = [h(q) for q in range(n)] + [cz(a, b) for a, b in edges]
    return ClusterPatch(rows, cols, n, edges, Circuit(n, gates))


def single_vertex_patch() -> ClusterPatch:
    """Degenerate 1-vertex patch: the graph state is just |+>."""
    return ClusterPatch(0, 0, 1, [], Circuit(1, [h(0)]))


def dagger(circuit: Circuit) -> Circuit:
    """Reverse gate order, inverting each gate."""
    inv: list[Gate] = []
    for g in reversed(circuit.gates):
        if g.kind is GateKind.MEASURE_Z:
            raise NotInvertibleError("cannot invert a measurement")
        if g.kind in (GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.PSWAP):
            inv.append(Gate(g.kind, g.qubits, angle=-g.angle))
        elif g.kind is GateKind.U1Q:
            inv.append(Gate(g.kind, g.qubits, matrix=g.matrix.conj().T))
        else:  # CNOT, CZ self-inverse
            inv.append(g)
    return Circuit(circuit.num_qubits, inv)


SCHMIDT_RANK1_TOL = 1e-12


def schmidt_2q_prep(target: PureState) -> Circuit:
    """Prepare an arbitrary 2-qubit state with at most one CNOT.

    Schmidt decomposition of the target gives Ry(theta) on qubit 0, a
    CNOT(0,1) (dropped for product targets), then local unitaries.
    """
    if target.num_qubits != 2:
        raise ValueError("target must be a 2-qubit state")
    if abs(target.norm() - 1.0) > 1e-9:
        raise ValueError("target is not normalized")

    # m[b0, b1] = amplitude of |b1 b0>, index b0 + 2*b1
    m = target.amplitudes.reshape(2, 2).T
    u, s, vh = np.linalg.svd(m)
    theta = 2.0 * math.acos(min(1.0, float(s[0])))
    gates = [ry(0, theta)]
    if s[1] > SCHMIDT_RANK1_TOL:
        gates.append(cnot(0, 1))
    gates.append(u1q(0, u))
    gates.append(u1q(1, vh.T))
    return Circuit(2, gates)


# ---------------------------------------------------------------------------
# JSON serialization


def gate_to_dict(gate: Gate) -> dict:
    d: dict = {"kind": gate.kind.value, "qubits": list(gate.qubits)}
    if gate.angle is not None:
        d["angle"] = gate.angle
    if gate.matrix is not None:
        d["matrix"] = [[float(x.real), float(x.imag)] for x in gate.matrix.reshape(4)]
    return d


def gate_from_dict(d: dict) -> Gate:
    kind = GateKind(d["kind"])
    qubits = tuple(d["qubits"])
    angle = d.get("angle")
    matrix = None
    if "matrix" in d:
        flat = np.array([complex(re, im) for re, im in d["matrix"]])
        matrix = flat.reshape(2, 2)
    return Gate(kind, qubits, angle=angle, matrix=matrix)


def circuit_to_json(circuit: Circuit) -> str:
    payload = {
        "num_qubits": circuit.num_qubits,
        "gates": [gate_to_dict(g) for g in circuit.gates],
    }
    return json.dumps(payload, sort_keys=True)


def circuit_from_json(text: str) -> Circuit:
    payload = json.loads(text)
    return Circuit(
        payload["num_qubits"], [gate_from_dict(d) for d in payload["gates"]]
    )
