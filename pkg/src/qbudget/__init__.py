"""Simulator and analysis toolkit for qubit circuits under per-qubit
two-qubit-interaction budgets."""

from .budget import (
    BudgetPolicy,
    CHARGE_SCHEDULE,
    InteractionLedger,
    decide_interaction,
    register_oracle_run,
)
from .bounds import bound_report, k_lower, k_upper, ratio_gap, shor_estimate, total_cnot_lower
from .circuit import (
    Circuit,
    Gate,
    GateKind,
    bath_pair_prep,
    circuit_from_json,
    circuit_to_json,
    dagger,
    ghz_chain,
    hex_cluster,
    run,
    schmidt_2q_prep,
)
from .experiments import (
    InitialQubitParams,
    cluster_stabilizer_check,
    k_thermal,
    oracle_equivalence_suite,
    reversibility_check,
    thermalize,
)
from .kernels import BACKEND
from .statevec import (
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
from .synth import Ansatz, layout_usage, synthesize

__version__ = "0.1.0"
