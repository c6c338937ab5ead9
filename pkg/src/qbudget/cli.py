"""Batch command-line front end.

Every subcommand is seed-deterministic: the same flags and seed produce
byte-identical output.  JSON payloads carry ``"schema": "1"``; CSV uses
comma separators, dot decimals, and a header row.  Exit code is 0 iff
all requested checks pass.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import bounds as bounds_mod
from . import synth as synth_mod
from .budget import BudgetPolicy
from .circuit import ghz_chain, hex_cluster, run
from .experiments import (
    InitialQubitParams,
    cluster_stabilizer_check,
    k_thermal,
    oracle_equivalence_suite,
    random_circuit,
    reversibility_check,
    thermalize,
)
from .statevec import PureState, fidelity, zero_state

SCHEMA = "1"
DEFAULT_SEED = 20240101


def _parse_k(text: str) -> int | None:
    if text.lower() == "unlimited":
        return None
    k = int(text)
    if k < 0:
        raise argparse.ArgumentTypeError("K must be >= 0 or 'unlimited'")
    return k


def _parse_policy(text: str) -> BudgetPolicy:
    return BudgetPolicy(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(payload: dict) -> str:
    payload = {"schema": SCHEMA, **payload}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_bounds(args) -> int:
    rows = [bounds_mod.bound_report(n) for n in args.n]
    if args.format == "json":
        payload = {
            "bounds": [
                {
                    "n": r.n,
                    "k_lower": str(r.k_lower),
                    "k_upper": str(r.k_upper),
                    "total_cnot_lower": str(r.total_cnot_lower),
                }
                for r in rows
            ]
        }
        _emit(_json(payload), args.out)
    else:
        lines = ["n,k_lower,k_upper,total_cnot_lower"]
        lines += [f"{r.n},{r.k_lower},{r.k_upper},{r.total_cnot_lower}" for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_ghz(args) -> int:
    circ = ghz_chain(args.n)
    result = run(circ, args.k, policy=args.policy, seed=args.seed)
    ideal = zero_state(args.n)
    ideal.amplitudes[0] = 1.0 / math.sqrt(2)
    ideal.amplitudes[-1] = 1.0 / math.sqrt(2)
    fid = fidelity(result.state, ideal)
    payload = {
        "n": args.n,
        "k": "unlimited" if args.k is None else args.k,
        "policy": args.policy.value,
        "seed": args.seed,
        "fidelity_vs_ghz": fid,
        "suppressions": result.suppressions,
        "usage": result.ledger.usage,
    }
    _emit(_json(payload), args.out)
    ok = payload["fidelity_vs_ghz"] >= 1.0 - 1e-10 and not result.suppressions
    return 0 if ok else 1


def cmd_thermalize(args) -> int:
    if args.cos_phi >= 1.0:
        print("error: --cos-phi must be < 1 (no convergence at 1)", file=sys.stderr)
        return 2
    if args.cos_phi < 0.0:
        print("error: --cos-phi must be >= 0", file=sys.stderr)
        return 2
    init = InitialQubitParams(d0=args.d0, k0=complex(args.k0_re, args.k0_im))
    report = thermalize(
        init, args.p, math.acos(args.cos_phi), args.m, args.k, policy=args.policy
    )
    if args.format == "json":
        payload = {
            "p": args.p,
            "cos_phi": args.cos_phi,
            "m_max": args.m,
            "k": "unlimited" if args.k is None else args.k,
            "distances": report.distances,
            "bound": report.bound,
            "system_budget_spent": report.system_budget_spent,
            "collisions_applied": report.collisions_applied,
            "violations": report.violations,
            "passed": report.passed,
        }
        _emit(_json(payload), args.out)
    else:
        lines = ["m,D_m,bound_m"]
        lines += [
            f"{m},{report.distances[m]!r},{report.bound[m]!r}"
            for m in range(args.m + 1)
        ]
        lines.append(f"# passed={str(report.passed).lower()}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.passed else 1


def cmd_cluster(args) -> int:
    patch = hex_cluster(args.rows, args.cols)
    report = cluster_stabilizer_check(patch, args.k, policy=args.policy)
    failing = [
        v for v, e in enumerate(report.expectations) if abs(e - 1.0) > 1e-10
    ]
    payload = {
        "rows": args.rows,
        "cols": args.cols,
        "num_qubits": patch.num_qubits,
        "k": "unlimited" if args.k is None else args.k,
        "expectations": report.expectations,
        "failing_vertices": failing,
        "suppressions": report.suppressions,
        "all_pass": report.all_pass,
    }
    _emit(_json(payload), args.out)
    return 0 if report.all_pass else 1


def cmd_synth(args) -> int:
    ansatz = synth_mod.default_3q_ansatz()
    rng = np.random.default_rng(args.seed)
    results = []
    for i in range(args.targets):
        target = _haar_state(3, rng)
        res = synth_mod.synthesize(
            target,
            ansatz,
            max_iters=args.max_iters,
            seed=int(rng.integers(2**63)),
            n_starts=args.starts,
        )
        results.append(res)
    infids = sorted(r.infidelity for r in results)
    median = infids[len(infids) // 2]
    payload = {
        "targets": args.targets,
        "seed": args.seed,
        "layout": [list(p) for p in ansatz.cnot_layout],
        "per_qubit_usage": synth_mod.layout_usage(ansatz),
        "infidelities": [r.infidelity for r in results],
        "median_infidelity": median,
        "converged": sum(r.converged for r in results),
        "note": "desk-scale reachability probe, not a tightness proof",
    }
    _emit(_json(payload), args.out)
    return 0 if median <= 1e-3 else 1


def cmd_revcheck(args) -> int:
    rng = np.random.default_rng(args.seed)
    violations = []
    records = []
    for i in range(args.trials):
        circ = random_circuit(args.n, int(rng.integers(2, 13)), rng)
        rep = reversibility_check(circ, args.k, policy=args.policy)
        premise = rep.max_forward_usage <= args.k // 2
        if premise and not rep.reversible:
            violations.append(i)
        records.append(
            {
                "trial": i,
                "max_forward_usage": rep.max_forward_usage,
                "premise_holds": premise,
                "reversible": rep.reversible,
                "return_fidelity": rep.return_fidelity,
            }
        )
    payload = {
        "n": args.n,
        "k": args.k,
        "trials": args.trials,
        "seed": args.seed,
        "violations": violations,
        "records": records,
        "passed": not violations,
    }
    _emit(_json(payload), args.out)
    return 0 if not violations else 1


def _haar_state(n: int, rng: np.random.Generator) -> PureState:
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    amps = amps.astype(np.complex128)
    amps /= np.linalg.norm(amps)
    return PureState(n, amps)


def cmd_verify(args) -> int:
    summary: dict = {"suite": args.suite, "seed": args.seed}
    ok = True
    if args.suite == "oracle":
        reports = {}
        for policy in BudgetPolicy:
            rep = oracle_equivalence_suite(200, 3, 2, args.seed, policy=policy)
            reports[policy.value] = {
                "max_deviation": rep.max_deviation,
                "passed": rep.passed,
            }
            ok = ok and rep.passed
        summary["policies"] = reports
    elif args.suite == "reversibility":
        rng = np.random.default_rng(args.seed)
        k = args.k if args.k is not None else 6
        bad = []
        for i in range(100):
            circ = random_circuit(3, int(rng.integers(2, 13)), rng)
            rep = reversibility_check(circ, k)
            if rep.max_forward_usage <= k // 2 and not rep.reversible:
                bad.append(i)
        ok = not bad
        summary["k"] = k
        summary["violations"] = bad
    elif args.suite == "cluster":
        k = args.k if args.k is not None else 3
        reports = {}
        for name, patch in (("hexagon", hex_cluster(1, 1)), ("brick_2x2", hex_cluster(2, 2))):
            rep = cluster_stabilizer_check(patch, k)
            failing = [
                v for v, e in enumerate(rep.expectations) if abs(e - 1.0) > 1e-10
            ]
            reports[name] = {"all_pass": rep.all_pass, "failing_vertices": failing}
            ok = ok and rep.all_pass
        summary["k"] = k
        summary["patches"] = reports
    elif args.suite == "synth":
        ansatz = synth_mod.default_3q_ansatz()
        rng = np.random.default_rng(args.seed)
        infids = []
        for _ in range(6):
            res = synth_mod.synthesize(
                _haar_state(3, rng),
                ansatz,
                seed=int(rng.integers(2**63)),
            )
            infids.append(res.infidelity)
        grad_dev = max(
            synth_mod.gradient_check(
                ansatz,
                rng.uniform(0, 2 * math.pi, ansatz.n_params),
                _haar_state(3, rng).amplitudes,
            )
            for _ in range(5)
        )
        median = sorted(infids)[len(infids) // 2]
        ok = median <= 1e-3 and grad_dev <= 1e-5
        summary["median_infidelity"] = median
        summary["max_gradient_deviation"] = grad_dev
    summary["passed"] = ok
    _emit(_json(summary), args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbudget",
        description="Simulator for qubit circuits with per-qubit interaction budgets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_k=True):
        if with_k:
            p.add_argument("--k", type=_parse_k, default=None,
                           help="per-qubit budget K, or 'unlimited'")
        p.add_argument("--policy", type=_parse_policy, default=BudgetPolicy.EITHER_EXHAUSTED,
                       choices=list(BudgetPolicy))
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--out", default=None, help="write output to a file")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("bounds", help="exact budget-threshold calculators")
    p.add_argument("n", type=int, nargs="+")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("ghz", help="GHZ chain under a budget")
    p.add_argument("n", type=int)
    common(p)
    p.set_defaults(func=cmd_ghz)

    p = sub.add_parser("thermalize", help="collision-model thermalization trace")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--cos-phi", type=float, required=True, dest="cos_phi")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d0", type=float, default=1.0)
    p.add_argument("--k0-re", type=float, default=0.0, dest="k0_re")
    p.add_argument("--k0-im", type=float, default=0.0, dest="k0_im")
    common(p)
    p.set_defaults(func=cmd_thermalize, format="csv")

    p = sub.add_parser("cluster", help="honeycomb cluster-state stabilizer check")
    p.add_argument("--rows", type=int, default=1)
    p.add_argument("--cols", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("synth", help="variational 3-qubit synthesis probe")
    p.add_argument("--targets", type=int, default=30)
    p.add_argument("--starts", type=int, default=8)
    p.add_argument("--max-iters", type=int, default=300, dest="max_iters")
    common(p, with_k=False)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("revcheck", help="reversibility implication over random circuits")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)
    common(p)
    p.set_defaults(func=cmd_revcheck)

    p = sub.add_parser("verify", help="aggregated pass/fail suites")
    p.add_argument("suite", choices=("oracle", "reversibility", "cluster", "synth"))
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "revcheck" and args.k is None:
        args.k = 6
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
