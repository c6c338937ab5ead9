"""Compare the numba and numpy gate kernels on realistic workloads.

Usage: python benchmarks/bench_kernels.py [--n 16 18 20] [--gates 60]
"""

import argparse
import math
import time

import numpy as np

from qbudget.kernels import _numpy

try:
    from qbudget.kernels import _numba

    BACKENDS = {"numpy": _numpy, "numba": _numba}
except ImportError:
    BACKENDS = {"numpy": _numpy}


def random_unitary(dim, rng):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def workload(n, gates, rng):
    ops = []
    for _ in range(gates):
        if rng.random() < 0.5:
            ops.append(("1q", random_unitary(2, rng), int(rng.integers(n)), None))
        else:
            q1, q2 = rng.choice(n, size=2, replace=False)
            ops.append(("2q", random_unitary(4, rng), int(q1), int(q2)))
    return ops


def run_backend(mod, n, ops, repeats=3):
    best = math.inf
    for _ in range(repeats):
        state = np.zeros(1 << n, dtype=np.complex128)
        state[0] = 1.0
        start = time.perf_counter()
        for kind, u, a, b in ops:
            if kind == "1q":
                mod.apply_1q(state, u, a)
            else:
                mod.apply_2q(state, u, a, b)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, nargs="+", default=[16, 18, 20])
    parser.add_argument("--gates", type=int, default=60)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    if "numba" in BACKENDS:
        # warm the JIT outside the timed region
        run_backend(BACKENDS["numba"], 4, workload(4, 4, rng), repeats=1)

    header = f"{'n':>4} {'gates':>6}" + "".join(f" {name:>12}" for name in BACKENDS)
    if len(BACKENDS) == 2:
        header += f" {'speedup':>9}"
    print(header)
    for n in args.n:
        ops = workload(n, args.gates, rng)
        times = {name: run_backend(mod, n, ops) for name, mod in BACKENDS.items()}
        row = f"{n:>4} {args.gates:>6}" + "".join(
            f" {times[name] * 1e3:>10.1f}ms" for name in BACKENDS
        )
        if len(BACKENDS) == 2:
            row += f" {times['numpy'] / times['numba']:>8.2f}x"
        print(row)


if __name__ == "__main__":
    main()
