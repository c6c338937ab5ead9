"""Exact-arithmetic calculators for the per-qubit budget thresholds.

Everything here runs on Python big integers (and Fraction for ratios):
at n = 4099 the values run to over a thousand digits, so floating point
is useless.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _ceil_div(a: int, b: int) -> int:
    if a < 0 or b <= 0:
        raise ValueError("ceil_div expects nonnegative numerator, positive denominator")
    return (a + b - 1) // b


def k_lower(n: int) -> int:
    """ceil((2^n - 1)/n) - 1: parameter-counting lower bound on K_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _ceil_div((1 << n) - 1, n) - 1


def k_upper(n: int) -> int:
    """ceil(23 * 2^n / 48): best known circuit-depth upper bound on K_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _ceil_div(23 * (1 << n), 48)


def total_cnot_lower(n: int) -> int:
    """ceil((2^n - n - 1)/2): minimum total CNOT count for arbitrary n-qubit prep."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _ceil_div((1 << n) - n - 1, 2)


def ratio_gap(n: int) -> Fraction:
    """Exact K_upper/K_lower; tends to n/2 for large n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return Fraction(k_upper(n), k_lower(n))


@dataclass
class BoundReport:
    n: int
    k_lower: int
    k_upper: int
    total_cnot_lower: int


def bound_report(n: int) -> BoundReport:
    return BoundReport(n, k_lower(n), k_upper(n), total_cnot_lower(n))


@dataclass
class ShorEstimate:
    n_bits: int
    logical_qubits: int
    circuit_depth: int
    k_threshold: int


def shor_estimate(n_bits: int) -> ShorEstimate:
    """Resource arithmetic for factoring an n-bit integer: 2n+3 qubits, depth 32 n^3."""
    if n_bits < 1:
        raise ValueError("n_bits must be >= 1")
    depth = 32 * n_bits**3
    return ShorEstimate(
        n_bits=n_bits,
        logical_qubits=2 * n_bits + 3,
        circuit_depth=depth,
        k_threshold=depth,
    )
