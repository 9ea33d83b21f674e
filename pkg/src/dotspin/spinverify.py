"""Dense spin-matrix construction and spectral verification.

Builds explicit 2^n x 2^n representations of the effective Hamiltonian and
checks, entrywise and spectrally, the identities connecting the
total-spin-polynomial form L0 + L1*S_T^2 (+ L2*(S_T^2)^2) with the
coupling-constant form K + J*sum S_i.S_j (+ Jprime * pairing products).
Matrices stay dense; the largest supported case is 64 x 64.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .effective import SpinCoefficients
from .errors import DomainError, SizeError

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)

MIN_SITES = 2
MAX_SITES = 6

# Total-spin sector multiplicities (2 S_T + 1 per tower).
SECTOR_MULTIPLICITY = {3: {0.5: 4, 1.5: 4}, 4: {0.0: 2, 1.0: 9, 2.0: 5}}

# Relative gap below which two spectral levels are treated as one cluster.
CLUSTER_GAP_FACTOR = 1e-8


def pauli_tensor(indices: Sequence[int]) -> np.ndarray:
    """Kronecker product sigma_{i1} x sigma_{i2} x ... (0 denotes identity)."""
    n = len(indices)
    if not MIN_SITES <= n <= MAX_SITES:
        raise SizeError(f"supported site counts are {MIN_SITES}..{MAX_SITES}, got {n}")
    for i in indices:
        if i not in (0, 1, 2, 3):
            raise DomainError(f"Pauli index must be in 0..3, got {i}")
    out = PAULI[indices[0]]
    for i in indices[1:]:
        out = np.kron(out, PAULI[i])
    return out


def _pair_coupling(n: int, i: int, j: int) -> np.ndarray:
    """S_i . S_j with S = sigma/2."""
    out = np.zeros((2**n, 2**n), dtype=complex)
    for axis in (1, 2, 3):
        idx = [0] * n
        idx[i] = axis
        idx[j] = axis
        out += pauli_tensor(idx)
    return 0.25 * out


def total_spin_squared(n: int) -> np.ndarray:
    """S_T^2 = (3n/4) I + 2 sum_{i<j} S_i . S_j for n in {3, 4}."""
    if n not in (3, 4):
        raise SizeError(f"total_spin_squared supports n in {{3, 4}}, got {n}")
    out = 0.75 * n * np.eye(2**n, dtype=complex)
    for i, j in itertools.combinations(range(n), 2):
        out += 2.0 * _pair_coupling(n, i, j)
    return out


def build_hspin(coeffs: SpinCoefficients) -> np.ndarray:
    """K I + J sum S_i.S_j (+ Jprime sum of disjoint-pair products for n = 4)."""
    n = coeffs.n
    if n not in (3, 4):
        raise SizeError(f"build_hspin supports n in {{3, 4}}, got {n}")
    dim = 2**n
    h = coeffs.K * np.eye(dim, dtype=complex)
    pair = {(i, j): _pair_coupling(n, i, j) for i, j in itertools.combinations(range(n), 2)}
    for term in pair.values():
        h += coeffs.J * term
    if n == 4:
        jprime = coeffs.Jprime if coeffs.Jprime is not None else 0.0
        h += jprime * (
            pair[(0, 1)] @ pair[(2, 3)]
            + pair[(0, 2)] @ pair[(1, 3)]
            + pair[(0, 3)] @ pair[(1, 2)]
        )
    return h


def _cluster(values: np.ndarray, gap: float) -> list[tuple[float, int]]:
    """Group sorted values into (mean, count) clusters split at gaps > gap."""
    clusters: list[tuple[float, int]] = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > gap:
            block = values[start:i]
            clusters.append((float(np.mean(block)), len(block)))
            start = i
    return clusters


@dataclass(frozen=True)
class SpectrumReport:
    """Outcome of verify_spectrum, serializable as plain text."""

    n: int
    tol: float
    passed: bool
    eigenvalues: tuple[float, ...]
    clusters: tuple[tuple[float, int], ...]
    expected: tuple[tuple[float, int], ...]
    identity_deviation: float
    failures: tuple[str, ...]

    def as_text(self) -> str:
        lines = [
            f"spin-matrix verification n={self.n} tol={self.tol:g}: "
            + ("PASS" if self.passed else "FAIL")
        ]
        lines.append(
            "  spectrum: "
            + ", ".join(f"{v:.12g} (x{m})" for v, m in self.clusters)
        )
        lines.append(
            "  expected: "
            + ", ".join(f"{v:.12g} (x{m})" for v, m in self.expected)
        )
        lines.append(f"  polynomial-form identity max deviation: {self.identity_deviation:.3e}")
        for f in self.failures:
            lines.append(f"  failure: {f}")
        return "\n".join(lines)


def verify_spectrum(coeffs: SpinCoefficients, tol: float) -> SpectrumReport:
    """Diagonalize the coupling-constant form and check it against the matching.

    Verifies (a) eigenvalues equal the matched sector energies with the
    multiplicities fixed by angular-momentum addition, and (b) the entrywise
    identity with L0 I + L1 S_T^2 (+ L2 (S_T^2)^2).
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    n = coeffs.n
    failures: list[str] = []

    h = build_hspin(coeffs)
    evals = np.linalg.eigvalsh(h)
    spread = float(evals[-1] - evals[0])
    gap = CLUSTER_GAP_FACTOR * max(spread, 1.0)
    clusters = _cluster(evals, gap)

    expected_raw = sorted(
        (energy, SECTOR_MULTIPLICITY[n][spin]) for spin, energy in coeffs.energies
    )
    # Merge target levels that are closer than the cluster gap, so that
    # degenerate coefficients (e.g. J = 0) stay verifiable.
    expected: list[tuple[float, int]] = []
    for value, mult in expected_raw:
        if expected and value - expected[-1][0] <= gap:
            prev_v, prev_m = expected[-1]
            total = prev_m + mult
            expected[-1] = ((prev_v * prev_m + value * mult) / total, total)
        else:
            expected.append((value, mult))

    if len(clusters) != len(expected):
        failures.append(
            f"found {len(clusters)} spectral clusters, expected {len(expected)}"
        )
    else:
        for (got_v, got_m), (want_v, want_m) in zip(clusters, expected):
            if got_m != want_m:
                failures.append(
                    f"level {want_v:.12g}: multiplicity {got_m}, expected {want_m}"
                )
            if abs(got_v - want_v) > tol:
                failures.append(
                    f"level {want_v:.12g}: eigenvalue off by {abs(got_v - want_v):.3e}"
                )

    st2 = total_spin_squared(n)
    poly = coeffs.L0 * np.eye(2**n, dtype=complex) + coeffs.L1 * st2
    if n == 4 and coeffs.L2 is not None:
        poly += coeffs.L2 * (st2 @ st2)
    deviation = float(np.max(np.abs(h - poly)))
    if deviation > tol:
        failures.append(f"polynomial-form identity deviates by {deviation:.3e}")

    return SpectrumReport(
        n=n,
        tol=tol,
        passed=not failures,
        eigenvalues=tuple(float(v) for v in evals),
        clusters=tuple(clusters),
        expected=tuple(expected),
        identity_deviation=deviation,
        failures=tuple(failures),
    )
