"""Eigenvalue matching: from permutation elements to spin-Hamiltonian constants.

The effective Hamiltonian of n spins on a fully symmetric dot array is a
polynomial in the total spin, H = L0 + L1*S_T^2 (+ L2*(S_T^2)^2 for n = 4);
floor(n/2) + 1 coefficients suffice because that is the number of distinct
total-spin sectors. Equating sector expectation values of H with Rayleigh
quotients of the antisymmetrized orbital states yields a small linear
system, solved here in closed form, then converted to the pairwise exchange
constant J and (for n = 4) the four-body constant Jprime.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import DegenerateBasisError
from .integrals import IntegralTable, build_table
from .model import ModelParams
from .permelems import (
    PermElements3,
    PermElements4,
    four_electron_elements,
    three_electron_elements,
)

# Below this magnitude a matching denominator signals (near-)linear
# dependence of the orbital basis and the construction must fail loudly.
DEGENERACY_THRESHOLD = 1e-12


@dataclass(frozen=True)
class SpinCoefficients:
    """Spin-Hamiltonian constants for n = 3 or 4, in units of hbar*omega_o.

    energies holds the matched (total spin, energy) pairs. L2, Jprime exist
    only for n = 4; deltaJ only for n = 3 (and only once attached by
    couplings_three).
    """

    n: int
    L0: float
    L1: float
    K: float
    J: float
    L2: float | None = None
    Jprime: float | None = None
    deltaJ: float | None = None
    energies: tuple[tuple[float, float], ...] = ()


def _ratio(num: float, den: float, sector: str) -> float:
    if abs(den) < DEGENERACY_THRESHOLD:
        raise DegenerateBasisError(
            f"{sector} matching denominator {den:.3e} is below threshold; "
            "the localized orbitals are nearly linearly dependent"
        )
    return num / den


def energies_three(e: PermElements3) -> tuple[float, float]:
    """(E_{3/2}, E_{1/2}) Rayleigh quotients from the p/eps elements."""
    e_three_half = _ratio(
        e.eps3 + 2.0 * e.eps0 - 3.0 * e.eps1, e.p3 + 2.0 * e.p0 - 3.0 * e.p1, "S_T=3/2"
    )
    e_half = _ratio(e.eps3 - e.eps0, e.p3 - e.p0, "S_T=1/2")
    return e_three_half, e_half


def coefficients_three(e_three_half: float, e_half: float) -> SpinCoefficients:
    """Solve L0 + (15/4) L1 = E_{3/2}, L0 + (3/4) L1 = E_{1/2}; J = 2 L1."""
    l1 = (e_three_half - e_half) / 3.0
    l0 = e_half - 0.75 * l1
    return SpinCoefficients(
        n=3,
        L0=l0,
        L1=l1,
        K=l0 + 2.25 * l1,
        J=2.0 * l1,
        energies=((0.5, e_half), (1.5, e_three_half)),
    )


def delta_j_three(e: PermElements3) -> float:
    """Change in J when the cyclic three-electron elements (p0, eps0) are zeroed.

    Measures the genuinely three-body contribution to the pairwise coupling.
    """
    full = coefficients_three(*energies_three(e)).J
    zeroed = coefficients_three(*energies_three(replace(e, p0=0.0, eps0=0.0))).J
    return full - zeroed


def energies_four(e: PermElements4) -> tuple[float, float, float]:
    """(E_0, E_1, E_2) Rayleigh quotients for the singlet/triplet/quintet sectors."""
    e0 = _ratio(
        e.eps4 - 4.0 * e.eps1 + 3.0 * e.eps0,
        e.p4 - 4.0 * e.p1 + 3.0 * e.p0,
        "S_T=0",
    )
    e1 = _ratio(
        e.eps4 - 2.0 * e.eps2 - e.eps0 + 2.0 * e.eps0prime,
        e.p4 - 2.0 * e.p2 - e.p0 + 2.0 * e.p0prime,
        "S_T=1",
    )
    e2 = _ratio(
        e.eps4 - 6.0 * e.eps2 + 8.0 * e.eps1 + 3.0 * e.eps0 - 6.0 * e.eps0prime,
        e.p4 - 6.0 * e.p2 + 8.0 * e.p1 + 3.0 * e.p0 - 6.0 * e.p0prime,
        "S_T=2",
    )
    return e0, e1, e2


def coefficients_four(e0: float, e1: float, e2: float) -> SpinCoefficients:
    """Solve {E0 = L0; E1 = L0 + 2 L1 + 4 L2; E2 = L0 + 6 L1 + 36 L2}.

    Conversion: K = L0 + 3 L1 + (27/2) L2, J = 2 L1 + 14 L2, Jprime = 8 L2.
    """
    l0 = e0
    l2 = ((e2 - e0) - 3.0 * (e1 - e0)) / 24.0
    l1 = ((e1 - e0) - 4.0 * l2) / 2.0
    return SpinCoefficients(
        n=4,
        L0=l0,
        L1=l1,
        L2=l2,
        K=l0 + 3.0 * l1 + 13.5 * l2,
        J=2.0 * l1 + 14.0 * l2,
        Jprime=8.0 * l2,
        energies=((0.0, e0), (1.0, e1), (2.0, e2)),
    )


def couplings_three(
    params: ModelParams, table: IntegralTable | None = None
) -> SpinCoefficients:
    """Full three-electron pipeline: elements -> energies -> constants (+ deltaJ)."""
    if table is None:
        table = build_table(params)
    elements = three_electron_elements(params, table)
    coeffs = coefficients_three(*energies_three(elements))
    return replace(coeffs, deltaJ=delta_j_three(elements))


def couplings_four(
    params: ModelParams, table: IntegralTable | None = None
) -> SpinCoefficients:
    """Full four-electron pipeline: elements -> energies -> constants."""
    if table is None:
        table = build_table(params)
    elements = four_electron_elements(params, table)
    return coefficients_four(*energies_four(elements))
