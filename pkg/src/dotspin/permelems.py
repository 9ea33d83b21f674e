"""Permutation overlaps p_i and Hamiltonian matrix elements eps_i.

A bra permutation is written as the tuple of orbital labels occupying
electron slots 1..n, matched against the reference ket ABC (n = 3) or ABCD
(n = 4). The subscript convention counts electrons whose orbital is the
same in bra and ket. Between plain (non-orthogonal) product states the
matrix element of H = sum_i h_i + sum_{i<j} v_ij factorizes exactly:

    eps = sum_i h(bra_i, ket_i) * prod_{j != i} S(bra_j, ket_j)
        + sum_{i<j} (bra_i bra_j | ket_i ket_j) * prod_{k != i,j} S(bra_k, ket_k)

Antisymmetry lives in the permutation-sum states assembled downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .integrals import IntegralTable, build_table
from .model import ModelParams

KET3 = ("A", "B", "C")
KET4 = ("A", "B", "C", "D")

# Representative bra strings per fixed-point count.
REP3 = {3: ("A", "B", "C"), 1: ("B", "A", "C"), 0: ("C", "A", "B")}
REP4 = {
    4: ("A", "B", "C", "D"),
    2: ("B", "A", "C", "D"),
    1: ("A", "D", "B", "C"),
    0: ("B", "A", "D", "C"),
    "0prime": ("D", "A", "B", "C"),
}


def _ket_for(perm: Sequence[str]) -> tuple[str, ...]:
    if len(perm) == 3:
        return KET3
    if len(perm) == 4:
        return KET4
    raise DomainError(f"supported electron counts are 3 and 4, got {len(perm)}")


def product_overlap(perm: Sequence[str], table: IntegralTable) -> float:
    """<perm(orbitals)|orbitals> = product of single-electron overlaps."""
    ket = _ket_for(perm)
    out = 1.0
    for b, k in zip(perm, ket):
        out *= table.s(b, k)
    return out


def hamiltonian_element(perm: Sequence[str], table: IntegralTable) -> float:
    """<perm(orbitals)| H |orbitals> via the exact product-state decomposition.

    Terms are combined with math.fsum, so symmetry-equivalent permutations
    (identical term multisets) give bit-identical values.
    """
    ket = _ket_for(perm)
    n = len(ket)
    s = [table.s(perm[i], ket[i]) for i in range(n)]
    terms = []
    for i in range(n):
        rest = 1.0
        for j in range(n):
            if j != i:
                rest *= s[j]
        terms.append(table.h(perm[i], ket[i]) * rest)
    for i in range(n):
        for j in range(i + 1, n):
            rest = 1.0
            for k in range(n):
                if k != i and k != j:
                    rest *= s[k]
            terms.append(table.v(perm[i], perm[j], ket[i], ket[j]) * rest)
    return math.fsum(terms)


@dataclass(frozen=True)
class PermElements3:
    p3: float
    p1: float
    p0: float
    eps3: float
    eps1: float
    eps0: float


@dataclass(frozen=True)
class PermElements4:
    p4: float
    p2: float
    p1: float
    p0: float
    p0prime: float
    eps4: float
    eps2: float
    eps1: float
    eps0: float
    eps0prime: float


def three_electron_elements(
    params: ModelParams, table: IntegralTable | None = None
) -> PermElements3:
    """p_i / eps_i from the representative bras ABC, BAC, CAB."""
    if table is None:
        table = build_table(params)
    return PermElements3(
        p3=product_overlap(REP3[3], table),
        p1=product_overlap(REP3[1], table),
        p0=product_overlap(REP3[0], table),
        eps3=hamiltonian_element(REP3[3], table),
        eps1=hamiltonian_element(REP3[1], table),
        eps0=hamiltonian_element(REP3[0], table),
    )


def four_electron_elements(
    params: ModelParams, table: IntegralTable | None = None
) -> PermElements4:
    """p_i / eps_i from the representative bras ABCD, BACD, ADBC, BADC, DABC."""
    if table is None:
        table = build_table(params)
    return PermElements4(
        p4=product_overlap(REP4[4], table),
        p2=product_overlap(REP4[2], table),
        p1=product_overlap(REP4[1], table),
        p0=product_overlap(REP4[0], table),
        p0prime=product_overlap(REP4["0prime"], table),
        eps4=hamiltonian_element(REP4[4], table),
        eps2=hamiltonian_element(REP4[2], table),
        eps1=hamiltonian_element(REP4[1], table),
        eps0=hamiltonian_element(REP4[0], table),
        eps0prime=hamiltonian_element(REP4["0prime"], table),
    )
