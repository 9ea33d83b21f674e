"""Independent numerical ground truth for the closed-form pipeline.

Deterministic quadrature reproduces every one- and two-body integral from
the raw orbital definitions: one-body integrands are evaluated pointwise on
tensor Gauss-Hermite grids and the Coulomb kernel is integrated through its
one-dimensional reduction with Gauss-Legendre nodes, never through the erf
closed form. The contraction oracles consume the integral table but rebuild
every multi-electron quantity term by term, expanding all n! x n!
permutation pairs with explicit spin overlaps instead of using the
representative-permutation assembly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DegenerateBasisError, DomainError, NonConvergenceError
from .integrals import IntegralTable, Orbital, build_table
from .model import ModelParams, potential

ONE_BODY_KINDS = ("overlap", "kinetic", "potential")

NORM_THRESHOLD = 1e-12


@dataclass(frozen=True)
class QuadratureSpec:
    """Deterministic quadrature configuration (bit-identical reruns)."""

    node_count: int = 20
    method: str = "gauss-hermite"
    target_tol: float = 1e-11
    max_nodes: int = 80

    def __post_init__(self):
        if self.node_count < 1 or self.max_nodes < self.node_count:
            raise DomainError("need 1 <= node_count <= max_nodes")
        if self.target_tol <= 0:
            raise DomainError("target_tol must be positive")


DEFAULT_ONE_BODY_SPEC = QuadratureSpec()
DEFAULT_COULOMB_SPEC = QuadratureSpec(
    node_count=64, method="gauss-legendre", target_tol=1e-13, max_nodes=512
)


@lru_cache(maxsize=32)
def _hermite_nodes(n: int):
    return np.polynomial.hermite.hermgauss(n)


@lru_cache(maxsize=32)
def _legendre_nodes(n: int):
    return np.polynomial.legendre.leggauss(n)


def _gh_tensor(kind: str, p: Orbital, q: Orbital, nodes: int) -> float:
    """Tensor-product Gauss-Hermite evaluation centered on the pair midpoint."""
    x, w = _hermite_nodes(nodes)
    cp, cq = p.center, q.center
    mid = 0.5 * (cp + cq)
    ux, uy, uz = np.meshgrid(x, x, x, indexing="ij")
    u2 = ux**2 + uy**2 + uz**2
    r = np.stack([ux + mid[0], uy + mid[1], uz + mid[2]], axis=-1)
    dp2 = np.sum((r - cp) ** 2, axis=-1)
    dq2 = np.sum((r - cq) ** 2, axis=-1)
    if kind == "overlap":
        g = np.ones_like(u2)
    elif kind == "kinetic":
        # phi_p * (-1/2) lap phi_q = (3/2 - |r-q|^2/2) phi_p phi_q
        g = 1.5 - 0.5 * dq2
    elif kind == "potential":
        g = potential(r, p.geometry)
    else:
        raise DomainError(f"unknown one-body kind {kind!r}")
    # integrand / GH weight = pi^{-3/2} g exp(-(dp2+dq2)/2 + u^2); the exponent
    # is assembled before exponentiating so far tails never hit 0 * inf
    log_factor = -0.5 * (dp2 + dq2) + u2
    weight = w[:, None, None] * w[None, :, None] * w[None, None, :]
    return float(np.sum(weight * g * np.exp(log_factor)) * math.pi**-1.5)


def quad_one_body(
    kind: str, p: Orbital, q: Orbital, spec: QuadratureSpec = DEFAULT_ONE_BODY_SPEC
) -> float:
    """Quadrature value of <p|op|q> for op in {1, -lap/2, V}, with node doubling."""
    if kind not in ONE_BODY_KINDS:
        raise DomainError(f"kind must be one of {ONE_BODY_KINDS}, got {kind!r}")
    nodes = spec.node_count
    previous = _gh_tensor(kind, p, q, nodes)
    while nodes * 2 <= spec.max_nodes:
        nodes *= 2
        current = _gh_tensor(kind, p, q, nodes)
        if abs(current - previous) <= spec.target_tol * max(1.0, abs(current)):
            return current
        previous = current
    raise NonConvergenceError(
        f"one-body quadrature for {kind} did not converge within {spec.max_nodes} nodes/axis"
    )


def _boys_reduction(r2: float, nodes: int) -> float:
    """integral_0^1 exp(-(r2/2) u^2) du by Gauss-Legendre on [0, 1]."""
    x, w = _legendre_nodes(nodes)
    u = 0.5 * (x + 1.0)
    return float(0.5 * np.sum(w * np.exp(-0.5 * r2 * u**2)))


def quad_coulomb(
    a: Orbital,
    b: Orbital,
    c: Orbital,
    d: Orbital,
    params: ModelParams,
    spec: QuadratureSpec = DEFAULT_COULOMB_SPEC,
) -> float:
    """Coulomb matrix element via the analytic 1D reduction plus 1D quadrature.

    Substituting 1/r12 = (2/sqrt(pi)) integral_0^infty exp(-r12^2 s^2) ds and
    integrating the Gaussians first leaves a single integral over u in [0, 1]
    of a Gaussian in u, evaluated here numerically instead of through erf.
    """
    p1 = 0.5 * (a.center + c.center)
    p2 = 0.5 * (b.center + d.center)
    dac2 = float(np.sum((a.center - c.center) ** 2))
    dbd2 = float(np.sum((b.center - d.center) ** 2))
    r2 = float(np.sum((p1 - p2) ** 2))
    prefactor = (
        params.x_c
        * math.sqrt(params.x_b)
        * math.sqrt(2.0 / math.pi)
        * math.exp(-0.25 * (dac2 + dbd2))
    )
    nodes = spec.node_count
    previous = _boys_reduction(r2, nodes)
    while nodes * 2 <= spec.max_nodes:
        nodes *= 2
        current = _boys_reduction(r2, nodes)
        if abs(current - previous) <= spec.target_tol * max(1.0, abs(current)):
            return prefactor * current
        previous = current
    raise NonConvergenceError(
        f"Coulomb quadrature did not converge within {spec.max_nodes} nodes"
    )


# --- literal permutation contractions ------------------------------------------

_KETS = {3: ("A", "B", "C"), 4: ("A", "B", "C", "D")}


def _element_terms(
    bra: Sequence[str], ket: Sequence[str], table: IntegralTable
) -> tuple[float, float]:
    """(overlap, <bra|H|ket>) for arbitrary product states, term by term."""
    n = len(ket)
    p = 1.0
    for i in range(n):
        p *= table.s(bra[i], ket[i])
    terms = []
    for i in range(n):
        term = table.h(bra[i], ket[i])
        for j in range(n):
            if j != i:
                term *= table.s(bra[j], ket[j])
        terms.append(term)
    for i in range(n):
        for j in range(i + 1, n):
            term = table.v(bra[i], bra[j], ket[i], ket[j])
            for k in range(n):
                if k != i and k != j:
                    term *= table.s(bra[k], ket[k])
            terms.append(term)
    return p, math.fsum(terms)


def brute_force_element(
    bra_perm: Sequence[str], table: IntegralTable, n: int | None = None
) -> tuple[float, float]:
    """(p, eps) for a bra permutation against the reference ket, no shortcuts."""
    if n is None:
        n = len(bra_perm)
    if n not in _KETS or len(bra_perm) != n:
        raise DomainError(f"supported electron counts are 3 and 4, got {n}")
    return _element_terms(tuple(bra_perm), _KETS[n], table)


def _parity(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# Explicit total-spin states: coefficients over spin strings s_A s_B s_C (s_D),
# attached to the antisymmetrized orbital products.
SPIN_STATES: dict[tuple[int, float], tuple[tuple[float, str], ...]] = {
    (3, 1.5): ((1.0, "uuu"),),
    (3, 0.5): ((1.0, "udu"), (-1.0, "duu")),
    (4, 0.0): ((1.0, "udud"), (-1.0, "uddu"), (-1.0, "duud"), (1.0, "dudu")),
    (4, 1.0): ((1.0, "udud"), (1.0, "uddu"), (-1.0, "duud"), (-1.0, "dudu")),
    (4, 2.0): ((1.0, "uuuu"),),
}


def rayleigh_quotient(
    n: int,
    components: Sequence[tuple[float, str]],
    params: ModelParams,
    table: IntegralTable | None = None,
) -> float:
    """<Psi|H|Psi>/<Psi|Psi> for a combination of antisymmetrized spin states.

    components lists (coefficient, spin string s_A s_B ...) pairs. Both the
    bra and ket permutation sums are expanded (n! x n! pairs, signed by
    permutation parity) with explicit per-electron spin overlap deltas; the
    electron in orbital X always carries the spin attached to X.
    """
    if n not in _KETS:
        raise DomainError(f"supported electron counts are 3 and 4, got {n}")
    if table is None:
        table = build_table(params)
    labels = _KETS[n]
    perms = list(itertools.permutations(range(n)))
    signs = [_parity(p) for p in perms]
    elements = {}
    for bp in perms:
        bra = tuple(labels[i] for i in bp)
        for kp in perms:
            ket = tuple(labels[i] for i in kp)
            elements[(bp, kp)] = _element_terms(bra, ket, table)
    num = 0.0
    den = 0.0
    for ca, sa in components:
        for cb, sb in components:
            weight_ab = ca * cb
            for ib, bp in enumerate(perms):
                for ik, kp in enumerate(perms):
                    matched = True
                    for i in range(n):
                        if sa[bp[i]] != sb[kp[i]]:
                            matched = False
                            break
                    if not matched:
                        continue
                    p, eps = elements[(bp, kp)]
                    factor = weight_ab * signs[ib] * signs[ik]
                    num += factor * eps
                    den += factor * p
    if abs(den) < NORM_THRESHOLD:
        raise DegenerateBasisError(f"state norm vanished ({den:.3e})")
    return num / den


def brute_force_energy(
    n: int,
    total_spin: float,
    params: ModelParams,
    table: IntegralTable | None = None,
) -> float:
    """Sector energy from the explicit total-spin state's Rayleigh quotient."""
    key = (n, float(total_spin))
    if key not in SPIN_STATES:
        raise DomainError(
            f"(n, total_spin) must be one of {sorted(SPIN_STATES)}, got {key}"
        )
    return rayleigh_quotient(n, SPIN_STATES[key], params, table)
