"""Closed-form one- and two-body Gaussian integrals over the dot orbitals.

Each dot X carries the s-type orbital

    phi_X(r) = pi^(-3/4) exp(-|r - X|^2 / 2),

the ground state of the local quadratic minimum in internal units. With
equal unit exponents the Gaussian product rule merges a bra/ket pair into a
single Gaussian exp(-|r - M|^2) at the midpoint M, times exp(-d^2/4) where
d is the center separation. Everything follows in closed form:

  * overlap   <p|q> = exp(-d^2/4)
  * kinetic   <p|-lap/2|q> = (3/4 - d^2/8) exp(-d^2/4)
  * potential <p|V|q>: the degree-8 polynomial prod_X |r - X|^2 is expanded
    into monomials in u = r - M and integrated term by term against
    exp(-|u|^2) using exact central moments (odd vanish; E[u^(2m)] =
    (2m-1)!!/2^m per axis)
  * Coulomb   two merged Gaussians against x_c*sqrt(x_b)/r12 reduce to the
    Boys function F0 evaluated at half the squared midpoint separation

On the regular tetrahedron every squared distance entering these formulas
is an integer multiple of x_b (d^2 = 4*x_b between distinct vertices; the
midpoint separations R^2 take values {0,1,2,3,4}*x_b). The implementation
keys each integral on that integer pattern, so symmetry-equivalent
integrals are equal floats by construction, and the geometric expansion for
the potential is performed once per pattern in the unit frame with the
scale entering as a polynomial in l.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import DomainError
from .model import LABELS, LABEL_INDEX, UNIT_VERTICES, DotGeometry, ModelParams, tetrahedron

# Series cutoff for F0; the erf form degenerates to 0/0 as t -> 0.
BOYS_SERIES_THRESHOLD = 1e-6


@dataclass(frozen=True)
class Orbital:
    """Localized ground-state orbital attached to one dot of a geometry."""

    label: str
    geometry: DotGeometry

    def __post_init__(self):
        if self.label not in LABEL_INDEX:
            raise DomainError(f"unknown orbital label {self.label!r}")

    @property
    def center(self) -> np.ndarray:
        return self.geometry.vertex(self.label)


def orbital(label: str, geom: DotGeometry) -> Orbital:
    return Orbital(label, geom)


def orbitals(geom: DotGeometry) -> dict[str, Orbital]:
    """All four localized orbitals of a geometry, keyed by label."""
    return {label: Orbital(label, geom) for label in LABELS}


def boys_f0(t: float) -> float:
    """Boys function F0(t) = integral_0^1 exp(-t u^2) du.

    Uses the 5-term Taylor series below BOYS_SERIES_THRESHOLD and the erf
    closed form (1/2) sqrt(pi/t) erf(sqrt(t)) above it.
    """
    if t < 0:
        raise DomainError(f"Boys argument must be nonnegative, got {t}")
    if t < BOYS_SERIES_THRESHOLD:
        return 1.0 - t / 3.0 + t * t / 10.0 - t**3 / 42.0 + t**4 / 216.0
    return 0.5 * math.sqrt(math.pi / t) * math.erf(math.sqrt(t))


def _shared_x_b(p: Orbital, q: Orbital, *more: Orbital) -> float:
    x_b = p.geometry.x_b
    for other in (q, *more):
        if other.geometry.x_b != x_b:
            raise DomainError("orbitals do not share a geometry")
    return x_b


def overlap(p: Orbital, q: Orbital) -> float:
    """<p|q> = exp(-d^2/4); equals exp(-x_b) for any distinct vertex pair."""
    x_b = _shared_x_b(p, q)
    if p.label == q.label:
        return 1.0
    return math.exp(-x_b)


def kinetic(p: Orbital, q: Orbital) -> float:
    """<p| -lap/2 |q> = (3/4 - d^2/8) exp(-d^2/4)."""
    x_b = _shared_x_b(p, q)
    if p.label == q.label:
        return 0.75
    return (0.75 - 0.5 * x_b) * math.exp(-x_b)


# --- potential matrix element -------------------------------------------------
#
# In the unit frame (l = 1) write c_X = M - X for the pair's midpoint M. Then
# prod_X |u + l*c_X|^2 is a polynomial whose monomial coefficients are
# themselves polynomials in l; contracting the spatial monomials with the
# central moments of exp(-|u|^2) leaves a single polynomial P(l) per
# distance pattern, computed once here with exact rational moments.

_GAUSS_MOMENT = {
    0: Fraction(1),
    2: Fraction(1, 2),
    4: Fraction(3, 4),
    6: Fraction(15, 8),
    8: Fraction(105, 16),
}


def _moment(n: int) -> Fraction | None:
    if n % 2 == 1:
        return None
    return _GAUSS_MOMENT[n]


def _pattern_poly(i: int, j: int) -> np.ndarray:
    """Coefficients over powers of l of the moment-contracted expansion for pair (i, j)."""
    mid = 0.5 * (UNIT_VERTICES[i] + UNIT_VERTICES[j])
    poly: dict[tuple[int, int, int, int], float] = {(0, 0, 0, 0): 1.0}
    for X in UNIT_VERTICES:
        c = mid - X
        factor = {
            (2, 0, 0, 0): 1.0,
            (0, 2, 0, 0): 1.0,
            (0, 0, 2, 0): 1.0,
            (1, 0, 0, 1): 2.0 * c[0],
            (0, 1, 0, 1): 2.0 * c[1],
            (0, 0, 1, 1): 2.0 * c[2],
            (0, 0, 0, 2): float(np.dot(c, c)),
        }
        product: dict[tuple[int, int, int, int], float] = {}
        for k1, v1 in poly.items():
            for k2, v2 in factor.items():
                key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3])
                product[key] = product.get(key, 0.0) + v1 * v2
        poly = product
    coeffs = np.zeros(9)
    for (a, b, c_, lp), v in poly.items():
        ma, mb, mc = _moment(a), _moment(b), _moment(c_)
        if ma is None or mb is None or mc is None:
            continue
        coeffs[lp] += v * float(ma * mb * mc)
    return coeffs


_POTENTIAL_POLY = {
    "diag": _pattern_poly(0, 0),
    "offdiag": _pattern_poly(0, 1),
}


def potential_element(p: Orbital, q: Orbital, geom: DotGeometry) -> float:
    """<p| V |q> for the quartic four-well confinement, exactly."""
    x_b = _shared_x_b(p, q)
    if geom.x_b != x_b:
        raise DomainError("geometry does not match the orbitals")
    pattern = "diag" if p.label == q.label else "offdiag"
    l = math.sqrt(x_b)
    series = float(np.polynomial.polynomial.polyval(l, _POTENTIAL_POLY[pattern]))
    prefactor = 1.0 if pattern == "diag" else math.exp(-x_b)
    # 2*(2l)^6 = 128 * x_b^3
    return prefactor * series / (128.0 * x_b**3)


# --- Coulomb matrix element ---------------------------------------------------
#
# For electron 1 in bra orbital a / ket orbital c and electron 2 in bra b /
# ket d, the merged Gaussians sit at P1 = (a+c)/2 and P2 = (b+d)/2 and
#
#   (ab|cd) = x_c*sqrt(x_b) * sqrt(2/pi) * exp(-(d_ac^2 + d_bd^2)/4) * F0(R^2/2),
#
# R = |P1 - P2|. On the tetrahedron R^2 is an integer in {0..4} times x_b;
# the integer is tabulated per ordered label quadruple at import time.


def _r2_class_table() -> dict[tuple[str, str, str, str], int]:
    table = {}
    for a, b, c, d in itertools.product(LABELS, repeat=4):
        p1 = 0.5 * (UNIT_VERTICES[LABEL_INDEX[a]] + UNIT_VERTICES[LABEL_INDEX[c]])
        p2 = 0.5 * (UNIT_VERTICES[LABEL_INDEX[b]] + UNIT_VERTICES[LABEL_INDEX[d]])
        r2 = float(np.sum((p1 - p2) ** 2))
        k = round(r2)
        if not 0 <= k <= 4 or abs(r2 - k) > 1e-9:
            raise AssertionError(f"unexpected midpoint distance class {r2} for {(a, b, c, d)}")
        table[(a, b, c, d)] = k
    return table


_R2_CLASS = _r2_class_table()


def coulomb(a: Orbital, b: Orbital, c: Orbital, d: Orbital, params: ModelParams) -> float:
    """<a(1) b(2)| x_c*sqrt(x_b)/r12 |c(1) d(2)> in closed form."""
    x_b = _shared_x_b(a, b, c, d)
    if params.x_b != x_b:
        raise DomainError("params do not match the orbitals' geometry")
    n_ac = 0 if a.label == c.label else 1
    n_bd = 0 if b.label == d.label else 1
    k = _R2_CLASS[(a.label, b.label, c.label, d.label)]
    return (
        params.coulomb_strength
        * math.sqrt(2.0 / math.pi)
        * math.exp(-x_b * (n_ac + n_bd))
        * boys_f0(0.5 * k * x_b)
    )


@dataclass(frozen=True, eq=False)
class IntegralTable:
    """All integrals needed downstream for one parameter point.

    overlap and one_body are 4x4 symmetric arrays indexed like LABELS;
    one_body is kinetic + potential. coulomb maps every ordered orbital
    quadruple (a, b; c, d) to its matrix element.
    """

    params: ModelParams
    geometry: DotGeometry
    overlap: np.ndarray
    one_body: np.ndarray
    coulomb: Mapping[tuple[str, str, str, str], float]

    def s(self, p: str, q: str) -> float:
        return float(self.overlap[LABEL_INDEX[p], LABEL_INDEX[q]])

    def h(self, p: str, q: str) -> float:
        return float(self.one_body[LABEL_INDEX[p], LABEL_INDEX[q]])

    def v(self, a: str, b: str, c: str, d: str) -> float:
        return self.coulomb[(a, b, c, d)]


def build_table(params: ModelParams) -> IntegralTable:
    """Evaluate and cache every overlap, one-body, and Coulomb integral."""
    geom = tetrahedron(params.x_b)
    orbs = orbitals(geom)
    n = len(LABELS)
    s_mat = np.empty((n, n))
    h_mat = np.empty((n, n))
    for i, p in enumerate(LABELS):
        for j, q in enumerate(LABELS):
            s_mat[i, j] = overlap(orbs[p], orbs[q])
            h_mat[i, j] = kinetic(orbs[p], orbs[q]) + potential_element(
                orbs[p], orbs[q], geom
            )
    v_map = {
        quad: coulomb(orbs[quad[0]], orbs[quad[1]], orbs[quad[2]], orbs[quad[3]], params)
        for quad in itertools.product(LABELS, repeat=4)
    }
    s_mat.setflags(write=False)
    h_mat.setflags(write=False)
    return IntegralTable(
        params=params, geometry=geom, overlap=s_mat, one_body=h_mat, coulomb=v_map
    )
