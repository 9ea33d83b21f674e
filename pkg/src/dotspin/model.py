"""Units, model parameters, and the four-well dot geometry.

Internal units set hbar = m = omega_o = 1, so energies are in units of
hbar*omega_o and lengths in oscillator lengths a = sqrt(hbar/(m*omega_o)).
Two dimensionless numbers fix everything:

    x_b = m*omega_o*l^2/hbar      (tunneling-barrier ratio; l = sqrt(x_b))
    x_c = e^2/(kappa*l*hbar*omega_o)   (Coulomb ratio)

where 2l is the distance between dot centers. The Coulomb prefactor
e^2/kappa therefore equals x_c*sqrt(x_b) in internal units. An optional
hbar_omega (in meV) only rescales reported energies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

LABELS = ("A", "B", "C", "D")

# Vertices of the regular tetrahedron with edge 2 at l = 1; row order A, B, C, D.
UNIT_VERTICES = np.array(
    [
        [0.0, 0.0, 0.0],
        [2.0 * math.sqrt(1.0 / 3.0), 0.0, -2.0 * math.sqrt(2.0 / 3.0)],
        [-math.sqrt(1.0 / 3.0), 1.0, -2.0 * math.sqrt(2.0 / 3.0)],
        [-math.sqrt(1.0 / 3.0), -1.0, -2.0 * math.sqrt(2.0 / 3.0)],
    ]
)
UNIT_VERTICES.setflags(write=False)

LABEL_INDEX = {label: i for i, label in enumerate(LABELS)}


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """Validated dimensionless parameters (plus optional meV energy scale)."""

    x_b: float
    x_c: float
    hbar_omega: float | None = None

    def __post_init__(self):
        _require_finite("x_b", self.x_b)
        _require_finite("x_c", self.x_c)
        if self.x_b <= 0:
            raise DomainError(f"x_b must be positive, got {self.x_b}")
        if self.x_c < 0:
            raise DomainError(f"x_c must be nonnegative, got {self.x_c}")
        if self.hbar_omega is not None:
            _require_finite("hbar_omega", self.hbar_omega)
            if self.hbar_omega <= 0:
                raise DomainError(f"hbar_omega must be positive, got {self.hbar_omega}")

    @property
    def l(self) -> float:
        """Half the inter-dot distance, in oscillator lengths."""
        return math.sqrt(self.x_b)

    @property
    def coulomb_strength(self) -> float:
        """e^2/kappa in internal units: x_c * sqrt(x_b)."""
        return self.x_c * math.sqrt(self.x_b)


def make_params(x_b: float, x_c: float, hbar_omega: float | None = None) -> ModelParams:
    """Validate and build a ModelParams record."""
    return ModelParams(
        float(x_b), float(x_c), None if hbar_omega is None else float(hbar_omega)
    )


@dataclass(frozen=True, eq=False)
class DotGeometry:
    """The four dot centers: a regular tetrahedron with edge 2l.

    Vertex A sits at the origin; B, C, D follow the fixed unit-frame
    coordinates scaled by l = sqrt(x_b).
    """

    x_b: float
    vertices: np.ndarray  # shape (4, 3), rows ordered A, B, C, D

    @property
    def l(self) -> float:
        return math.sqrt(self.x_b)

    def vertex(self, label: str) -> np.ndarray:
        if label not in LABEL_INDEX:
            raise DomainError(f"unknown dot label {label!r}")
        return self.vertices[LABEL_INDEX[label]]


def tetrahedron(x_b: float) -> DotGeometry:
    """Dot geometry for barrier parameter x_b (all pairwise distances 2*sqrt(x_b))."""
    _require_finite("x_b", x_b)
    if x_b <= 0:
        raise DomainError(f"x_b must be positive, got {x_b}")
    verts = math.sqrt(x_b) * UNIT_VERTICES
    verts.setflags(write=False)
    return DotGeometry(x_b=float(x_b), vertices=verts)


def potential(r, geom: DotGeometry):
    """Quartic four-well confinement V(r) = prod_X |r - X|^2 / (2*(2l)^6).

    Vanishes quadratically at each vertex with unit (= m*omega_o^2) curvature.
    Accepts a single 3-vector or an array of shape (..., 3).
    """
    r = np.asarray(r, dtype=float)
    prod = np.ones(r.shape[:-1])
    for i in range(4):
        prod = prod * np.sum((r - geom.vertices[i]) ** 2, axis=-1)
    value = prod / (2.0 * (2.0 * geom.l) ** 6)
    if value.ndim == 0:
        return float(value)
    return value
