"""dotspin: effective spin Hamiltonians for Coulomb-coupled electrons on a dot array.

Closed-form Gaussian integrals over localized dot orbitals feed permutation
overlaps and Hamiltonian matrix elements, which eigenvalue matching turns
into the pairwise exchange constant J, the three-electron correction
deltaJ, and the four-body coupling Jprime. Independent quadrature and
brute-force permutation oracles verify every analytic step, and a sweep
engine (exposed through a FastAPI service and a thin CLI) maps the
couplings over the (x_b, x_c) parameter plane.
"""

__version__ = "0.1.0"

from .checks import CheckFailure, CheckReport, run_checks
from .effective import (
    SpinCoefficients,
    coefficients_four,
    coefficients_three,
    couplings_four,
    couplings_three,
    delta_j_three,
    energies_four,
    energies_three,
)
from .errors import (
    DegenerateBasisError,
    DomainError,
    NonConvergenceError,
    SizeError,
)
from .integrals import (
    IntegralTable,
    Orbital,
    boys_f0,
    build_table,
    coulomb,
    kinetic,
    orbital,
    orbitals,
    overlap,
    potential_element,
)
from .model import (
    LABELS,
    DotGeometry,
    ModelParams,
    make_params,
    potential,
    tetrahedron,
)
from .oracle import (
    QuadratureSpec,
    brute_force_element,
    brute_force_energy,
    quad_coulomb,
    quad_one_body,
)
from .permelems import (
    PermElements3,
    PermElements4,
    four_electron_elements,
    hamiltonian_element,
    product_overlap,
    three_electron_elements,
)
from .spinverify import (
    SpectrumReport,
    build_hspin,
    pauli_tensor,
    total_spin_squared,
    verify_spectrum,
)
from .sweep import AxisRange, SweepConfig, SweepTable, run_sweep

__all__ = [
    "__version__",
    "AxisRange",
    "CheckFailure",
    "CheckReport",
    "DegenerateBasisError",
    "DomainError",
    "DotGeometry",
    "IntegralTable",
    "LABELS",
    "ModelParams",
    "NonConvergenceError",
    "Orbital",
    "PermElements3",
    "PermElements4",
    "QuadratureSpec",
    "SizeError",
    "SpectrumReport",
    "SpinCoefficients",
    "SweepConfig",
    "SweepTable",
    "boys_f0",
    "build_hspin",
    "build_table",
    "brute_force_element",
    "brute_force_energy",
    "coefficients_four",
    "coefficients_three",
    "coulomb",
    "couplings_four",
    "couplings_three",
    "delta_j_three",
    "energies_four",
    "energies_three",
    "four_electron_elements",
    "hamiltonian_element",
    "kinetic",
    "make_params",
    "orbital",
    "orbitals",
    "overlap",
    "pauli_tensor",
    "potential",
    "potential_element",
    "product_overlap",
    "quad_coulomb",
    "quad_one_body",
    "run_checks",
    "run_sweep",
    "tetrahedron",
    "three_electron_elements",
    "total_spin_squared",
    "verify_spectrum",
]
