"""Deterministic (x_b, x_c) grid sweeps with CSV and gnuplot-matrix output.

Rows are ordered x_b-major then x_c, floats are rendered with 17 significant
digits, and degenerate-basis points are recorded as the literal token NaN,
so repeated runs of the same configuration are byte-identical. When an
hbar_omega scale (meV) is configured, a parallel block of *_meV columns is
appended; the dimensionless columns are unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .effective import (
    coefficients_four,
    coefficients_three,
    delta_j_three,
    energies_four,
    energies_three,
)
from .errors import DegenerateBasisError, DomainError
from .integrals import build_table
from .model import make_params
from .permelems import four_electron_elements, three_electron_elements

MISSING = "NaN"

HEADERS = {
    3: ("x_b", "x_c", "E_half", "E_threehalf", "L0", "L1", "K", "J", "deltaJ"),
    4: ("x_b", "x_c", "E0", "E1", "E2", "L0", "L1", "L2", "K", "J", "Jprime", "Jprime_over_J"),
}

# Columns carrying energies (scaled by hbar_omega in the meV block).
ENERGY_COLUMNS = {
    3: ("E_half", "E_threehalf", "L0", "L1", "K", "J", "deltaJ"),
    4: ("E0", "E1", "E2", "L0", "L1", "L2", "K", "J", "Jprime"),
}

GRID_QUANTITIES = {3: ("J", "deltaJ"), 4: ("J", "Jprime")}

RATIO_FLOOR = 1e-14


@dataclass(frozen=True)
class AxisRange:
    """Inclusive linear range; steps == 1 collapses to the lower endpoint."""

    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError("axis endpoints must be finite")
        if self.steps < 1:
            raise DomainError(f"steps must be >= 1, got {self.steps}")
        if self.hi < self.lo:
            raise DomainError(f"axis range is empty: [{self.lo}, {self.hi}]")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class SweepConfig:
    """Resolved sweep configuration (defaults cover the region of interest)."""

    n: str = "both"
    xb: AxisRange = field(default_factory=lambda: AxisRange(0.5, 3.0, 50))
    xc: AxisRange = field(default_factory=lambda: AxisRange(0.0, 6.0, 50))
    hbar_omega_mev: float | None = None
    out: str = "sweep.csv"
    grid_out: str | None = None
    check: bool = False
    oracle_tol: float | None = None

    def __post_init__(self):
        if self.n not in ("3", "4", "both"):
            raise DomainError(f"n must be '3', '4' or 'both', got {self.n!r}")
        if self.xb.lo <= 0:
            raise DomainError(f"x_b range must start above 0, got {self.xb.lo}")
        if self.xc.lo < 0:
            raise DomainError(f"x_c range must be nonnegative, got {self.xc.lo}")
        if self.hbar_omega_mev is not None and self.hbar_omega_mev <= 0:
            raise DomainError("hbar-omega scale must be positive")

    def electron_counts(self) -> tuple[int, ...]:
        if self.n == "both":
            return (3, 4)
        return (int(self.n),)


def format_value(value: float) -> str:
    """Fixed 17-significant-digit rendering; NaN becomes the missing token."""
    if math.isnan(value):
        return MISSING
    return format(value, ".17g")


def _point_row3(x_b: float, x_c: float) -> list[float]:
    nan = float("nan")
    params = make_params(x_b, x_c)
    table = build_table(params)
    elements = three_electron_elements(params, table)
    try:
        e_three_half, e_half = energies_three(elements)
        coeffs = coefficients_three(e_three_half, e_half)
    except DegenerateBasisError:
        return [x_b, x_c, nan, nan, nan, nan, nan, nan, nan]
    try:
        delta = delta_j_three(elements)
    except DegenerateBasisError:
        delta = nan
    return [x_b, x_c, e_half, e_three_half, coeffs.L0, coeffs.L1, coeffs.K, coeffs.J, delta]


def _point_row4(x_b: float, x_c: float) -> list[float]:
    nan = float("nan")
    params = make_params(x_b, x_c)
    table = build_table(params)
    elements = four_electron_elements(params, table)
    try:
        e0, e1, e2 = energies_four(elements)
    except DegenerateBasisError:
        return [x_b, x_c] + [nan] * 10
    coeffs = coefficients_four(e0, e1, e2)
    ratio = coeffs.Jprime / coeffs.J if abs(coeffs.J) > RATIO_FLOOR else nan
    return [
        x_b,
        x_c,
        e0,
        e1,
        e2,
        coeffs.L0,
        coeffs.L1,
        coeffs.L2,
        coeffs.K,
        coeffs.J,
        coeffs.Jprime,
        ratio,
    ]


@dataclass(frozen=True)
class SweepTable:
    """One electron count's sweep: header, raw rows, rendered artifacts."""

    n: int
    header: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    csv_text: str
    grids: dict[str, str]
    summary: str


def sweep_rows(n: int, xb_values, xc_values) -> list[list[float]]:
    """Grid rows in deterministic x_b-major order.

    Each point is an independent pure computation; results land in the
    preallocated order regardless of any future parallel execution.
    """
    point = {3: _point_row3, 4: _point_row4}[n]
    rows = []
    for x_b in xb_values:
        for x_c in xc_values:
            rows.append(point(float(x_b), float(x_c)))
    return rows


def render_csv(n: int, rows, hbar_omega_mev: float | None) -> str:
    header = list(HEADERS[n])
    scaled_idx: list[int] = []
    if hbar_omega_mev is not None:
        for name in ENERGY_COLUMNS[n]:
            scaled_idx.append(HEADERS[n].index(name))
            header.append(f"{name}_meV")
    lines = [",".join(header)]
    for row in rows:
        cells = [format_value(v) for v in row]
        for idx in scaled_idx:
            cells.append(format_value(row[idx] * hbar_omega_mev))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_grid(quantity: str, n: int, xb_values, xc_values, rows) -> str:
    """Gnuplot nonuniform-matrix text: first row x_c axis, first column x_b."""
    col = HEADERS[n].index(quantity)
    n_xc = len(xc_values)
    lines = [
        " ".join([str(n_xc)] + [format_value(float(v)) for v in xc_values])
    ]
    for i, x_b in enumerate(xb_values):
        chunk = rows[i * n_xc : (i + 1) * n_xc]
        lines.append(
            " ".join([format_value(float(x_b))] + [format_value(r[col]) for r in chunk])
        )
    return "\n".join(lines) + "\n"


def _summary(n: int, rows) -> str:
    j_col = HEADERS[n].index("J")
    j_values = [r[j_col] for r in rows if not math.isnan(r[j_col])]
    degenerate = len(rows) - len(j_values)
    if j_values:
        j_min, j_max = min(j_values), max(j_values)
        span = f"J in [{j_min:.6g}, {j_max:.6g}]"
    else:
        span = "no valid points"
    return f"n={n}: {len(rows)} points, {span}, degenerate points: {degenerate}"


def run_sweep(config: SweepConfig) -> list[SweepTable]:
    """Evaluate the configured grid for each requested electron count."""
    xb_values = config.xb.values()
    xc_values = config.xc.values()
    tables = []
    for n in config.electron_counts():
        rows = sweep_rows(n, xb_values, xc_values)
        grids = {
            quantity: render_grid(quantity, n, xb_values, xc_values, rows)
            for quantity in GRID_QUANTITIES[n]
        }
        tables.append(
            SweepTable(
                n=n,
                header=HEADERS[n],
                rows=tuple(tuple(r) for r in rows),
                csv_text=render_csv(n, rows, config.hbar_omega_mev),
                grids=grids,
                summary=_summary(n, rows),
            )
        )
    return tables
