"""Aggregated closed-form-vs-oracle verification suites.

Backs the CLI/service --check mode: every analytic route is compared with
its independent numerical oracle on a fixed parameter grid, and the spin
matrices are verified spectrally. Default tolerances are the ones the
equivalence suites are designed to meet; a caller-supplied oracle_tol
replaces all of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .effective import couplings_four, couplings_three
from .errors import DegenerateBasisError
from .integrals import build_table, coulomb, kinetic, orbitals, overlap, potential_element
from .model import make_params
from .oracle import brute_force_element, brute_force_energy, quad_coulomb, quad_one_body
from .permelems import KET3, KET4, hamiltonian_element, product_overlap
from .spinverify import verify_spectrum

DEFAULT_GRID = tuple(
    (x_b, x_c) for x_b in (0.5, 1.0, 2.0) for x_c in (0.0, 1.5, 4.0)
)

DEFAULT_TOLERANCES = {
    "one_body": 1e-10,
    "coulomb": 1e-6,
    "element": 1e-12,
    "energy": 1e-10,
    "spectrum": 1e-10,
}

# Orbital pairs covering both one-body distance patterns from several label
# combinations, and Coulomb quadruples covering every midpoint-distance class.
ONE_BODY_PAIRS = (("A", "A"), ("A", "B"), ("C", "D"), ("B", "C"))
COULOMB_QUADS = (
    ("A", "B", "A", "B"),
    ("B", "A", "A", "B"),
    ("A", "B", "A", "C"),
    ("A", "B", "C", "B"),
    ("A", "B", "C", "A"),
    ("A", "B", "C", "D"),
)


@dataclass(frozen=True)
class CheckFailure:
    name: str
    computed: float
    reference: float
    error: float
    tol: float


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    checks_run: int
    lines: tuple[str, ...]
    failures: tuple[CheckFailure, ...]

    def as_text(self) -> str:
        body = "\n".join(self.lines)
        verdict = "ALL CHECKS PASSED" if self.passed else (
            f"{len(self.failures)} CHECK(S) FAILED"
        )
        return f"{body}\n{verdict} ({self.checks_run} comparisons)"


def _relative_error(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        return 0.0
    return abs(a - b) / scale


def run_checks(
    points=None,
    oracle_tol: float | None = None,
    perturb: float = 0.0,
) -> CheckReport:
    """Run every equivalence suite over a parameter grid.

    points: iterable of (x_b, x_c); defaults to the fixed 3x3 grid.
    oracle_tol: when given, replaces every per-suite tolerance.
    perturb: test hook; added to each closed-form integral before comparison
    so the failure path stays exercised.
    """
    grid = DEFAULT_GRID if points is None else tuple(points)
    tol = {
        key: (oracle_tol if oracle_tol is not None else value)
        for key, value in DEFAULT_TOLERANCES.items()
    }
    lines: list[str] = []
    failures: list[CheckFailure] = []
    total = 0

    def record(name: str, computed: float, reference: float, bound: float, relative=True):
        nonlocal total
        total += 1
        err = _relative_error(computed, reference) if relative else abs(computed - reference)
        ok = err <= bound
        if not ok:
            failures.append(CheckFailure(name, computed, reference, err, bound))
        lines.append(
            f"{'PASS' if ok else 'FAIL'} {name}: value={computed:.12g} "
            f"oracle={reference:.12g} err={err:.3e} tol={bound:g}"
        )

    for x_b, x_c in grid:
        params = make_params(x_b, x_c)
        table = build_table(params)
        orbs = orbitals(table.geometry)
        tag = f"(x_b={x_b:g}, x_c={x_c:g})"

        for p, q in ONE_BODY_PAIRS:
            record(
                f"overlap[{p}{q}] {tag}",
                overlap(orbs[p], orbs[q]) + perturb,
                quad_one_body("overlap", orbs[p], orbs[q]),
                tol["one_body"],
            )
            record(
                f"kinetic[{p}{q}] {tag}",
                kinetic(orbs[p], orbs[q]) + perturb,
                quad_one_body("kinetic", orbs[p], orbs[q]),
                tol["one_body"],
            )
            record(
                f"potential[{p}{q}] {tag}",
                potential_element(orbs[p], orbs[q], table.geometry) + perturb,
                quad_one_body("potential", orbs[p], orbs[q]),
                tol["one_body"],
            )
        for a, b, c, d in COULOMB_QUADS:
            record(
                f"coulomb[{a}{b}|{c}{d}] {tag}",
                coulomb(orbs[a], orbs[b], orbs[c], orbs[d], params) + perturb,
                quad_coulomb(orbs[a], orbs[b], orbs[c], orbs[d], params),
                tol["coulomb"],
            )

        for ket in (KET3, KET4):
            for perm in itertools.permutations(ket):
                p_ref, eps_ref = brute_force_element(perm, table)
                record(
                    f"p[{''.join(perm)}] {tag}",
                    product_overlap(perm, table),
                    p_ref,
                    tol["element"],
                )
                record(
                    f"eps[{''.join(perm)}] {tag}",
                    hamiltonian_element(perm, table),
                    eps_ref,
                    tol["element"],
                )

        try:
            three = couplings_three(params, table)
            four = couplings_four(params, table)
        except DegenerateBasisError as exc:
            total += 1
            failures.append(CheckFailure(f"couplings {tag}", float("nan"), float("nan"), float("inf"), 0.0))
            lines.append(f"FAIL couplings {tag}: {exc}")
            continue

        for spin, energy in three.energies:
            record(
                f"E[n=3,S={spin:g}] {tag}",
                energy,
                brute_force_energy(3, spin, params, table),
                tol["energy"],
            )
        for spin, energy in four.energies:
            record(
                f"E[n=4,S={spin:g}] {tag}",
                energy,
                brute_force_energy(4, spin, params, table),
                tol["energy"],
            )

        for coeffs in (three, four):
            total += 1
            report = verify_spectrum(coeffs, tol["spectrum"])
            if not report.passed:
                failures.append(
                    CheckFailure(
                        f"spectrum[n={coeffs.n}] {tag}",
                        report.identity_deviation,
                        0.0,
                        report.identity_deviation,
                        tol["spectrum"],
                    )
                )
            lines.append(
                f"{'PASS' if report.passed else 'FAIL'} spectrum[n={coeffs.n}] {tag}: "
                f"identity deviation {report.identity_deviation:.3e} tol={tol['spectrum']:g}"
            )

    return CheckReport(
        passed=not failures,
        checks_run=total,
        lines=tuple(lines),
        failures=tuple(failures),
    )
