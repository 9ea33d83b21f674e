"""HTTP facade: point couplings, grid sweeps, and verification as a service.

All computation lives in the core modules; this layer only validates
requests, invokes the pure pipeline, and serializes results. The handler
functions are plain callables over the pydantic models, so the bundled CLI
can drive them in-process while remote clients use the same wire schema
over HTTP (run with: uvicorn dotspin.service:app).
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, model_validator

from . import __version__
from .checks import run_checks
from .effective import (
    coefficients_three,
    couplings_four,
    delta_j_three,
    energies_three,
)
from .errors import DegenerateBasisError, DomainError
from .integrals import build_table
from .model import make_params
from .permelems import three_electron_elements
from .sweep import AxisRange, SweepConfig, run_sweep


class AxisModel(BaseModel):
    min: float
    max: float
    steps: int = Field(ge=1)

    def to_range(self) -> AxisRange:
        return AxisRange(self.min, self.max, self.steps)


class CouplingsRequest(BaseModel):
    n: Literal[3, 4]
    x_b: float = Field(gt=0, description="tunneling-barrier ratio m*omega_o*l^2/hbar")
    x_c: float = Field(ge=0, description="Coulomb ratio e^2/(kappa*l*hbar*omega_o)")
    hbar_omega_mev: float | None = Field(default=None, gt=0)


class CouplingsResponse(BaseModel):
    n: int
    x_b: float
    x_c: float
    energies: dict[str, float]
    L0: float
    L1: float
    L2: float | None = None
    K: float
    J: float
    Jprime: float | None = None
    Jprime_over_J: float | None = None
    deltaJ: float | None = None
    energy_unit: str = "hbar*omega_o"
    mev: dict[str, float] | None = None


class SweepRequest(BaseModel):
    n: Literal["3", "4", "both"] = "both"
    xb: AxisModel = AxisModel(min=0.5, max=3.0, steps=50)
    xc: AxisModel = AxisModel(min=0.0, max=6.0, steps=50)
    hbar_omega_mev: float | None = Field(default=None, gt=0)
    include_grids: bool = False

    @model_validator(mode="after")
    def _domain(self):
        if self.xb.min <= 0:
            raise ValueError("x_b min must be > 0")
        if self.xc.min < 0:
            raise ValueError("x_c min must be >= 0")
        for axis in (self.xb, self.xc):
            if axis.max < axis.min:
                raise ValueError("axis max must be >= min")
        return self


class SweepTableModel(BaseModel):
    n: int
    header: list[str]
    csv: str
    grids: dict[str, str] = {}
    summary: str


class SweepResponse(BaseModel):
    tables: list[SweepTableModel]


class CheckRequest(BaseModel):
    oracle_tol: float | None = Field(default=None, gt=0)
    points: list[tuple[float, float]] | None = None


class CheckFailureModel(BaseModel):
    name: str
    computed: float
    reference: float
    error: float
    tol: float


class CheckResponse(BaseModel):
    passed: bool
    checks_run: int
    report: str
    failures: list[CheckFailureModel]


class HealthResponse(BaseModel):
    status: str
    version: str


def compute_couplings(request: CouplingsRequest) -> CouplingsResponse:
    params = make_params(request.x_b, request.x_c)
    table = build_table(params)
    try:
        if request.n == 3:
            elements = three_electron_elements(params, table)
            coeffs = coefficients_three(*energies_three(elements))
            energies = {
                "E_half": coeffs.energies[0][1],
                "E_threehalf": coeffs.energies[1][1],
            }
            ratio = None
        else:
            coeffs = couplings_four(params, table)
            energies = {f"E{int(s)}": e for s, e in coeffs.energies}
            ratio = coeffs.Jprime / coeffs.J if abs(coeffs.J) > 1e-14 else None
    except DegenerateBasisError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    scalars = {"L0": coeffs.L0, "L1": coeffs.L1, "K": coeffs.K, "J": coeffs.J}
    if coeffs.L2 is not None:
        scalars["L2"] = coeffs.L2
    if coeffs.Jprime is not None:
        scalars["Jprime"] = coeffs.Jprime
    if request.n == 3:
        # A pole in the zeroed comparison system only blanks deltaJ.
        try:
            scalars["deltaJ"] = delta_j_three(elements)
        except DegenerateBasisError:
            pass
    mev = None
    if request.hbar_omega_mev is not None:
        mev = {
            key: value * request.hbar_omega_mev
            for key, value in {**energies, **scalars}.items()
        }
    return CouplingsResponse(
        n=request.n,
        x_b=request.x_b,
        x_c=request.x_c,
        energies=energies,
        Jprime_over_J=ratio,
        mev=mev,
        **scalars,
    )


def compute_sweep(request: SweepRequest) -> SweepResponse:
    config = SweepConfig(
        n=request.n,
        xb=request.xb.to_range(),
        xc=request.xc.to_range(),
        hbar_omega_mev=request.hbar_omega_mev,
    )
    tables = run_sweep(config)
    return SweepResponse(
        tables=[
            SweepTableModel(
                n=t.n,
                header=list(t.header),
                csv=t.csv_text,
                grids=t.grids if request.include_grids else {},
                summary=t.summary,
            )
            for t in tables
        ]
    )


def compute_checks(request: CheckRequest) -> CheckResponse:
    report = run_checks(points=request.points, oracle_tol=request.oracle_tol)
    return CheckResponse(
        passed=report.passed,
        checks_run=report.checks_run,
        report=report.as_text(),
        failures=[
            CheckFailureModel(
                name=f.name,
                computed=f.computed,
                reference=f.reference,
                error=f.error,
                tol=f.tol,
            )
            for f in report.failures
        ],
    )


app = FastAPI(
    title="dotspin",
    description="Effective spin couplings for electrons in a symmetric quantum-dot array",
    version=__version__,
)


@app.exception_handler(DomainError)
async def _domain_error(request, exc):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/couplings", response_model=CouplingsResponse)
def couplings_endpoint(request: CouplingsRequest) -> CouplingsResponse:
    return compute_couplings(request)


@app.post("/sweep", response_model=SweepResponse)
def sweep_endpoint(request: SweepRequest) -> SweepResponse:
    return compute_sweep(request)


@app.post("/check", response_model=CheckResponse)
def check_endpoint(request: CheckRequest) -> CheckResponse:
    return compute_checks(request)
