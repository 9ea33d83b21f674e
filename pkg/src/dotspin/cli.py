"""Command-line front end, a thin client of the service layer.

The CLI builds the service request models, obtains the service responses
(in-process by default, or over HTTP with --server), and only handles local
concerns: flag/config-file parsing and writing the returned CSV/grid texts
to disk. Exit status: 0 success, 1 usage error, 2 I/O error, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.error
import urllib.request
from pathlib import Path

from pydantic import ValidationError

from . import __version__
from .errors import DomainError
from .service import (
    AxisModel,
    CheckRequest,
    CheckResponse,
    SweepRequest,
    SweepResponse,
    compute_checks,
    compute_sweep,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VERIFICATION = 3

GRID_FILES = {3: {"J": "J_n3.dat", "deltaJ": "deltaJ_n3.dat"},
              4: {"J": "J_n4.dat", "Jprime": "Jprime_n4.dat"}}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the CLI contract wants 1.
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="dotspin",
        description=(
            "Sweep the dimensionless dot-array parameters (x_b, x_c) and write "
            "the derived spin-coupling constants to CSV, or run the closed-form "
            "vs. oracle verification suites."
        ),
    )
    parser.add_argument("--n", choices=("3", "4", "both"), default=None,
                        help="electron count to sweep (default: both)")
    parser.add_argument("--xb", metavar="MIN:MAX:STEPS", default=None,
                        help="x_b axis (default 0.5:3:50); MIN must be > 0")
    parser.add_argument("--xc", metavar="MIN:MAX:STEPS", default=None,
                        help="x_c axis (default 0:6:50)")
    parser.add_argument("--hbar-omega-mev", type=float, default=None,
                        help="append a parallel meV column block scaled by this quantum")
    parser.add_argument("--out", default=None,
                        help="CSV output path (default sweep.csv; with --n both a _n3/_n4 "
                             "suffix is inserted before the extension)")
    parser.add_argument("--grid-out", default=None,
                        help="directory for gnuplot matrix files (one per quantity)")
    parser.add_argument("--check", action="store_true", default=None,
                        help="run the verification suites instead of sweeping")
    parser.add_argument("--oracle-tol", type=float, default=None,
                        help="override every verification tolerance")
    parser.add_argument("--config", default=None, help="JSON config file; flags win")
    parser.add_argument("--server", default=None,
                        help="base URL of a running dotspin service; default is in-process")
    parser.add_argument("--version", action="version", version=f"dotspin {__version__}")
    return parser


def _parse_axis(text: str, name: str) -> AxisModel:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--{name} must look like MIN:MAX:STEPS, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from exc
    return AxisModel(min=lo, max=hi, steps=steps)


def _load_config_file(path: str) -> dict:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    known = {"n", "xb", "xc", "hbar_omega_mev", "out", "grid_out", "check", "oracle_tol"}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return data


def _resolve_settings(args) -> dict:
    settings = {
        "n": "both",
        "xb": "0.5:3:50",
        "xc": "0:6:50",
        "hbar_omega_mev": None,
        "out": "sweep.csv",
        "grid_out": None,
        "check": False,
        "oracle_tol": None,
    }
    if args.config:
        settings.update(_load_config_file(args.config))
    for key in settings:
        flag_value = getattr(args, key)
        if flag_value is not None:
            settings[key] = flag_value
    return settings


def _out_path(base: str, n: int, multiple: bool) -> Path:
    path = Path(base)
    if not multiple:
        return path
    suffix = path.suffix or ".csv"
    return path.with_name(f"{path.stem}_n{n}{suffix}")


class _RemoteClient:
    """Minimal JSON-over-HTTP client for a running service instance."""

    def __init__(self, base_url: str):
        self.base_url = base_url.rstrip("/")

    def _post(self, route: str, payload: dict) -> dict:
        request = urllib.request.Request(
            f"{self.base_url}{route}",
            data=json.dumps(payload).encode(),
            headers={"Content-Type": "application/json"},
        )
        with urllib.request.urlopen(request) as response:
            return json.loads(response.read().decode())

    def sweep(self, request: SweepRequest) -> SweepResponse:
        return SweepResponse.model_validate(self._post("/sweep", request.model_dump()))

    def check(self, request: CheckRequest) -> CheckResponse:
        return CheckResponse.model_validate(self._post("/check", request.model_dump()))


def _run_checks(settings, server: str | None) -> int:
    request = CheckRequest(oracle_tol=settings["oracle_tol"])
    if server:
        response = _RemoteClient(server).check(request)
    else:
        response = compute_checks(request)
    print(response.report)
    return EXIT_OK if response.passed else EXIT_VERIFICATION


def _run_sweep(settings, server: str | None) -> int:
    request = SweepRequest(
        n=str(settings["n"]),
        xb=_parse_axis(str(settings["xb"]), "xb"),
        xc=_parse_axis(str(settings["xc"]), "xc"),
        hbar_omega_mev=settings["hbar_omega_mev"],
        include_grids=settings["grid_out"] is not None,
    )
    if server:
        response = _RemoteClient(server).sweep(request)
    else:
        response = compute_sweep(request)

    multiple = len(response.tables) > 1
    try:
        for table in response.tables:
            path = _out_path(str(settings["out"]), table.n, multiple)
            path.write_text(table.csv)
            print(f"wrote {path}")
            print(table.summary)
            if settings["grid_out"] is not None:
                grid_dir = Path(settings["grid_out"])
                grid_dir.mkdir(parents=True, exist_ok=True)
                for quantity, text in table.grids.items():
                    grid_path = grid_dir / GRID_FILES[table.n][quantity]
                    grid_path.write_text(text)
                    print(f"wrote {grid_path}")
    except OSError as exc:
        print(f"dotspin: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        settings = _resolve_settings(args)
        if settings["check"]:
            return _run_checks(settings, args.server)
        return _run_sweep(settings, args.server)
    except UsageError as exc:
        print(f"dotspin: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, DomainError) as exc:
        print(f"dotspin: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except urllib.error.HTTPError as exc:
        print(f"dotspin: server rejected the request: {exc}", file=sys.stderr)
        return EXIT_USAGE if exc.code in (400, 422) else EXIT_IO
    except urllib.error.URLError as exc:
        print(f"dotspin: cannot reach server: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
