"""Command-line interface.

One executable with subcommands (eval, diameter, bounds, density, explore,
verify-all) sharing the function-spec input format and tolerance plumbing.
Exit status: 0 all requested checks pass, 1 usage or input error, 2 at least
one check failed.  JSON output is deterministic for a fixed seed once the
timestamp is suppressed with --no-timestamp.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .bounds import (
    equality_classifier,
    fixed_point_lemma_check,
    growth_bound,
    growth_bound_symmetric,
    landau_toeplitz,
    poukka,
    schur_decompose,
    schwarz_growth,
)
from .diameter import image_circle_diameter, ratio_curve
from .errors import DiskdiamError, SpecFormatError
from .explore import FamilySpec, phi_profile, problem2_sweep, problem3_sweep
from .hyperbolic import DomainMap, min_density
from .report import BoundReport
from .specio import load_function_spec
from .verify import run_verification_suite

_TOL_NAMES = {
    "diam_tol": float,
    "equality_tol": float,
    "numeric_tol": float,
    "rigidity_tol": float,
    "quad_tol": float,
    "sup_tol": float,
    "quadrature_n": int,
    "scan_n": int,
    "density_grid": int,
    "max_samples": int,
}
_POW2_NAMES = {"quadrature_n"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we want 1
        raise UsageError(message)


@dataclass
class RunConfig:
    subcommand: str
    input_source: str | None = None
    tolerances: dict = field(default_factory=dict)
    seed: int = 0
    output_format: str = "json"
    output_path: str | None = None
    timestamp: bool = True
    options: dict = field(default_factory=dict)


def _parse_cli_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"cannot parse complex value {text!r}; use RE or RE,IM")


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        start, stop, count = text.split(":")
        start, stop, count = float(start), float(stop), int(count)
        if count < 1:
            raise ValueError
    except ValueError:
        raise UsageError(f"cannot parse grid {text!r}; use START:STOP:COUNT") from None
    if count == 1:
        return (start,)
    return tuple(np.linspace(start, stop, count))


def _parse_tolerances(pairs) -> dict:
    tols = {}
    for item in pairs or ():
        if "=" not in item:
            raise UsageError(f"--tol expects name=value, got {item!r}")
        name, _, value = item.partition("=")
        if name not in _TOL_NAMES:
            raise UsageError(f"unknown tolerance {name!r}; known: {sorted(_TOL_NAMES)}")
        try:
            parsed = _TOL_NAMES[name](value)
        except ValueError:
            raise UsageError(f"cannot parse value for {name!r}: {value!r}") from None
        if parsed <= 0:
            raise UsageError(f"tolerance {name} must be strictly positive")
        if name in _POW2_NAMES and parsed & (parsed - 1):
            raise UsageError(f"{name} must be a power of two, got {parsed}")
        tols[name] = parsed
    return tols


def build_parser() -> _Parser:
    parser = _Parser(prog="diskdiam", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--input", default=None, help="function-spec path, or - for stdin")
        p.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a tolerance")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--no-timestamp", action="store_true")

    p = sub.add_parser("eval", help="evaluate f and f' at points")
    common(p)
    p.add_argument("--z", action="append", metavar="RE[,IM]", help="evaluation point (repeatable)")

    p = sub.add_parser("diameter", help="certified circle diameters / ratio curve")
    common(p)
    p.add_argument("--r", default=None, help="single radius (emits one enclosure)")
    p.add_argument("--r-grid", default=None, metavar="A:B:N", help="ratio-curve grid")

    p = sub.add_parser("bounds", help="run bound verifiers")
    common(p)
    p.add_argument(
        "--check",
        default="all",
        choices=(
            "all",
            "schwarz",
            "landau-toeplitz",
            "growth",
            "growth-symmetric",
            "poukka",
            "schur",
            "lemma",
            "classify",
        ),
    )
    p.add_argument("--z", default="0.5", help="point for growth/schwarz checks")
    p.add_argument("--w", default="0", help="second point / lemma fixed point")
    p.add_argument("--n", type=int, default=1, help="coefficient index for poukka")
    p.add_argument("--r", default="0.9", help="radius for poukka/schur")

    p = sub.add_parser("density", help="hyperbolic density profile")
    common(p)
    p.add_argument("--grid-resolution", type=int, default=24)

    p = sub.add_parser("explore", help="numerical sweeps for the open problems")
    common(p)
    p.add_argument("--problem", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--family", default="lft-extremal",
                   choices=("lft-extremal", "schur-extremal", "random-polynomial",
                            "univalent-quadratic"))
    p.add_argument("--grid", default="0.1:0.9:5", metavar="A:B:N", help="family parameter grid")
    p.add_argument("--count", type=int, default=10, help="random-polynomial family size")
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--r-grid", default="0:0.9:10", metavar="A:B:N", help="problem-1 radius grid")
    p.add_argument("--grid-resolution", type=int, default=16, help="problem-2 density grid")
    p.add_argument("--w-resolution", type=int, default=10, help="problem-3 center grid")

    p = sub.add_parser("verify-all", help="run the full invariant suite")
    common(p)
    return parser


def _config_from_args(args) -> RunConfig:
    options = {
        k: v
        for k, v in vars(args).items()
        if k not in {"subcommand", "input", "tol", "seed", "format", "out", "no_timestamp"}
    }
    return RunConfig(
        subcommand=args.subcommand,
        input_source=args.input,
        tolerances=_parse_tolerances(args.tol),
        seed=args.seed,
        output_format=args.format,
        output_path=args.out,
        timestamp=not args.no_timestamp,
        options=options,
    )


def _load_input(config: RunConfig):
    if config.input_source is None:
        raise UsageError("this subcommand requires --input (path or -)")
    if config.input_source == "-":
        return load_function_spec(sys.stdin.read())
    path = Path(config.input_source)
    if not path.exists():
        raise UsageError(f"input file not found: {path}")
    return load_function_spec(path.read_text())


def _emit(config: RunConfig, payload: dict | None, csv_rows=None, csv_header=None) -> None:
    if config.output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if csv_header:
            writer.writerow(csv_header)
        for row in csv_rows or ():
            writer.writerow(row)
        text = buf.getvalue()
    else:
        doc = dict(payload or {})
        if config.timestamp:
            doc["timestamp"] = datetime.now(timezone.utc).isoformat()
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if config.output_path:
        Path(config.output_path).write_text(text)
    else:
        sys.stdout.write(text)


def _reports_payload(reports: list[BoundReport]) -> list[dict]:
    return [r.to_dict() for r in reports]


def _cplx(z: complex) -> list[float]:
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def _run_eval(config: RunConfig) -> int:
    f = _load_input(config)
    points = [_parse_cli_complex(t) for t in (config.options.get("z") or ["0.5"])]
    rows = []
    for z in points:
        rows.append({"z": _cplx(z), "f": _cplx(f.evaluate(z)), "df": _cplx(f.derivative_at(z))})
    _emit(
        config,
        {"command": "eval", "rows": rows},
        csv_rows=[
            (r["z"][0], r["z"][1], r["f"][0], r["f"][1], r["df"][0], r["df"][1]) for r in rows
        ],
        csv_header=("z_re", "z_im", "f_re", "f_im", "df_re", "df_im"),
    )
    return 0


def _run_diameter(config: RunConfig) -> int:
    f = _load_input(config)
    tol = config.tolerances.get("diam_tol", 1e-6)
    if config.options.get("r"):
        r = float(config.options["r"])
        est = image_circle_diameter(f, r, tol)
        payload = {
            "command": "diameter",
            "r": est.r,
            "lower": est.lower,
            "upper": est.upper,
            "witness": [_cplx(est.witness_pair[0]), _cplx(est.witness_pair[1])],
            "samples_used": est.samples_used,
        }
        _emit(
            config,
            payload,
            csv_rows=[(est.r, est.lower, est.upper)],
            csv_header=("r", "lower", "upper"),
        )
        return 0
    grid = _parse_grid(config.options["r_grid"]) if config.options.get("r_grid") else None
    curve = ratio_curve(f, grid, tol)
    payload = {
        "command": "diameter",
        "grid": list(curve.grid),
        "ratio_lower": list(curve.ratio_lower),
        "ratio_upper": list(curve.ratio_upper),
        "violations": list(curve.violations),
    }
    rows = list(zip(curve.grid, curve.ratio_lower, curve.ratio_upper))
    _emit(config, payload, csv_rows=rows, csv_header=("r", "ratio_lower", "ratio_upper"))
    return 0


def _run_bounds(config: RunConfig) -> int:
    f = _load_input(config)
    tols = config.tolerances
    check = config.options.get("check", "all")
    z = _parse_cli_complex(config.options.get("z", "0.5"))
    w = _parse_cli_complex(config.options.get("w", "0"))
    n = int(config.options.get("n", 1))
    r = float(config.options.get("r", 0.9))
    kw = {}
    if "equality_tol" in tols:
        kw["equality_tol"] = tols["equality_tol"]
    if "numeric_tol" in tols:
        kw["numeric_tol"] = tols["numeric_tol"]

    extra = {}
    if check == "all":
        suite = run_verification_suite(f, seed=config.seed, tolerances=tols)
        reports = suite["reports"]
        extra["diagnostics"] = suite["diagnostics"]
    elif check == "schwarz":
        reports = [schwarz_growth(f, z, **kw)]
    elif check == "landau-toeplitz":
        reports = [landau_toeplitz(f, tols.get("diam_tol", 1e-6), **kw)]
    elif check == "growth":
        reports = [growth_bound(f, z, diam_tol=tols.get("diam_tol", 1e-6), **kw)]
    elif check == "growth-symmetric":
        reports = [growth_bound_symmetric(f, z, w, diam_tol=tols.get("diam_tol", 1e-6), **kw)]
    elif check == "poukka":
        reports = [
            poukka(
                f,
                n,
                r,
                quadrature_n=tols.get("quadrature_n", 1 << 12),
                diam_tol=tols.get("diam_tol", 1e-6),
                **kw,
            ).bound
        ]
    elif check == "schur":
        reports = list(schur_decompose(f, (r,), **kw).residual_curve)
    elif check == "lemma":
        reports = [fixed_point_lemma_check(f, w if w != 0 else 0.5)]
    else:  # classify
        res = equality_classifier(f)
        payload = {
            "command": "bounds",
            "check": "classify",
            "label": res.label,
            "residual": res.residual,
            "note": res.note,
            "params": {k: _cplx(complex(v)) for k, v in (res.params or {}).items()},
        }
        _emit(config, payload, csv_rows=[(res.label, res.residual, res.note)],
              csv_header=("label", "residual", "note"))
        return 0

    failing = [rep for rep in reports if rep.verdict == "fail"]
    payload = {
        "command": "bounds",
        "check": check,
        "reports": _reports_payload(reports),
        "passed": not failing,
        **extra,
    }
    rows = [
        (rep.name, rep.lhs, rep.rhs, rep.slack, rep.equality, rep.verdict) for rep in reports
    ]
    _emit(config, payload, csv_rows=rows,
          csv_header=("name", "lhs", "rhs", "slack", "equality", "verdict"))
    return 2 if failing else 0


def _run_density(config: RunConfig) -> int:
    f = _load_input(config)
    profile = min_density(DomainMap(f), int(config.options.get("grid_resolution", 24)))
    payload = {
        "command": "density",
        "Lambda": profile.Lambda,
        "tau": _cplx(profile.tau),
        "R_h": profile.R_h,
    }
    rows = [
        (z.real, z.imag, w.real, w.imag, rho)
        for z, w, rho in zip(profile.sample_z, profile.points, profile.densities)
    ]
    _emit(config, payload, csv_rows=rows, csv_header=("z_re", "z_im", "w_re", "w_im", "rho"))
    return 0


def _run_explore(config: RunConfig) -> int:
    problem = int(config.options["problem"])
    kind = config.options.get("family", "lft-extremal")
    if kind == "random-polynomial":
        grid = tuple(range(int(config.options.get("count", 10))))
    else:
        grid = _parse_grid(config.options.get("grid", "0.1:0.9:5"))
    family = FamilySpec(
        kind, grid, seed=config.seed, degree=int(config.options.get("degree", 8))
    )
    if problem == 1:
        sweep = phi_profile(family, _parse_grid(config.options.get("r_grid", "0:0.9:10")))
    elif problem == 2:
        eps = grid if kind == "univalent-quadratic" else _parse_grid("0:0.25:6")
        sweep = problem2_sweep(
            eps, grid_resolution=int(config.options.get("grid_resolution", 16)),
            seed=config.seed,
        )
    else:
        sweep = problem3_sweep(family, int(config.options.get("w_resolution", 10)))
    payload = {"command": "explore", "problem": problem, **sweep.to_json_dict()}
    _emit(config, payload, csv_rows=list(sweep.to_csv_rows()),
          csv_header=("member", "parameters", "abscissa", "value"))
    return 0


def _run_verify_all(config: RunConfig) -> int:
    f = _load_input(config)
    suite = run_verification_suite(f, seed=config.seed, tolerances=config.tolerances)
    payload = {
        "command": "verify-all",
        "passed": suite["passed"],
        "reports": _reports_payload(suite["reports"]),
        "diagnostics": suite["diagnostics"],
        "normalization": suite["normalization"],
    }
    rows = [
        (rep.name, rep.lhs, rep.rhs, rep.slack, rep.equality, rep.verdict)
        for rep in suite["reports"]
    ]
    _emit(config, payload, csv_rows=rows,
          csv_header=("name", "lhs", "rhs", "slack", "equality", "verdict"))
    return 0 if suite["passed"] else 2


_RUNNERS = {
    "eval": _run_eval,
    "diameter": _run_diameter,
    "bounds": _run_bounds,
    "density": _run_density,
    "explore": _run_explore,
    "verify-all": _run_verify_all,
}


def run(config: RunConfig) -> int:
    return _RUNNERS[config.subcommand](config)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args)
        return run(config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SpecFormatError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return 1
    except DiskdiamError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


def entry():  # console-script shim
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
