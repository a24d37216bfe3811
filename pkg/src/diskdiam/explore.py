"""Empirical sweeps over parametric families for the open growth questions.

Everything here is exploratory: sweeps record per-member curves and their
pointwise upper envelopes with no sharpness claim.  Families are normalized
so the certified upper bound of the image diameter equals the target (so the
``Diam <= 2`` hypotheses hold rigorously for every member), and all sampling
is seeded, so identical specs reproduce identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .diameter import disk_diameter, normalize_to_diameter
from .errors import InvalidArgument
from .hyperbolic import DomainMap, min_density
from .series import (
    AnalyticFunction,
    EVAL_RADIUS_CAP,
    from_coefficients,
    make_extremal_lft,
    make_schur_extremal,
    max_modulus_on_circle,
)

FAMILY_KINDS = ("lft-extremal", "schur-extremal", "random-polynomial", "univalent-quadratic")


@dataclass(frozen=True)
class FamilySpec:
    """A parametric family: which members, how seeded, how normalized."""

    kind: str
    grid: tuple
    seed: int = 0
    normalization: float = 2.0
    degree: int = 8  # random-polynomial only

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise InvalidArgument(f"unknown family kind {self.kind!r}")
        if not self.grid:
            raise InvalidArgument("family grid must be nonempty")
        object.__setattr__(self, "grid", tuple(self.grid))


@dataclass(frozen=True)
class MemberRecord:
    member_id: str
    params: dict
    abscissae: tuple
    values: tuple
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SweepResult:
    family: FamilySpec
    records: tuple[MemberRecord, ...]
    envelope: dict
    diagnostics: tuple[str, ...]
    metadata: dict

    def to_json_dict(self) -> dict:
        return {
            "family": {
                "kind": self.family.kind,
                "grid": [_jsonable(g) for g in self.family.grid],
                "seed": self.family.seed,
                "normalization": self.family.normalization,
            },
            "records": [
                {
                    "member": rec.member_id,
                    "params": {k: _jsonable(v) for k, v in sorted(rec.params.items())},
                    "abscissae": [float(a) for a in rec.abscissae],
                    "values": [float(v) for v in rec.values],
                    "extra": {k: _jsonable(v) for k, v in sorted(rec.extra.items())},
                }
                for rec in self.records
            ],
            "envelope": {k: [_jsonable(x) for x in v] for k, v in sorted(self.envelope.items())},
            "diagnostics": list(self.diagnostics),
            "metadata": {k: _jsonable(v) for k, v in sorted(self.metadata.items())},
        }

    def to_csv_rows(self):
        """Rows (member, parameters, abscissa, value) for the sweep CSV."""
        for rec in self.records:
            ptxt = ";".join(f"{k}={_param_text(v)}" for k, v in sorted(rec.params.items()))
            for a, v in zip(rec.abscissae, rec.values):
                yield rec.member_id, ptxt, float(a), float(v)


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


def _param_text(v):
    if isinstance(v, complex):
        return f"{v.real:.12g}{v.imag:+.12g}j"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def random_polynomial(rng: np.random.Generator, degree: int = 8) -> AnalyticFunction:
    """Coefficients drawn uniformly from the unit square [0,1) x [0,1)i."""
    coeffs = rng.random(degree + 1) + 1j * rng.random(degree + 1)
    return from_coefficients(coeffs)


def random_univalent_polynomial(rng: np.random.Generator, degree: int = 8) -> AnalyticFunction:
    """z plus a tail with sum k |c_k| < 1, which forces univalence on the disk."""
    tail = (rng.random(degree - 1) - 0.5) + 1j * (rng.random(degree - 1) - 0.5)
    k = np.arange(2, degree + 1)
    budget = 0.3 + 0.55 * rng.random()
    weight = float(np.sum(k * np.abs(tail)))
    tail *= budget / max(weight, 1e-300)
    coeffs = np.concatenate(([0.0, 1.0], tail))
    return from_coefficients(coeffs)


def family_members(spec: FamilySpec, *, normalize: bool = True):
    """Yield (member_id, params, f) with f normalized per the spec."""
    rng = np.random.default_rng(spec.seed)
    for idx, p in enumerate(spec.grid):
        if spec.kind == "lft-extremal":
            f = make_extremal_lft(0.0, complex(p), 1.0)
            params = {"b": complex(p)}
        elif spec.kind == "schur-extremal":
            f = make_schur_extremal(complex(p))
            params = {"a": complex(p)}
        elif spec.kind == "univalent-quadratic":
            eps = float(np.real(p))
            if not (0.0 <= eps <= 0.25):
                raise InvalidArgument("quadratic family needs eps in [0, 0.25]")
            f = from_coefficients([0.0, 1.0, eps])
            params = {"eps": eps}
        else:  # random-polynomial
            f = random_polynomial(rng, spec.degree)
            params = {"index": idx}
        if normalize and spec.normalization:
            f = normalize_to_diameter(f, spec.normalization)
        yield f"{spec.kind}[{idx}]", params, f


# ---------------------------------------------------------------------------
# problem 1: distance from the linearization, scaled by 1 - |f'(0)|
# ---------------------------------------------------------------------------


def phi_profile(family: FamilySpec, r_grid, *, scan_n: int = 1 << 10) -> SweepResult:
    """max over |z| <= r of |f - (f(0) + f'(0) z)| / (1 - |f'(0)|) per member.

    Members with |f'(0)| within 1e-12 of 1 have a degenerate quotient and are
    skipped with a diagnostic.  The envelope is a pointwise empirical lower
    bound for any admissible comparison function.
    """
    r_grid = tuple(float(r) for r in r_grid)
    if any(r < 0.0 or r >= 1.0 for r in r_grid):
        raise InvalidArgument("r_grid must lie in [0, 1)")
    records = []
    diagnostics = []
    for member_id, params, f in family_members(family):
        a = abs(f.coefficient(1))
        if a >= 1.0 - 1e-12:
            diagnostics.append(f"{member_id}: skipped, |f'(0)| = {a:.17g} degenerates the quotient")
            continue
        resid = f.minus_linearization()
        values = []
        for r in r_grid:
            if r == 0.0:
                values.append(0.0)
            else:
                values.append(max_modulus_on_circle(resid, r, scan_n=scan_n).value / (1.0 - a))
        records.append(MemberRecord(member_id, params, r_grid, tuple(values)))
    envelope = {
        "abscissae": r_grid,
        "values": tuple(
            max((rec.values[i] for rec in records), default=0.0) for i in range(len(r_grid))
        ),
    }
    return SweepResult(
        family=family,
        records=tuple(records),
        envelope=envelope,
        diagnostics=tuple(diagnostics),
        metadata={"sweep": "phi-profile", "scan_n": scan_n},
    )


# ---------------------------------------------------------------------------
# problem 2: hyperbolic radius against the density-minimum excess
# ---------------------------------------------------------------------------


def problem2_sweep(
    eps_grid, *, grid_resolution: int = 24, seed: int = 0, normalization: float = 2.0
) -> SweepResult:
    """(m, R_h) along the convex family z + eps z^2, eps in [0, 1/4]."""
    eps_grid = tuple(float(e) for e in eps_grid)
    family = FamilySpec("univalent-quadratic", eps_grid, seed=seed, normalization=normalization)
    records = []
    for member_id, params, f in family_members(family):
        prof = min_density(DomainMap(f, member_id), grid_resolution)
        records.append(
            MemberRecord(
                member_id,
                params,
                abscissae=(params["eps"],),
                values=(prof.Lambda,),
                extra={"R_h": prof.R_h, "tau": prof.tau, "m_minus_1": prof.Lambda - 1.0},
            )
        )
    envelope = {
        "abscissae": tuple(rec.extra["m_minus_1"] for rec in records),
        "values": tuple(rec.extra["R_h"] for rec in records),
    }
    return SweepResult(
        family=family,
        records=tuple(records),
        envelope=envelope,
        diagnostics=(),
        metadata={"sweep": "problem2", "grid_resolution": grid_resolution},
    )


# ---------------------------------------------------------------------------
# problem 3: the centered covering radius M(f)
# ---------------------------------------------------------------------------


def _sup_from_center(f: AnalyticFunction, w: complex, boundary_vals: np.ndarray, rb: float) -> float:
    """Certified upper bound for sup over the disk of |f(z) - f(w)|."""
    fw = f.evaluate(w)
    scan = float(np.max(np.abs(boundary_vals - fw))) + f.deriv_abs_bound(1.0) * (1.0 - rb)
    k = np.arange(1, f.degree + 1)
    route = float(np.sum(np.abs(f.coefficients[1:]) * (1.0 + np.abs(w) ** k)))
    return min(scan, route)


def problem3_sweep(
    family: FamilySpec, w_grid_resolution: int = 12, *, boundary_n: int = 1 << 10
) -> SweepResult:
    """M(f) = min over centers w of sup |f - f(w)|, with its minimizer.

    Inner sup: certified near-boundary scan with derivative tail.  Outer min:
    polar w-grid (ties to the smallest |w|, then smallest argument) polished
    by a bounded Nelder-Mead run.
    """
    if w_grid_resolution < 4:
        raise InvalidArgument("w_grid_resolution must be >= 4")
    records = []
    for member_id, params, f in family_members(family):
        rb = min(EVAL_RADIUS_CAP, f.eval_radius)
        bv = f.evaluate_many(rb * np.exp(2j * np.pi * np.arange(boundary_n) / boundary_n))
        radii = np.linspace(0.0, 0.9, w_grid_resolution)
        angles = 2.0 * np.pi * np.arange(2 * w_grid_resolution) / (2 * w_grid_resolution)
        candidates = [0.0 + 0.0j] + [
            r * np.exp(1j * a) for r in radii[1:] for a in angles
        ]
        vals = [(_sup_from_center(f, w, bv, rb), w) for w in candidates]
        vmin = min(v for v, _ in vals)
        near = [w for v, w in vals if v <= vmin + 1e-9]
        w0 = min(near, key=lambda w: (abs(w), np.angle(w) % (2.0 * np.pi)))

        def objective(p):
            w = complex(p[0], p[1])
            if abs(w) >= 0.999:
                return vmin + 10.0 * (abs(w) - 0.999) + 1.0
            return _sup_from_center(f, w, bv, rb)

        res = minimize(
            objective,
            np.asarray([w0.real, w0.imag]),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 400},
        )
        w_f = complex(res.x[0], res.x[1])
        m_f = float(res.fun)
        if m_f > vmin:  # keep the grid winner if polish drifted
            w_f, m_f = w0, vmin
        deriv_quantity = abs(f.derivative_at(w_f)) * (1.0 - abs(w_f) ** 2)
        records.append(
            MemberRecord(
                member_id,
                params,
                abscissae=(deriv_quantity,),
                values=(m_f,),
                extra={"w_f": w_f, "M": m_f, "deriv_quantity": deriv_quantity},
            )
        )
    # envelope over the derivative-quantity constraint: sup of M among members
    # whose quantity is at least the abscissa
    pairs = sorted(((rec.abscissae[0], rec.values[0]) for rec in records), reverse=True)
    absc, vals = [], []
    running = -math.inf
    for a, m in pairs:
        running = max(running, m)
        absc.append(a)
        vals.append(running)
    envelope = {"abscissae": tuple(absc), "values": tuple(vals)}
    return SweepResult(
        family=family,
        records=tuple(records),
        envelope=envelope,
        diagnostics=(),
        metadata={"sweep": "problem3", "w_grid_resolution": w_grid_resolution},
    )
