"""The consolidated invariant suite behind the `verify-all` subcommand.

Given one function, this runs every bound verifier the toolkit knows with
appropriate normalizations: the sup-normalized checks on f / S where S is a
certified bound for sup |f - f(0)|, the diameter-constrained checks on the
rescaling whose certified upper diameter equals 2.  A spec whose pinned
series disagrees with its declared family shows up here as theorem
violations (typically the coefficient bound), so the suite doubles as a data
consistency check.
"""

from __future__ import annotations

import numpy as np

from .bounds import (
    fixed_point_lemma_check,
    growth_bound,
    growth_bound_symmetric,
    landau_toeplitz,
    poukka,
    predicted_equality_point,
    schur_decompose,
    schwarz_derivative,
    schwarz_growth,
)
from .diameter import linearity_probe, normalize_to_diameter, ratio_curve
from .errors import DegenerateInputError
from .hyperbolic import DomainMap, density_bound_report, univalence_spot_check
from .report import bound_report
from .series import AnalyticFunction, centered_sup_bound

_GROWTH_POINTS = (0.3, 0.45 + 0.35j, -0.62, 0.8j)
_PAIR_POINTS = ((0.3, -0.2 + 0.1j), (0.5j, 0.25))
_SCHUR_RADII = (0.3, 0.5, 0.7)
_LEMMA_W = 0.4


def run_verification_suite(f: AnalyticFunction, *, seed: int = 0, tolerances=None) -> dict:
    """Run the full suite; returns {"passed", "reports", "diagnostics"}."""
    tols = dict(tolerances or {})
    diam_tol = tols.get("diam_tol", 1e-6)
    equality_tol = tols.get("equality_tol", 1e-9)
    numeric_tol = tols.get("numeric_tol", 1e-9)
    rigidity_tol = tols.get("rigidity_tol", 1e-6)
    quad_n = int(tols.get("quadrature_n", 1 << 12))
    density_grid = int(tols.get("density_grid", 24))

    reports = []
    diagnostics = []

    sup = centered_sup_bound(f)
    if sup <= 1e-12:
        raise DegenerateInputError("constant input: the bound suite is vacuous")
    f_sup = f.scaled(1.0 / sup)
    f_diam = normalize_to_diameter(f, 2.0, diam_tol)
    reach = 0.9 * f.eval_radius

    def usable(*pts):
        return all(0 < abs(p) <= reach for p in pts)

    reports.append(schwarz_derivative(f_sup, 1.0, numeric_tol=numeric_tol))
    for z in _GROWTH_POINTS:
        if usable(z):
            reports.append(schwarz_growth(f_sup, z, 1.0, numeric_tol=numeric_tol))

    reports.append(
        landau_toeplitz(
            f_diam,
            diam_tol,
            equality_tol=equality_tol,
            rigidity_tol=rigidity_tol,
            numeric_tol=numeric_tol,
        )
    )

    growth_points = list(_GROWTH_POINTS)
    z_eq = predicted_equality_point(f_diam)
    if z_eq is not None and usable(z_eq):
        growth_points.append(z_eq)
    for z in growth_points:
        if usable(z):
            reports.append(
                growth_bound(
                    f_diam,
                    z,
                    diam_tol=diam_tol,
                    equality_tol=equality_tol,
                    numeric_tol=numeric_tol,
                )
            )
    for z, w in _PAIR_POINTS:
        if usable(z) and (w == 0 or usable(w)):
            reports.append(
                growth_bound_symmetric(
                    f_diam,
                    z,
                    w,
                    diam_tol=diam_tol,
                    equality_tol=equality_tol,
                    numeric_tol=numeric_tol,
                )
            )

    for n in range(1, min(8, max(f_diam.degree, 1)) + 1):
        if n > f_diam.degree:
            break
        reports.append(
            poukka(
                f_diam,
                n,
                min(0.9, reach),
                quadrature_n=quad_n,
                diam_tol=diam_tol,
                equality_tol=equality_tol,
                rigidity_tol=rigidity_tol,
                numeric_tol=numeric_tol,
            ).bound
        )

    radii = [r for r in _SCHUR_RADII if r <= reach]
    if radii:
        sd = schur_decompose(
            f_sup, radii, equality_tol=equality_tol, numeric_tol=numeric_tol
        )
        reports.extend(sd.residual_curve)
        diagnostics.append(f"schur reconstruction residual {sd.recon_residual:.3g}")

    c1 = f_diam.coefficient(1)
    if abs(c1) > 1e-12 and _LEMMA_W <= reach:
        shift = f_diam.evaluate(-_LEMMA_W)
        g_w = f_diam.shifted(-shift).scaled(1.0 / (2.0 * c1))
        reports.append(fixed_point_lemma_check(g_w, _LEMMA_W))
    else:
        diagnostics.append("fixed-point lemma skipped: f'(0) = 0 or radius too small")

    curve = ratio_curve(f_diam, tol=max(diam_tol, 1e-7))
    reports.append(
        bound_report(
            "ratio-monotonicity",
            float(len(curve.violations)),
            0.0,
            tolerances={"grid_points": float(len(curve.grid))},
            numeric_tol=0.5,
        )
    )
    reports.append(linearity_probe(curve, f_diam, tol=numeric_tol))

    dom = DomainMap(f_diam, "verify-all input")
    spot = univalence_spot_check(dom, seed=seed)
    dens = density_bound_report(dom, diam_tol=diam_tol, grid_resolution=density_grid)
    dens.tolerances["univalence_spot_check"] = float(spot)
    reports.append(dens)
    if not spot:
        diagnostics.append(
            "univalence spot check failed: density values are not the domain "
            "density, though the minimum bound itself needs no univalence"
        )

    passed = all(r.verdict != "fail" for r in reports)
    return {
        "passed": passed,
        "reports": reports,
        "diagnostics": diagnostics,
        "normalization": {"sup_bound": sup, "diam_scale": 2.0},
    }
