"""Hyperbolic density for domains presented as conformal images of the disk.

The density pulled back through a parametrization f is
rho(w) = 1 / ((1 - |z|^2) |f'(z)|) at w = f(z); its minimum over the domain,
the minimizing point, and the farthest-point radius from that point are the
quantities profiled here.  Univalence of f is a caller contract, spot-checked
by random collision sampling only.  Note the pointwise inequality rho >= 1
under Diam <= 2 does not actually need univalence: it is the derivative bound
applied to f recentered by a disk automorphism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .diameter import disk_diameter
from .errors import DomainError, InvalidArgument, PreconditionError, UnivalenceError
from .report import bound_report, BoundReport
from .series import AnalyticFunction, EVAL_RADIUS_CAP

GRID_RADIUS_CAP = 0.995


@dataclass(frozen=True)
class DomainMap:
    """A map asserted univalent on the disk, labelling a domain f(D)."""

    f: AnalyticFunction
    label: str = ""


@dataclass(frozen=True)
class DensityProfile:
    """Sampled density over the domain with its minimum data.

    Lambda is the smallest density found (grid plus refinement, so an upper
    estimate of the true minimum that matches it to refinement accuracy);
    tau = f(argmin); R_h is a certified upper bound for sup |w - tau| over
    the image, no smaller than the sampled boundary maximum.
    """

    sample_z: np.ndarray     # polar grid points in the disk
    points: np.ndarray       # image samples w = f(z)
    densities: np.ndarray
    Lambda: float
    tau: complex
    R_h: float
    argmin_z: complex


def univalence_spot_check(
    dom: DomainMap, pairs: int = 1000, seed: int = 0, tol: float = 1e-9
) -> bool:
    """Necessary-condition check: no image collisions among random pairs."""
    rng = np.random.default_rng(seed)
    r = 0.98 * min(dom.f.eval_radius, EVAL_RADIUS_CAP)
    u = rng.random((2, pairs))
    ang = rng.random((2, pairs))
    za = r * np.sqrt(u[0]) * np.exp(2j * np.pi * ang[0])
    zb = r * np.sqrt(u[1]) * np.exp(2j * np.pi * ang[1])
    wa = dom.f.evaluate_many(za)
    wb = dom.f.evaluate_many(zb)
    apart = np.abs(za - zb) >= 1e-6
    collide = np.abs(wa - wb) <= tol
    return not bool(np.any(apart & collide))


def density_at(dom: DomainMap, z: complex) -> float:
    """rho at w = f(z): 1 / ((1 - |z|^2) |f'(z)|)."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("z must lie in the unit disk")
    if abs(z) > dom.f.eval_radius * (1.0 + 1e-12):
        raise DomainError(f"|z| exceeds certified radius {dom.f.eval_radius}")
    fp = abs(dom.f.derivative_at(z))
    if fp < 1e-12:
        raise UnivalenceError(f"|f'({z})| = {fp:.3g}; the univalence contract is violated")
    return 1.0 / ((1.0 - abs(z) ** 2) * fp)


def _density_grid(f: AnalyticFunction, z: np.ndarray) -> np.ndarray:
    fp = np.abs(f.derivative().evaluate_many(z))
    with np.errstate(divide="ignore"):
        return 1.0 / ((1.0 - np.abs(z) ** 2) * fp)


def min_density(
    dom: DomainMap,
    grid_resolution: int = 24,
    *,
    refine_rounds: int = 4,
    boundary_n: int = 1 << 10,
) -> DensityProfile:
    """Polar grid search for the density minimum with coordinate refinement.

    The refinement runs bounded golden/parabolic line searches alternately in
    radius and angle around the best grid cell.
    """
    if grid_resolution < 8:
        raise InvalidArgument("grid_resolution must be >= 8")
    f = dom.f
    rmax = min(GRID_RADIUS_CAP, 0.995 * f.eval_radius)
    radii = np.linspace(0.0, rmax, grid_resolution)
    angles = 2.0 * np.pi * np.arange(2 * grid_resolution) / (2 * grid_resolution)
    rr, aa = np.meshgrid(radii, angles, indexing="ij")
    z = (rr * np.exp(1j * aa)).ravel()
    z = np.concatenate(([0.0 + 0.0j], z))
    dens = _density_grid(f, z)
    k = int(np.nanargmin(dens))
    best_r, best_a = abs(z[k]), float(np.angle(z[k]))

    dr = radii[1] - radii[0] if grid_resolution > 1 else rmax
    da = float(angles[1]) if angles.size > 1 else math.pi

    def value(r, a):
        return _density_grid(f, np.asarray([r * np.exp(1j * a)]))[0]

    for _ in range(refine_rounds):
        res = minimize_scalar(
            lambda r: value(r, best_a),
            bounds=(max(0.0, best_r - dr), min(rmax, best_r + dr)),
            method="bounded",
            options={"xatol": 1e-12},
        )
        best_r = float(res.x)
        if best_r > 1e-9:
            res = minimize_scalar(
                lambda a: value(best_r, a),
                bounds=(best_a - da, best_a + da),
                method="bounded",
                options={"xatol": 1e-12},
            )
            best_a = float(res.x)
        dr *= 0.25
        da *= 0.25

    z_star = best_r * np.exp(1j * best_a)
    lam = float(min(value(best_r, best_a), dens[k]))
    tau = complex(f.evaluate(z_star)) if abs(z_star) <= f.eval_radius else complex(f.evaluate(0))

    rb = min(EVAL_RADIUS_CAP, f.eval_radius)
    wb = f.evaluate_many(rb * np.exp(2j * np.pi * np.arange(boundary_n) / boundary_n))
    sampled = float(np.max(np.abs(wb - tau)))
    route_scan = sampled + f.deriv_abs_bound(1.0) * (1.0 - rb)
    route_coeff = abs(f.coefficient(0) - tau) + f.abs_coeff_sum(1.0, start=1)
    r_h = min(route_scan, route_coeff)
    return DensityProfile(
        sample_z=z,
        points=f.evaluate_many(z),
        densities=dens,
        Lambda=lam,
        tau=tau,
        R_h=max(r_h, sampled),
        argmin_z=complex(z_star),
    )


def density_bound_report(
    dom: DomainMap,
    profile: DensityProfile | None = None,
    *,
    diam_tol: float = 1e-6,
    tol: float = 1e-6,
    grid_resolution: int = 24,
) -> BoundReport:
    """Minimum density >= 1 whenever the image diameter is at most 2."""
    lo, hi = disk_diameter(dom.f, diam_tol)
    if lo > 2.0 + diam_tol:
        raise PreconditionError(f"image diameter at least {lo:.6g} exceeds 2 + {diam_tol:g}")
    if profile is None:
        profile = min_density(dom, grid_resolution)
    return bound_report(
        "density-min",
        1.0,
        profile.Lambda,
        witness=(profile.tau,),
        tolerances={"diam_lower": lo, "diam_upper": hi, "R_h": profile.R_h},
        numeric_tol=tol,
    )


def monotonicity_check(
    inner: DomainMap,
    outer: DomainMap,
    embed: AnalyticFunction,
    *,
    grid_resolution: int = 12,
    sub_tol: float = 1e-8,
    tol: float = 1e-9,
) -> BoundReport:
    """Smaller domain, larger density, compared along a given subordination.

    ``embed`` must realize inner = outer o embed on the disk (checked on the
    grid); densities are then compared at the corresponding points.
    """
    radii = np.linspace(0.0, 0.9, grid_resolution)
    angles = 2.0 * np.pi * np.arange(2 * grid_resolution) / (2 * grid_resolution)
    rr, aa = np.meshgrid(radii, angles, indexing="ij")
    z = (rr * np.exp(1j * aa)).ravel()
    ez = embed.evaluate_many(z)
    if float(np.max(np.abs(ez))) >= min(1.0, outer.f.eval_radius * (1.0 + 1e-12)):
        raise PreconditionError("embedding leaves the certified radius of the outer map")
    mismatch = float(np.max(np.abs(inner.f.evaluate_many(z) - outer.f.evaluate_many(ez))))
    if mismatch > sub_tol:
        raise PreconditionError(
            f"subordination mismatch {mismatch:.3g} exceeds {sub_tol:g}"
        )
    rho_in = _density_grid(inner.f, z)
    # density of the outer domain at the same image points w = inner.f(z)
    fp_out = np.abs(outer.f.derivative().evaluate_many(ez))
    with np.errstate(divide="ignore"):
        rho_out = 1.0 / ((1.0 - np.abs(ez) ** 2) * fp_out)
    gap = rho_out - rho_in
    k = int(np.nanargmax(gap))
    return bound_report(
        "density-monotonicity",
        float(gap[k]),
        0.0,
        witness=(complex(z[k]),),
        tolerances={"subordination_mismatch": mismatch},
        numeric_tol=tol,
    )
