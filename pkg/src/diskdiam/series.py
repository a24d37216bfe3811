"""Truncated power-series model of analytic functions on the unit disk.

Everything downstream (diameters, bound verifiers, density profiles) works
with one representation: a finite coefficient vector c_0..c_K interpreted as
f(z) = sum c_k z^k, together with an ``eval_radius`` up to which the series
is certified to represent its source (constructors pick the truncation order
so the dropped tail is below ``TAIL_BUDGET`` at that radius).  All objects
are immutable and all operations are pure, so concurrent use needs no
coordination.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import DomainError, InvalidArgument

EVAL_RADIUS_CAP = 0.999  # evaluations are never certified past this radius
TAIL_BUDGET = 1e-12      # dropped-tail allowance at the certified radius
DEFAULT_TRUNCATION = 64
MAX_TRUNCATION = 1 << 14

PROVENANCE_TAGS = (
    "polynomial",
    "moebius",
    "composition",
    "extremal-lft",
    "schur-extremal",
)


@dataclass(frozen=True)
class AnalyticFunction:
    """f(z) = sum c_k z^k, certified for |z| <= eval_radius.

    ``known_diameter`` is set by constructors whose image geometry is exact in
    closed form (disk automorphisms, monomials, Blaschke-type products); the
    numerical diameter engine must always produce an enclosure containing it.
    ``family_params`` keeps the constructor parameters of the named extremal
    families so verifiers can cross-check predicted equality data.
    """

    coefficients: np.ndarray
    eval_radius: float = EVAL_RADIUS_CAP
    provenance_tag: str = "polynomial"
    known_diameter: float | None = None
    family_params: dict | None = None

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coefficients, dtype=np.complex128)).copy()
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise InvalidArgument("coefficients must be a nonempty 1-d sequence")
        if not (0.0 < float(self.eval_radius) <= 1.0):
            raise InvalidArgument(f"eval_radius must lie in (0, 1], got {self.eval_radius}")
        if self.provenance_tag not in PROVENANCE_TAGS:
            raise InvalidArgument(f"unknown provenance tag {self.provenance_tag!r}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "eval_radius", float(self.eval_radius))

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        return self.coefficients.shape[0] - 1

    def coefficient(self, k: int) -> complex:
        if k < 0:
            raise InvalidArgument("coefficient index must be >= 0")
        if k > self.degree:
            return 0j
        return complex(self.coefficients[k])

    def _check_radius(self, z: np.ndarray):
        if z.size == 0:
            return
        zmax = float(np.max(np.abs(z)))
        if zmax > self.eval_radius * (1.0 + 1e-12) + 1e-15:
            raise DomainError(
                f"|z| = {zmax:.6g} exceeds certified radius {self.eval_radius:.6g}"
            )

    # -- evaluation ----------------------------------------------------

    def evaluate(self, z) -> complex:
        return complex(self.evaluate_many(np.asarray([z], dtype=np.complex128))[0])

    def __call__(self, z):
        zarr = np.asarray(z, dtype=np.complex128)
        if zarr.ndim == 0:
            return self.evaluate(complex(zarr))
        return self.evaluate_many(zarr)

    def evaluate_many(self, z: np.ndarray) -> np.ndarray:
        zarr = np.ascontiguousarray(z, dtype=np.complex128)
        self._check_radius(zarr)
        return _kernels.horner_eval(self.coefficients, zarr)

    def derivative(self) -> AnalyticFunction:
        if self.degree == 0:
            dcoeffs = np.zeros(1, dtype=np.complex128)
        else:
            k = np.arange(1, self.degree + 1)
            dcoeffs = self.coefficients[1:] * k
        return AnalyticFunction(dcoeffs, self.eval_radius, self.provenance_tag)

    def derivative_at(self, z) -> complex:
        # Horner on the differentiated coefficients; exact c_1 at z = 0.
        return self.derivative().evaluate(z)

    # -- structural pieces ----------------------------------------------

    def odd_part(self) -> AnalyticFunction:
        coeffs = self.coefficients.copy()
        coeffs[::2] = 0.0
        return AnalyticFunction(coeffs, self.eval_radius, self.provenance_tag)

    def even_part(self) -> AnalyticFunction:
        coeffs = self.coefficients.copy()
        coeffs[1::2] = 0.0
        return AnalyticFunction(coeffs, self.eval_radius, self.provenance_tag)

    def scaled(self, factor: complex) -> AnalyticFunction:
        """lambda * f; exact image diameters scale by |lambda|."""
        if factor == 1:
            return self
        known = None if self.known_diameter is None else self.known_diameter * abs(factor)
        return AnalyticFunction(
            self.coefficients * factor, self.eval_radius, self.provenance_tag, known
        )

    def shifted(self, offset: complex) -> AnalyticFunction:
        """f + const; image diameters are translation invariant."""
        coeffs = self.coefficients.copy()
        coeffs[0] += offset
        return AnalyticFunction(
            coeffs, self.eval_radius, self.provenance_tag, self.known_diameter
        )

    def centered(self) -> AnalyticFunction:
        """f - f(0)."""
        return self.shifted(-self.coefficient(0))

    def minus_linearization(self) -> AnalyticFunction:
        """f - (f(0) + f'(0) z)."""
        coeffs = self.coefficients.copy()
        coeffs[0] = 0.0
        if self.degree >= 1:
            coeffs[1] = 0.0
        return AnalyticFunction(coeffs, self.eval_radius, self.provenance_tag)

    # -- certified coefficient bounds ------------------------------------

    def abs_coeff_sum(self, r: float = 1.0, start: int = 0) -> float:
        """sum_{k>=start} |c_k| r^k -- bounds |f| (start=0) on |z| <= r."""
        k = np.arange(start, self.degree + 1)
        if k.size == 0:
            return 0.0
        return float(np.sum(np.abs(self.coefficients[start:]) * r**k))

    def deriv_abs_bound(self, r: float = 1.0) -> float:
        """sum k |c_k| r^(k-1) >= max |f'| on |z| <= r."""
        if self.degree == 0:
            return 0.0
        k = np.arange(1, self.degree + 1)
        return float(np.sum(k * np.abs(self.coefficients[1:]) * r ** (k - 1)))

    def second_deriv_abs_bound(self, r: float = 1.0) -> float:
        if self.degree <= 1:
            return 0.0
        k = np.arange(2, self.degree + 1)
        return float(np.sum(k * (k - 1) * np.abs(self.coefficients[2:]) * r ** (k - 2)))


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def from_coefficients(
    coefficients, eval_radius: float = EVAL_RADIUS_CAP, provenance_tag: str = "polynomial"
) -> AnalyticFunction:
    """Wrap an explicit coefficient list.

    A constant map, or one whose only nonzero coefficient beyond c_0 is a
    single c_k, maps the disk onto a round disk of radius |c_k|, so the exact
    image diameter is recorded.
    """
    f = AnalyticFunction(np.asarray(coefficients, dtype=np.complex128), eval_radius, provenance_tag)
    nonzero = [k for k in range(1, f.degree + 1) if f.coefficients[k] != 0]
    known = None
    if not nonzero:
        known = 0.0
    elif len(nonzero) == 1:
        known = 2.0 * abs(f.coefficients[nonzero[0]])
    if known is None:
        return f
    return AnalyticFunction(f.coefficients, f.eval_radius, provenance_tag, known)


def identity() -> AnalyticFunction:
    return from_coefficients([0.0, 1.0])


def monomial(n: int, c: complex = 1.0) -> AnalyticFunction:
    if n < 0:
        raise InvalidArgument("monomial degree must be >= 0")
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = c
    return from_coefficients(coeffs)


# ---------------------------------------------------------------------------
# Moebius maps
# ---------------------------------------------------------------------------

_UNIT_MODULUS_TOL = 1e-14


@dataclass(frozen=True)
class MoebiusMap:
    """z -> scale * eta * (z - xi) / (1 - conj(xi) z) + shift.

    With scale = 1 and shift = 0 this is a disk automorphism: it maps the
    unit disk onto itself and the unit circle onto itself.
    """

    xi: complex
    eta: complex
    scale: complex = 1.0
    shift: complex = 0.0

    def __post_init__(self):
        if abs(self.xi) >= 1.0:
            raise InvalidArgument(f"|xi| must be < 1, got {abs(self.xi):.6g}")
        if abs(abs(self.eta) - 1.0) > _UNIT_MODULUS_TOL:
            raise InvalidArgument(f"|eta| must equal 1, got {abs(self.eta):.17g}")
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "eta", complex(self.eta))
        object.__setattr__(self, "scale", complex(self.scale))
        object.__setattr__(self, "shift", complex(self.shift))

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128) if not np.isscalar(z) else z
        core = (z - self.xi) / (1.0 - np.conj(self.xi) * z)
        return self.scale * self.eta * core + self.shift

    def is_automorphism(self) -> bool:
        return self.scale == 1.0 and self.shift == 0.0

    def disk_sup(self, rho: float) -> float:
        """max over |z| = rho of |automorphism part|; exact closed form."""
        a = abs(self.xi)
        return (rho + a) / (1.0 + rho * a)

    def _series_coefficients(self, truncation: int) -> np.ndarray:
        # (z - xi)/(1 - conj(xi) z) = -xi + (1 - |xi|^2) sum_{k>=1} conj(xi)^(k-1) z^k
        amp = self.scale * self.eta
        coeffs = np.zeros(truncation + 1, dtype=np.complex128)
        coeffs[0] = self.shift - amp * self.xi
        xibar = np.conj(self.xi)
        coeffs[1:] = amp * (1.0 - abs(self.xi) ** 2) * xibar ** np.arange(truncation)
        return coeffs

    def _tail(self, truncation: int, r: float) -> float:
        a = abs(self.xi)
        if a == 0.0:
            return 0.0
        amp = abs(self.scale) * (1.0 - a * a)
        return amp * a**truncation * r ** (truncation + 1) / (1.0 - a * r)

    def to_series(
        self, truncation: int | None = None, eval_radius: float = EVAL_RADIUS_CAP
    ) -> AnalyticFunction:
        """Truncated series with geometric tail below TAIL_BUDGET at the radius.

        An explicit ``truncation`` is honored; the certified radius is then
        reduced until the tail budget holds.
        """
        radius = min(eval_radius, EVAL_RADIUS_CAP)
        if truncation is None:
            k = DEFAULT_TRUNCATION
            while self._tail(k, radius) > TAIL_BUDGET and k < MAX_TRUNCATION:
                k *= 2
        else:
            if truncation < 1:
                raise InvalidArgument("truncation must be >= 1")
            k = truncation
        radius = _shrink_radius_to_budget(lambda r: self._tail(k, r), radius)
        return AnalyticFunction(
            self._series_coefficients(k),
            radius,
            "moebius",
            known_diameter=2.0 * abs(self.scale),
            family_params={"xi": self.xi, "eta": self.eta, "scale": self.scale, "shift": self.shift},
        )


def _shrink_radius_to_budget(tail, radius: float) -> float:
    """Largest r <= radius (coarse bisection) with tail(r) <= TAIL_BUDGET."""
    if tail(radius) <= TAIL_BUDGET:
        return radius
    lo, hi = 0.0, radius
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if tail(mid) <= TAIL_BUDGET:
            lo = mid
        else:
            hi = mid
    if lo <= 0.0:
        raise InvalidArgument("cannot certify any evaluation radius at this truncation")
    return lo


def make_extremal_lft(
    a: complex, b: complex, c: complex, eval_radius: float = EVAL_RADIUS_CAP
) -> AnalyticFunction:
    """f(z) = c (z - b)/(1 - conj(b) z) + a with 0 < |b| < 1 and |c| = 1.

    A rotated disk automorphism plus a shift, so the image is a translated
    unit disk and the image diameter is exactly 2.
    """
    if abs(b) == 0.0:
        raise InvalidArgument("b must be nonzero (b = 0 degenerates to a linear map)")
    if abs(b) >= 1.0:
        raise InvalidArgument(f"|b| must be < 1, got {abs(b):.6g}")
    if abs(abs(c) - 1.0) > _UNIT_MODULUS_TOL:
        raise InvalidArgument(f"|c| must equal 1, got {abs(c):.17g}")
    base = MoebiusMap(xi=b, eta=1.0, scale=c, shift=a).to_series(eval_radius=eval_radius)
    return AnalyticFunction(
        base.coefficients,
        base.eval_radius,
        "extremal-lft",
        known_diameter=2.0,
        family_params={"a": complex(a), "b": complex(b), "c": complex(c)},
    )


def make_schur_extremal(
    a: complex, b: complex = 0.0, eval_radius: float = EVAL_RADIUS_CAP
) -> AnalyticFunction:
    """f(z) = z * (a/|a|) * (z + |a|)/(1 + |a| z) + b with 0 < |a| <= 1.

    f'(0) = a, and z (z + |a|)/(1 + |a| z) is a two-fold Blaschke product
    mapping the disk onto the disk, so the image diameter is exactly 2.
    """
    alpha = abs(a)
    if alpha == 0.0:
        raise InvalidArgument("a must be nonzero")
    if alpha > 1.0 + _UNIT_MODULUS_TOL:
        raise InvalidArgument(f"|a| must be <= 1, got {alpha:.6g}")
    alpha = min(alpha, 1.0)
    unit = a / abs(a)
    radius = min(eval_radius, EVAL_RADIUS_CAP)

    if alpha == 1.0:
        coeffs = np.array([b, a], dtype=np.complex128)
    else:
        # z(z + alpha)/(1 + alpha z) = alpha z + (1 - alpha^2) sum_{k>=2} (-alpha)^(k-2) z^k
        amp = 1.0 - alpha * alpha

        def tail(k, r):
            return amp * alpha ** (k - 1) * r ** (k + 1) / (1.0 - alpha * r)

        k = DEFAULT_TRUNCATION
        while tail(k, radius) > TAIL_BUDGET and k < MAX_TRUNCATION:
            k *= 2
        radius = _shrink_radius_to_budget(lambda r, k=k: tail(k, r), radius)
        coeffs = np.zeros(k + 1, dtype=np.complex128)
        coeffs[0] = b
        coeffs[1] = a
        coeffs[2:] = unit * amp * (-alpha) ** np.arange(k - 1)
    return AnalyticFunction(
        coeffs,
        radius,
        "schur-extremal",
        known_diameter=2.0,
        family_params={"a": complex(a), "b": complex(b)},
    )


# ---------------------------------------------------------------------------
# coefficient recovery and composition
# ---------------------------------------------------------------------------


def coefficients_from_circle(samples, r: float) -> np.ndarray:
    """Recover series coefficients from equispaced samples on |z| = r.

    ``samples[j]`` must be the value at r * exp(2 pi i j / N) with N a power
    of two.  Exact (to roundoff) for polynomials of degree < N.  Entries whose
    scaling factor r**-k overflows double precision are returned as 0.
    """
    if not (0.0 < r < 1.0):
        raise DomainError(f"sampling radius must lie in (0, 1), got {r}")
    samples = np.ascontiguousarray(samples, dtype=np.complex128)
    n = samples.shape[0]
    if n < 1 or (n & (n - 1)) != 0:
        raise InvalidArgument(f"sample count must be a power of two, got {n}")
    hat = np.fft.fft(samples) / n
    k = np.arange(n)
    with np.errstate(under="ignore"):
        rk = r**k.astype(np.float64)
    out = np.zeros(n, dtype=np.complex128)
    ok = rk > 1e-280
    out[ok] = hat[ok] / rk[ok]
    return out


def _next_pow2(n: int) -> int:
    p = 1
    while p < n:
        p *= 2
    return p


def compose_moebius(
    f: AnalyticFunction, moebius: MoebiusMap, truncation: int | None = None
) -> AnalyticFunction:
    """Truncated series of f o T by sampling the composite on a circle.

    The sampling radius is the largest (up to the cap) at which T's values
    stay inside f's certified radius; sampling that would leave it raises
    DomainError.  The result's eval_radius is set from the Cauchy tail bound
    of the sampled composite.
    """
    k = truncation if truncation is not None else max(DEFAULT_TRUNCATION, 2 * (f.degree + 1))
    if k < 1:
        raise InvalidArgument("truncation must be >= 1")
    n = _next_pow2(max(4 * k, 256))

    rho = min(EVAL_RADIUS_CAP, 0.9995)
    theta = 2.0 * np.pi * np.arange(n) / n
    unit = np.exp(1j * theta)
    for _ in range(200):
        tvals = moebius(rho * unit)
        if float(np.max(np.abs(tvals))) <= f.eval_radius:
            break
        rho *= 0.99
        if rho < 1e-6:
            raise DomainError("Moebius map leaves the certified radius of f on every circle")
    else:
        raise DomainError("Moebius map leaves the certified radius of f on every circle")

    gvals = f.evaluate_many(tvals)
    coeffs = coefficients_from_circle(gvals, rho)[: k + 1]
    msup = float(np.max(np.abs(gvals)))

    def tail(rad):
        q = rad / rho
        if q >= 1.0:
            return math.inf
        return msup * q ** (k + 1) / (1.0 - q)

    radius = _shrink_radius_to_budget(tail, min(rho * 0.999, EVAL_RADIUS_CAP))
    known = f.known_diameter if moebius.is_automorphism() else None
    return AnalyticFunction(coeffs, radius, "composition", known_diameter=known)


# ---------------------------------------------------------------------------
# the growth-proof normalization g = c1 * (f o T) + c2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthNormalization:
    """Normalization data used by the sharp-growth analysis.

    ``T`` is the disk automorphism with T(x) = d and T(-x) = 0 where
    x = |d| / (1 + sqrt(1 - |d|^2)); ``g = c1 * (f o T) + c2`` then fixes
    +-x (g(x) = x, g(-x) = -x).
    """

    d: complex
    x: float
    T: MoebiusMap
    c1: complex
    c2: complex
    g: AnalyticFunction


def growth_normalization(
    f: AnalyticFunction, d: complex, truncation: int | None = None
) -> GrowthNormalization:
    if not (0.0 < abs(d) < 1.0):
        raise InvalidArgument("d must lie in the punctured unit disk")
    if abs(d) > f.eval_radius:
        raise DomainError(f"|d| = {abs(d):.6g} exceeds certified radius {f.eval_radius:.6g}")
    fd = f.evaluate(d)
    f0 = f.coefficient(0)
    if abs(fd - f0) < 1e-14:
        raise InvalidArgument("need f(d) != f(0) for the normalization")
    x = abs(d) / (1.0 + math.sqrt(1.0 - abs(d) ** 2))
    # (d/|d|)(z + x)/(1 + x z) written as eta (z - xi)/(1 - conj(xi) z)
    t_map = MoebiusMap(xi=-x, eta=d / abs(d))
    c1 = 2.0 * x / (fd - f0)
    c2 = -x * (fd + f0) / (fd - f0)
    k = truncation if truncation is not None else max(128, 2 * (f.degree + 1))
    comp = compose_moebius(f, t_map, truncation=k)
    while comp.eval_radius < min(0.9, 1.2 * x) and k < MAX_TRUNCATION:
        k *= 2
        comp = compose_moebius(f, t_map, truncation=k)
    g = comp.scaled(c1).shifted(c2)
    return GrowthNormalization(d=complex(d), x=x, T=t_map, c1=c1, c2=c2, g=g)


# ---------------------------------------------------------------------------
# certified circle maxima
# ---------------------------------------------------------------------------


class CircleMax(NamedTuple):
    value: float      # attained at ``location`` (a lower bound for the max)
    location: complex
    upper: float      # certified upper bound for the max over the circle


def max_modulus_on_circle(
    f: AnalyticFunction, r: float, scan_n: int = 1024, newton_steps: int = 3
) -> CircleMax:
    """Certified maximum of |f| over the circle |z| = r.

    Scans ``scan_n`` equispaced points, polishes the best angle with up to a
    few guarded Newton steps on d|f|^2/dtheta, and certifies an upper bound
    from the second-derivative bound of |f|^2 along the circle.
    """
    if not (0.0 <= r <= f.eval_radius * (1.0 + 1e-12) + 1e-15):
        raise DomainError(f"radius {r} outside certified radius {f.eval_radius}")
    if r == 0.0:
        v = abs(f.coefficient(0))
        return CircleMax(v, 0j, v)
    theta = 2.0 * np.pi * np.arange(scan_n) / scan_n
    z = r * np.exp(1j * theta)
    vals = np.abs(f.evaluate_many(z))
    j = int(np.argmax(vals))
    best_theta = float(theta[j])
    best_val = float(vals[j])

    fp = f.derivative()
    fpp = fp.derivative()
    mp = f.deriv_abs_bound(r)
    mpp = f.second_deriv_abs_bound(r)
    fbound = f.abs_coeff_sum(r)
    # |d^2/dtheta^2 |f|^2| <= 2 (r mp)^2 + 2 fbound (r mp + r^2 mpp)
    curv = 2.0 * (r * mp) ** 2 + 2.0 * fbound * (r * mp + r * r * mpp)
    dtheta = 2.0 * np.pi / scan_n
    upper = math.sqrt(max(best_val**2 + curv * dtheta**2 / 8.0, 0.0))

    t = best_theta
    for _ in range(newton_steps):
        zt = r * cmath.exp(1j * t)
        fv = f.evaluate(zt)
        f1 = fp.evaluate(zt)
        f2 = fpp.evaluate(zt)
        g1 = -2.0 * (fv.conjugate() * f1 * zt).imag
        g2 = 2.0 * abs(f1 * zt) ** 2 - 2.0 * (fv.conjugate() * (f2 * zt * zt + f1 * zt)).real
        if g2 >= 0.0:
            break
        step = -g1 / g2
        if abs(step) > dtheta:
            break
        t += step
        if abs(step) < 1e-15:
            break
    zt = r * cmath.exp(1j * t)
    vt = abs(f.evaluate(zt))
    if vt > best_val:
        best_val = vt
        best_theta = t
    location = r * cmath.exp(1j * best_theta)
    return CircleMax(best_val, location, max(upper, best_val))


def centered_sup_bound(f: AnalyticFunction) -> float:
    """Certified upper bound for sup over the unit disk of |f - f(0)|."""
    g = f.centered()
    route_coeff = g.abs_coeff_sum(1.0, start=1)
    r = min(f.eval_radius, EVAL_RADIUS_CAP)
    scan = max_modulus_on_circle(g, r)
    route_scan = scan.upper + g.deriv_abs_bound(1.0) * (1.0 - r)
    return min(route_coeff, route_scan)


def series_divide(numerator: np.ndarray, denominator: np.ndarray, order: int) -> np.ndarray:
    """First ``order + 1`` coefficients of numerator/denominator as series."""
    num = np.asarray(numerator, dtype=np.complex128)
    den = np.asarray(denominator, dtype=np.complex128)
    if den.size == 0 or den[0] == 0:
        raise InvalidArgument("series division needs a nonzero constant term")
    out = np.zeros(order + 1, dtype=np.complex128)
    for k in range(order + 1):
        acc = num[k] if k < num.size else 0.0
        upper = min(k, den.size - 1)
        for j in range(1, upper + 1):
            acc -= den[j] * out[k - j]
        out[k] = acc / den[0]
    return out
