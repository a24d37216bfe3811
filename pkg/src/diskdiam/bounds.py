"""Verifiers for the classical diameter-based bounds and their equality cases.

Each verifier computes both sides of one inequality with certified data and
returns a BoundReport (or a richer record holding several).  Conventions:

* normalizations always use certified *upper* bounds, so every verdict is
  sound: a reported failure means the inequality really is violated beyond
  the stated tolerances, never that an enclosure was too loose;
* ``equality`` flags trigger the associated rigidity checks (the equality
  cases of these bounds characterize small explicit families).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diameter import disk_diameter
from .errors import (
    DegenerateInputError,
    DomainError,
    InvalidArgument,
    PreconditionError,
)
from .report import bound_report, BoundReport
from .series import (
    AnalyticFunction,
    EVAL_RADIUS_CAP,
    centered_sup_bound,
    max_modulus_on_circle,
    series_divide,
)

DEFAULT_RIGIDITY_TOL = 1e-6


# ---------------------------------------------------------------------------
# max-modulus growth (the sup-normalized bounds)
# ---------------------------------------------------------------------------


def schwarz_derivative(f: AnalyticFunction, sup_bound: float | None = None, **tols) -> BoundReport:
    """|f'(0)| <= sup |f - f(0)| over the disk."""
    s = centered_sup_bound(f) if sup_bound is None else float(sup_bound)
    return bound_report(
        "schwarz-derivative", abs(f.coefficient(1)), s, tolerances={"sup_bound": s}, **tols
    )


def schwarz_growth(
    f: AnalyticFunction, z: complex, sup_bound: float | None = None, **tols
) -> BoundReport:
    """|f(z) - f(0)| <= |z| * sup |f - f(0)|."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError(f"|z| must be < 1, got {abs(z):.6g}")
    s = centered_sup_bound(f) if sup_bound is None else float(sup_bound)
    lhs = abs(f.evaluate(z) - f.coefficient(0))
    return bound_report(
        "schwarz-growth", lhs, abs(z) * s, witness=(z,), tolerances={"sup_bound": s}, **tols
    )


# ---------------------------------------------------------------------------
# the derivative bound under a diameter constraint, with rigidity
# ---------------------------------------------------------------------------


def landau_toeplitz(
    f: AnalyticFunction,
    diam_tol: float = 1e-6,
    *,
    equality_tol: float = 1e-9,
    rigidity_tol: float = DEFAULT_RIGIDITY_TOL,
    numeric_tol: float = 1e-9,
) -> BoundReport:
    """2 |f'(0)| <= Diam f(D), reported as |g'(0)| <= 1 for g = 2f/Diam.

    On equality the rigidity check verifies that g is linear (all rescaled
    coefficients beyond c_1 vanish); a flagged equality with surviving higher
    coefficients is a genuine failure.
    """
    lo, hi = disk_diameter(f, diam_tol)
    if hi <= 1e-12:
        raise DegenerateInputError("image diameter is (near) zero; the bound is vacuous")
    lhs = 2.0 * abs(f.coefficient(1)) / hi
    tolerances = {"diam_lower": lo, "diam_upper": hi, "rigidity_tol": rigidity_tol}
    rep = bound_report(
        "landau-toeplitz",
        lhs,
        1.0,
        tolerances=tolerances,
        equality_tol=equality_tol,
        numeric_tol=numeric_tol,
    )
    if rep.equality and rep.verdict == "pass":
        scale = 2.0 / hi
        residue = scale * sum(abs(f.coefficient(k)) for k in range(2, f.degree + 1))
        tolerances["rigidity_sum"] = residue
        verdict = "pass" if residue <= rigidity_tol else "fail"
        rep = bound_report(
            "landau-toeplitz",
            lhs,
            1.0,
            tolerances=tolerances,
            equality_tol=equality_tol,
            numeric_tol=numeric_tol,
            verdict=verdict,
        )
    return rep


# ---------------------------------------------------------------------------
# sharp growth bound and its pseudo-hyperbolic symmetric form
# ---------------------------------------------------------------------------


def _diam_or_error(f: AnalyticFunction, diam_tol: float) -> tuple[float, float]:
    lo, hi = disk_diameter(f, diam_tol)
    if lo > 2.0 + diam_tol:
        raise PreconditionError(
            f"image diameter is at least {lo:.6g} > 2 + {diam_tol:g}"
        )
    return lo, hi


def predicted_equality_point(f: AnalyticFunction) -> complex | None:
    """The unique non-origin equality point 2b/(1+|b|^2) of the sharp bound."""
    if f.provenance_tag == "extremal-lft" and f.family_params:
        b = complex(f.family_params["b"])
        return 2.0 * b / (1.0 + abs(b) ** 2)
    return None


def growth_bound(
    f: AnalyticFunction,
    z: complex,
    *,
    diam_tol: float = 1e-6,
    equality_tol: float = 1e-9,
    numeric_tol: float = 1e-9,
    point_tol: float = 1e-4,
) -> BoundReport:
    """|f(z) - f(0)| <= (Diam/2) * |z| * 2 / (1 + sqrt(1 - |z|^2)).

    When the input is a constructed rotated-automorphism extremal, the flag
    is cross-checked against the predicted unique equality point.
    """
    z = complex(z)
    if not (0.0 < abs(z) < 1.0):
        raise InvalidArgument("z must lie in the punctured unit disk")
    if abs(z) > f.eval_radius * (1.0 + 1e-12):
        raise DomainError(f"|z| exceeds certified radius {f.eval_radius}")
    lo, hi = _diam_or_error(f, diam_tol)
    lhs = abs(f.evaluate(z) - f.coefficient(0))
    rhs = (hi / 2.0) * abs(z) * 2.0 / (1.0 + math.sqrt(1.0 - abs(z) ** 2))
    tolerances = {"diam_lower": lo, "diam_upper": hi}
    witness = [z]
    z_eq = predicted_equality_point(f)
    verdict = None
    if z_eq is not None:
        witness.append(z_eq)
        tolerances["equality_point_distance"] = abs(z - z_eq)
        slack = rhs - lhs
        if slack <= equality_tol and abs(z - z_eq) > point_tol:
            verdict = "fail"  # equality away from the unique predicted point
        if abs(z - z_eq) <= 1e-12 and slack > equality_tol:
            verdict = "fail"  # predicted equality point missed
    return bound_report(
        "growth",
        lhs,
        rhs,
        witness=witness,
        tolerances=tolerances,
        equality_tol=equality_tol,
        numeric_tol=numeric_tol,
        verdict=verdict,
    )


def growth_bound_symmetric(
    f: AnalyticFunction,
    z: complex,
    w: complex,
    *,
    diam_tol: float = 1e-6,
    equality_tol: float = 1e-9,
    numeric_tol: float = 1e-9,
) -> BoundReport:
    """|f(z)-f(w)| / Diam <= |z-w| / (|1 - conj(w) z| + sqrt((1-|z|^2)(1-|w|^2))).

    Symmetric in (z, w); w = 0 reduces to the sharp growth bound.
    """
    z, w = complex(z), complex(w)
    if z == w:
        raise InvalidArgument("z and w must be distinct")
    for p in (z, w):
        if abs(p) >= 1.0:
            raise InvalidArgument("points must lie in the unit disk")
        if abs(p) > f.eval_radius * (1.0 + 1e-12):
            raise DomainError(f"|point| exceeds certified radius {f.eval_radius}")
    lo, hi = _diam_or_error(f, diam_tol)
    lhs = abs(f.evaluate(z) - f.evaluate(w)) / hi
    denom = abs(1.0 - w.conjugate() * z) + math.sqrt(
        (1.0 - abs(z) ** 2) * (1.0 - abs(w) ** 2)
    )
    rhs = abs(z - w) / denom
    return bound_report(
        "growth-symmetric",
        lhs,
        rhs,
        witness=(z, w),
        tolerances={"diam_lower": lo, "diam_upper": hi},
        equality_tol=equality_tol,
        numeric_tol=numeric_tol,
    )


# ---------------------------------------------------------------------------
# higher-derivative (coefficient) bound with its Parseval identity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoukkaReport:
    """Coefficient bound 2|c_n| <= Diam plus the mean-square identity data."""

    n: int
    c_n: complex
    diam: float                      # enclosure midpoint
    parseval_lhs: float              # sum |c_k|^2 |1 - e^{i pi k / n}|^2 r^{2k}
    integral_rhs: float              # mean of |f(z) - f(z e^{i pi/n})|^2 on rT
    h_coeffs: np.ndarray             # c_k (1 - e^{i pi k / n})
    bound: BoundReport
    equality_form: str | None        # "monomial" when rigidity confirms f(0)+c z^n


def poukka(
    f: AnalyticFunction,
    n: int,
    r: float = 0.9,
    *,
    quadrature_n: int = 1 << 12,
    diam_tol: float = 1e-6,
    equality_tol: float = 1e-9,
    quad_tol: float = 1e-8,
    rigidity_tol: float = DEFAULT_RIGIDITY_TOL,
    numeric_tol: float = 1e-9,
) -> PoukkaReport:
    """2 |c_n| <= Diam f(D), checked together with the Parseval identity.

    The identity: the weighted coefficient sum at radius r equals the mean of
    |f(z) - f(z e^{i pi / n})|^2 over |z| = r, and both are <= Diam^2.
    """
    if not (1 <= n <= f.degree):
        raise InvalidArgument(f"n must lie in 1..{f.degree}, got {n}")
    if not (0.0 < r <= f.eval_radius * (1.0 + 1e-12)):
        raise DomainError(f"radius {r} outside certified radius {f.eval_radius}")
    if quadrature_n < 2 or quadrature_n & (quadrature_n - 1):
        raise InvalidArgument("quadrature_n must be a power of two")

    k = np.arange(f.degree + 1)
    weights = 1.0 - np.exp(1j * np.pi * k / n)
    h_coeffs = f.coefficients * weights
    parseval_lhs = float(np.sum(np.abs(h_coeffs[1:]) ** 2 * r ** (2.0 * k[1:])))

    theta = 2.0 * np.pi * np.arange(quadrature_n) / quadrature_n
    z = r * np.exp(1j * theta)
    hv = f.evaluate_many(z) - f.evaluate_many(z * np.exp(1j * np.pi / n))
    integral_rhs = float(np.mean(np.abs(hv) ** 2))

    lo, hi = disk_diameter(f, diam_tol)
    c_n = f.coefficient(n)
    tolerances = {
        "r": r,
        "n": float(n),
        "diam_lower": lo,
        "diam_upper": hi,
        "quad_tol": quad_tol,
        "parseval_residual": abs(parseval_lhs - integral_rhs),
    }
    verdict = None
    if abs(parseval_lhs - integral_rhs) > quad_tol:
        verdict = "fail"
    if integral_rhs > hi**2 + math.sqrt(quad_tol):
        verdict = "fail"
    rep = bound_report(
        "poukka",
        2.0 * abs(c_n),
        hi,
        tolerances=tolerances,
        equality_tol=equality_tol,
        numeric_tol=numeric_tol,
        verdict=verdict,
    )
    equality_form = None
    if rep.equality and rep.verdict == "pass":
        others = sum(
            abs(f.coefficient(j)) for j in range(1, f.degree + 1) if j != n
        )
        if others <= rigidity_tol * max(abs(c_n), 1e-300):
            equality_form = "monomial"
        else:
            rep = bound_report(
                "poukka",
                2.0 * abs(c_n),
                hi,
                tolerances={**tolerances, "rigidity_sum": others},
                equality_tol=equality_tol,
                numeric_tol=numeric_tol,
                verdict="fail",
            )
    return PoukkaReport(
        n=n,
        c_n=c_n,
        diam=0.5 * (lo + hi),
        parseval_lhs=parseval_lhs,
        integral_rhs=integral_rhs,
        h_coeffs=h_coeffs,
        bound=rep,
        equality_form=equality_form,
    )


# ---------------------------------------------------------------------------
# the linearization-residual bound via the Schur step
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchurDecomposition:
    """g = (f - f(0))/z, a = g(0), and h with (g - a)/(1 - conj(a) g) = z h.

    ``residual_curve`` holds one report per requested radius comparing the
    linearization residual max |f - f(0) - a z| on |z| = r against
    (1 - |a|^2) r^2 / (1 - |a| r).
    """

    a: complex
    g: AnalyticFunction
    h: AnalyticFunction
    residual_curve: tuple[BoundReport, ...]
    recon_residual: float


def schur_decompose(
    f: AnalyticFunction,
    radii=(0.3, 0.5, 0.7),
    *,
    sup_tol: float = 1e-6,
    equality_tol: float = 1e-9,
    numeric_tol: float = 1e-9,
    scan_n: int = 1 << 10,
) -> SchurDecomposition:
    """Factor the normalized difference quotient and bound the residual.

    Requires sup |f - f(0)| <= 1 (+ sup_tol) over the disk; callers normalize.
    |a| = 1 short-circuits: the sup bound then forces f linear and the
    residual vanishes identically.
    """
    centered = f.centered()
    scan = max_modulus_on_circle(centered, min(f.eval_radius, EVAL_RADIUS_CAP), scan_n=scan_n)
    if scan.value > 1.0 + sup_tol:
        raise PreconditionError(
            f"sup |f - f(0)| is at least {scan.value:.6g} > 1 + {sup_tol:g}"
        )
    a = f.coefficient(1)
    if abs(a) > 1.0 + sup_tol:
        raise PreconditionError(f"|f'(0)| = {abs(a):.6g} > 1 + {sup_tol:g}")

    g_coeffs = f.coefficients[1:].copy() if f.degree >= 1 else np.zeros(1, complex)
    g = AnalyticFunction(g_coeffs, f.eval_radius, f.provenance_tag)

    linear = abs(a) >= 1.0 - 1e-12
    if linear:
        h = AnalyticFunction(np.zeros(1, dtype=np.complex128), f.eval_radius)
    else:
        # (g - a)/(1 - conj(a) g) is a rational function of the polynomial g;
        # expand it well past deg(g) so the truncated h reconstructs f
        order = max(64, 4 * g_coeffs.size)
        num = g_coeffs - np.concatenate(([a], np.zeros(g_coeffs.size - 1, complex)))
        den = np.concatenate(([1.0 - abs(a) ** 2 + 0j], -np.conj(a) * g_coeffs[1:]))
        phi = series_divide(num, den, order)
        h = AnalyticFunction(
            phi[1:] if phi.size > 1 else np.zeros(1, complex), f.eval_radius
        )

    residual = f.minus_linearization()  # f - f(0) - a z, since a = c_1

    reports = []
    for r in radii:
        r = float(r)
        if not (0.0 < r <= f.eval_radius * (1.0 + 1e-12)):
            raise DomainError(f"radius {r} outside certified radius {f.eval_radius}")
        mx = max_modulus_on_circle(residual, r, scan_n=scan_n)
        rhs = (1.0 - abs(a) ** 2) * r * r / (1.0 - abs(a) * r)
        reports.append(
            bound_report(
                "schur",
                mx.value,
                rhs,
                witness=(mx.location,),
                tolerances={"r": r, "scan_upper": mx.upper},
                equality_tol=equality_tol,
                numeric_tol=numeric_tol,
            )
        )

    # reconstruction f(z) = f(0) + z (a + z h) / (1 + conj(a) z h) at samples
    zs = 0.5 * f.eval_radius * np.exp(2j * np.pi * np.arange(32) / 32)
    hv = h.evaluate_many(zs)
    recon = f.coefficient(0) + zs * (a + zs * hv) / (1.0 + np.conj(a) * zs * hv)
    recon_residual = float(np.max(np.abs(recon - f.evaluate_many(zs))))
    return SchurDecomposition(
        a=a, g=g, h=h, residual_curve=tuple(reports), recon_residual=recon_residual
    )


# ---------------------------------------------------------------------------
# boundary fixed-point lemma
# ---------------------------------------------------------------------------


def fixed_point_lemma_check(
    g: AnalyticFunction,
    w: complex,
    tol: float = 1e-6,
    *,
    lemma_tol: float = 1e-10,
    scan_n: int = 1 << 10,
) -> BoundReport:
    """If g fixes w and max |g| over |z| = |w| equals |w|, then Im g'(w) = 0.

    Hypotheses are verified numerically first; when they fail beyond ``tol``
    the verdict is ``hypothesis-not-met`` rather than a lemma failure.
    """
    w = complex(w)
    r = abs(w)
    if not (0.0 < r < 1.0):
        raise InvalidArgument("w must lie in the punctured unit disk")
    if r > g.eval_radius * (1.0 + 1e-12):
        raise DomainError(f"|w| exceeds certified radius {g.eval_radius}")
    gw = g.evaluate(w)
    fix_gap = abs(gw - w)
    mx = max_modulus_on_circle(g, r, scan_n=scan_n)
    excess = mx.value - r
    attain_gap = mx.value - abs(gw)
    hyp_slack = max(fix_gap, excess, attain_gap, 0.0)
    lhs = abs(g.derivative_at(w).imag)
    tolerances = {
        "fix_gap": fix_gap,
        "max_excess": excess,
        "attain_gap": attain_gap,
        "hypothesis_tol": tol,
    }
    if hyp_slack > tol:
        return bound_report(
            "fixed-point-lemma",
            lhs,
            lemma_tol,
            witness=(w,),
            tolerances=tolerances,
            verdict="hypothesis-not-met",
        )
    rhs = lemma_tol + 100.0 * hyp_slack
    return bound_report(
        "fixed-point-lemma", lhs, rhs, witness=(w,), tolerances=tolerances
    )


# ---------------------------------------------------------------------------
# extremal-family classifier
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassifierResult:
    label: str                    # "linear" | "extremal-lft" | "non-extremal"
    params: dict | None
    residual: float
    note: str = ""


def equality_classifier(f: AnalyticFunction, tol: float = 1e-8) -> ClassifierResult:
    """Recognize the equality families: linear maps and rotated automorphisms.

    The automorphism fit recovers (a, b, c) from c_0..c_2 and validates every
    remaining coefficient; anything ambiguous falls back to "non-extremal".
    """
    c0, c1, c2 = (f.coefficient(k) for k in range(3))
    tail = max((abs(f.coefficient(k)) for k in range(2, f.degree + 1)), default=0.0)
    if tail <= tol * max(abs(c1), 1.0):
        return ClassifierResult(
            "linear", {"a": c0, "c": c1}, tail, note="all higher coefficients vanish"
        )
    if abs(c1) <= tol or abs(c2) <= tol:
        return ClassifierResult("non-extremal", None, tail, note="degenerate low-order data")
    b = (c2 / c1).conjugate()
    if not (0.0 < abs(b) < 1.0):
        return ClassifierResult("non-extremal", None, tail, note="fitted b outside the disk")
    c = c1 / (1.0 - abs(b) ** 2)
    a = c0 + c * b
    k = np.arange(1, f.degree + 1)
    predicted = c * (1.0 - abs(b) ** 2) * np.conj(b) ** (k - 1)
    residual = float(np.max(np.abs(f.coefficients[1:] - predicted)))
    # the true map has a geometric tail beyond the stored truncation
    tail_beyond = abs(c) * (1.0 - abs(b) ** 2) * abs(b) ** f.degree / (1.0 - abs(b))
    residual = max(residual, tail_beyond)
    scale = max(abs(c), 1.0)
    if residual <= tol * scale and abs(abs(c) - 1.0) <= 1e-6:
        return ClassifierResult("extremal-lft", {"a": a, "b": b, "c": c}, residual)
    note = "coefficient residual too large" if residual > tol * scale else "|c| != 1"
    return ClassifierResult("non-extremal", None, residual, note=note)
