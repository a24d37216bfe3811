"""Density profiles, the minimum-density bound, and domain monotonicity."""

import numpy as np
import pytest

from diskdiam.bounds import equality_classifier
from diskdiam.diameter import normalize_to_diameter
from diskdiam.errors import PreconditionError, UnivalenceError
from diskdiam.explore import random_univalent_polynomial
from diskdiam.hyperbolic import (
    DomainMap,
    density_at,
    density_bound_report,
    min_density,
    monotonicity_check,
    univalence_spot_check,
)
from diskdiam.series import (
    MoebiusMap,
    compose_moebius,
    from_coefficients,
    identity,
    make_extremal_lft,
    monomial,
)

DISK = DomainMap(identity(), "unit disk")


def test_density_at_disk_center():
    assert density_at(DISK, 0) == pytest.approx(1.0)


def test_density_at_disk_interior():
    assert density_at(DISK, 0.5) == pytest.approx(4.0 / 3.0)


def test_density_scaling():
    assert density_at(DomainMap(from_coefficients([0, 2.0])), 0) == pytest.approx(0.5)


def test_density_univalence_violation():
    with pytest.raises(UnivalenceError):
        density_at(DomainMap(monomial(2)), 0)  # f'(0) = 0


def test_min_density_identity():
    prof = min_density(DISK)
    assert prof.Lambda == pytest.approx(1.0, abs=1e-9)
    assert abs(prof.tau) < 1e-6
    assert prof.R_h == pytest.approx(1.0, abs=1e-6)


def test_min_density_scaled_disk():
    prof = min_density(DomainMap(from_coefficients([0, 0.5])))
    assert prof.Lambda == pytest.approx(2.0, abs=1e-9)
    assert prof.R_h == pytest.approx(0.5, abs=1e-6)


def test_min_density_quadratic_strict_margin():
    f = normalize_to_diameter(from_coefficients([0, 1, 0.2]), 2.0)
    prof = min_density(DomainMap(f))
    assert prof.Lambda >= 1.0 - 1e-9
    assert prof.Lambda > 1.0 + 1e-4  # image is not a round disk
    # double-resolution grid oracle agrees
    prof2 = min_density(DomainMap(f), 48)
    assert abs(prof.Lambda - prof2.Lambda) < 1e-6


@pytest.mark.parametrize("scale", [0.5, 2.0, 3.0])
def test_min_density_scaling_law(scale):
    f = from_coefficients([0, 1, 0.2])
    lam = min_density(DomainMap(f)).Lambda
    lam_scaled = min_density(DomainMap(f.scaled(scale))).Lambda
    assert lam_scaled == pytest.approx(lam / scale, abs=1e-8)


def test_min_density_conformal_invariance():
    f = from_coefficients([0, 0.9, 0.05])
    t = MoebiusMap(xi=0.3, eta=np.exp(0.5j))
    comp = compose_moebius(f, t, truncation=256)
    lam_a = min_density(DomainMap(f), 32).Lambda
    lam_b = min_density(DomainMap(comp), 32).Lambda
    assert abs(lam_a - lam_b) < 1e-6


def test_monotonicity_scaled_disk_inside_disk():
    half = DomainMap(from_coefficients([0, 0.5]))
    rep = monotonicity_check(half, DISK, from_coefficients([0, 0.5]))
    assert rep.verdict == "pass"
    assert rep.lhs < 0  # strictly larger density inside


def test_monotonicity_equal_domains():
    rep = monotonicity_check(DISK, DISK, identity())
    assert rep.verdict == "pass"
    assert abs(rep.lhs) < 1e-12


def test_monotonicity_generic_composition():
    outer = DomainMap(from_coefficients([0, 1, 0.1]))
    embed = from_coefficients([0, 0.5])
    inner_series = np.zeros(3, dtype=complex)
    inner_series[1] = 0.5
    inner_series[2] = 0.1 * 0.25
    inner = DomainMap(from_coefficients(inner_series))  # outer(z/2)
    rep = monotonicity_check(inner, outer, embed)
    assert rep.verdict == "pass"


def test_monotonicity_rejects_wrong_embedding():
    with pytest.raises(PreconditionError):
        monotonicity_check(DISK, DISK, from_coefficients([0, 0.5]))


def test_univalence_spot_check_accepts_disk():
    assert univalence_spot_check(DISK)


def test_univalence_spot_check_flags_collapsing_map():
    tiny = DomainMap(from_coefficients([0, 1e-12]))
    assert not univalence_spot_check(tiny)


def test_density_bound_random_univalent_family():
    rng = np.random.default_rng(2024)
    for _ in range(20):
        f = normalize_to_diameter(random_univalent_polynomial(rng), 2.0, tol=1e-4)
        dom = DomainMap(f)
        assert univalence_spot_check(dom)
        rep = density_bound_report(dom, diam_tol=1e-4)
        assert rep.verdict == "pass"
        assert rep.rhs >= 1.0 - 1e-6  # Lambda


def test_near_equality_is_disk_like():
    # Lambda close to 1 only for round images: automorphism + translation
    for f in (identity(), make_extremal_lft(0.3, 0.5, 1)):
        g = normalize_to_diameter(f, 2.0)
        prof = min_density(DomainMap(g))
        if prof.Lambda <= 1.0 + 1e-3:
            assert equality_classifier(g).label in ("linear", "extremal-lft")
