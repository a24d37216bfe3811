"""Series representation: evaluation, differentiation, constructors, recovery."""

import numpy as np
import pytest

from diskdiam.errors import DomainError, InvalidArgument
from diskdiam.series import (
    AnalyticFunction,
    MoebiusMap,
    coefficients_from_circle,
    compose_moebius,
    from_coefficients,
    growth_normalization,
    identity,
    make_extremal_lft,
    make_schur_extremal,
    max_modulus_on_circle,
    monomial,
    series_divide,
)


def moebius_rational(b):
    """Closed-form (z - b)/(1 - conj(b) z) used as an independent oracle."""
    return lambda z: (z - b) / (1.0 - np.conj(b) * z)


# -- evaluation ---------------------------------------------------------


def test_evaluate_identity():
    assert identity()(0.3 + 0.4j) == pytest.approx(0.3 + 0.4j)


def test_evaluate_monomial():
    assert monomial(2)(0.5) == pytest.approx(0.25)


def test_evaluate_moebius_closed_form():
    f = MoebiusMap(xi=0.5, eta=1.0).to_series(truncation=60)
    assert f(0.8) == pytest.approx(moebius_rational(0.5)(0.8), abs=1e-12)


def test_evaluate_outside_radius_raises():
    f = from_coefficients([0, 1], eval_radius=0.5)
    with pytest.raises(DomainError):
        f(0.9)


def test_evaluate_matches_power_sum_at_random_points():
    rng = np.random.default_rng(3)
    for _ in range(5):
        coeffs = rng.normal(size=9) + 1j * rng.normal(size=9)
        f = from_coefficients(coeffs)
        z = 0.9 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
        oracle = sum(coeffs[k] * z**k for k in range(9))
        np.testing.assert_allclose(f.evaluate_many(z), oracle, atol=1e-12)


def test_coefficients_immutable():
    f = identity()
    with pytest.raises(ValueError):
        f.coefficients[0] = 1.0


# -- derivative ---------------------------------------------------------


def test_derivative_monomial():
    assert monomial(2).derivative_at(0.5) == pytest.approx(1.0)


def test_derivative_identity():
    assert identity().derivative_at(0.77j) == pytest.approx(1.0)


def test_derivative_moebius_at_zero():
    # closed form (1 - |b|^2)/(1 - conj(b) z)^2 at z = 0
    f = MoebiusMap(xi=0.5, eta=1.0).to_series()
    assert f.derivative_at(0.0) == pytest.approx(0.75, abs=1e-14)


def test_derivative_at_zero_is_c1_exactly():
    f = from_coefficients([0.3, 0.25 + 0.125j, 0.7])
    assert f.derivative_at(0.0) == (0.25 + 0.125j)


def test_derivative_matches_central_differences():
    rng = np.random.default_rng(11)
    coeffs = rng.normal(size=7) + 1j * rng.normal(size=7)
    f = from_coefficients(coeffs)
    h = 1e-6
    for z in (0.2 + 0.1j, -0.4, 0.3j):
        fd = (f(z + h) - f(z - h)) / (2 * h)
        exact = f.derivative_at(z)
        assert abs(fd - exact) / abs(exact) < 1e-6


# -- odd/even decomposition ---------------------------------------------


def test_odd_part_examples():
    f = from_coefficients([1, 1, 1])  # 1 + z + z^2
    np.testing.assert_allclose(f.odd_part().coefficients, [0, 1, 0])
    g = monomial(3)
    np.testing.assert_allclose(g.odd_part().coefficients, g.coefficients)


def test_odd_part_moebius_sampling_oracle():
    f = MoebiusMap(xi=0.5, eta=1.0).to_series(truncation=60)
    fo = f.odd_part()
    z = 0.5 * np.exp(2j * np.pi * np.arange(32) / 32)
    oracle = (f.evaluate_many(z) - f.evaluate_many(-z)) / 2.0
    np.testing.assert_allclose(fo.evaluate_many(z), oracle, atol=1e-10)
    assert fo(0) == 0
    assert fo.derivative_at(0) == f.coefficient(1)


def test_odd_plus_even_reconstructs():
    rng = np.random.default_rng(5)
    f = from_coefficients(rng.normal(size=9) + 1j * rng.normal(size=9))
    z = 0.8 * np.exp(2j * np.pi * np.arange(16) / 16)
    total = f.odd_part().evaluate_many(z) + f.even_part().evaluate_many(z)
    np.testing.assert_allclose(total, f.evaluate_many(z), atol=1e-12)


# -- coefficient recovery -----------------------------------------------


def test_circle_recovery_polynomial_exact():
    f = from_coefficients([1, 2, 3])
    z = 0.9 * np.exp(2j * np.pi * np.arange(16) / 16)
    hat = coefficients_from_circle(f.evaluate_many(z), 0.9)
    np.testing.assert_allclose(hat[:3], [1, 2, 3], atol=1e-12)
    np.testing.assert_allclose(hat[3:], 0, atol=1e-12)


def test_circle_recovery_identity():
    z = 0.9 * np.exp(2j * np.pi * np.arange(16) / 16)
    hat = coefficients_from_circle(z, 0.9)
    np.testing.assert_allclose(hat[1], 1.0, atol=1e-13)
    assert abs(hat[0]) < 1e-13 and abs(hat[2]) < 1e-12


def test_circle_recovery_moebius_c1():
    f = MoebiusMap(xi=0.5, eta=1.0).to_series()
    z = 0.9 * np.exp(2j * np.pi * np.arange(256) / 256)
    hat = coefficients_from_circle(f.evaluate_many(z), 0.9)
    assert abs(hat[1] - 0.75) < 1e-10


def test_circle_recovery_roundtrip_random_polynomials():
    rng = np.random.default_rng(9)
    coeffs = rng.normal(size=10) + 1j * rng.normal(size=10)
    f = from_coefficients(coeffs)
    z = 0.7 * np.exp(2j * np.pi * np.arange(64) / 64)
    hat = coefficients_from_circle(f.evaluate_many(z), 0.7)
    np.testing.assert_allclose(hat[:10], coeffs, atol=1e-12)


def test_circle_recovery_errors():
    samples = np.ones(16, dtype=complex)
    with pytest.raises(DomainError):
        coefficients_from_circle(samples, 1.0)
    with pytest.raises(DomainError):
        coefficients_from_circle(samples, -0.5)
    with pytest.raises(InvalidArgument):
        coefficients_from_circle(np.ones(12, dtype=complex), 0.9)


# -- Moebius maps ---------------------------------------------------------


def test_moebius_validation():
    with pytest.raises(InvalidArgument):
        MoebiusMap(xi=1.2, eta=1.0)
    with pytest.raises(InvalidArgument):
        MoebiusMap(xi=0.2, eta=1.5)


def test_moebius_automorphism_maps_circle_to_circle():
    t = MoebiusMap(xi=0.3 - 0.2j, eta=np.exp(0.7j))
    z = np.exp(2j * np.pi * np.arange(64) / 64)
    np.testing.assert_allclose(np.abs(t(z)), 1.0, atol=1e-12)


def test_moebius_series_tail_certified():
    t = MoebiusMap(xi=0.9, eta=1.0)
    f = t.to_series()
    z = f.eval_radius * np.exp(2j * np.pi * np.arange(128) / 128)
    np.testing.assert_allclose(f.evaluate_many(z), t(z), atol=1e-11)


def test_moebius_explicit_truncation_shrinks_radius():
    f = MoebiusMap(xi=0.9, eta=1.0).to_series(truncation=20)
    assert f.degree == 20
    assert f.eval_radius < 0.9


# -- constructors for the extremal families ------------------------------


def test_make_extremal_lft_values():
    f = make_extremal_lft(0, 0.5, 1)
    assert f(0.8) == pytest.approx(0.5, abs=1e-12)
    assert f(0) == pytest.approx(-0.5, abs=1e-12)
    assert f.derivative_at(0) == pytest.approx(0.75, abs=1e-13)
    assert f.known_diameter == 2.0


def test_make_extremal_lft_validation():
    with pytest.raises(InvalidArgument):
        make_extremal_lft(0, 0, 1)
    with pytest.raises(InvalidArgument):
        make_extremal_lft(0, 1.1, 1)
    with pytest.raises(InvalidArgument):
        make_extremal_lft(0, 0.5, 2.0)


def test_make_schur_extremal_identity_oracle():
    # f(z) - a z should equal (1-|a|^2) z^2 / (1 + |a| z) for a = 0.5
    f = make_schur_extremal(0.5)
    z = 0.5 * np.exp(2j * np.pi * np.arange(32) / 32)
    lhs = f.evaluate_many(z) - 0.5 * z
    rhs = 0.75 * z**2 / (1 + 0.5 * z)
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)
    assert f.derivative_at(0) == pytest.approx(0.5)
    assert f.known_diameter == 2.0


def test_make_schur_extremal_unit_modulus_degenerates_to_rotation():
    f = make_schur_extremal(1.0)
    np.testing.assert_allclose(f.coefficients, [0, 1])


def test_make_schur_extremal_validation():
    with pytest.raises(InvalidArgument):
        make_schur_extremal(0.0)
    with pytest.raises(InvalidArgument):
        make_schur_extremal(1.5)


# -- composition ----------------------------------------------------------


def test_compose_with_identity_map():
    f = identity()
    comp = compose_moebius(f, MoebiusMap(xi=0.0, eta=1.0), truncation=8)
    np.testing.assert_allclose(comp.coefficients[:2], [0, 1], atol=1e-13)
    np.testing.assert_allclose(comp.coefficients[2:], 0, atol=1e-13)


def test_compose_pointwise_oracle():
    t = MoebiusMap(xi=-0.5, eta=1.0)  # T(z) = (z + 0.5)/(1 + 0.5 z)
    comp = compose_moebius(monomial(2), t)
    assert comp(0) == pytest.approx(0.25, abs=1e-12)
    z = 0.4 * np.exp(2j * np.pi * np.arange(16) / 16)
    np.testing.assert_allclose(comp.evaluate_many(z), t(z) ** 2, atol=1e-11)


def test_compose_constant_coefficient():
    comp = compose_moebius(identity(), MoebiusMap(xi=0.5, eta=1.0))
    assert comp.coefficient(0) == pytest.approx(-0.5, abs=1e-12)


def test_compose_outside_radius_raises():
    f = from_coefficients([0, 1], eval_radius=0.3)
    with pytest.raises(DomainError):
        compose_moebius(f, MoebiusMap(xi=0.9, eta=1.0))


def test_compose_preserves_known_diameter_for_automorphisms():
    f = make_extremal_lft(0, 0.5, 1)
    comp = compose_moebius(f, MoebiusMap(xi=0.2, eta=1.0))
    assert comp.known_diameter == 2.0
    scaled = compose_moebius(f, MoebiusMap(xi=0.2, eta=1.0, scale=2.0))
    assert scaled.known_diameter is None


# -- growth normalization --------------------------------------------------


@pytest.mark.parametrize("d", [0.3 + 0.2j, -0.55, 0.7j])
def test_growth_normalization_invariants(d):
    f = make_extremal_lft(1 + 1j, 0.3, np.exp(0.4j))
    gn = growth_normalization(f, d)
    assert abs(gn.T(gn.x) - d) < 1e-12
    assert abs(gn.T(-gn.x)) < 1e-12
    assert abs(gn.g(gn.x) - gn.x) < 1e-9
    assert abs(gn.g(-gn.x) + gn.x) < 1e-9


def test_growth_normalization_rejects_bad_pivot():
    with pytest.raises(InvalidArgument):
        growth_normalization(identity(), 0.0)
    f = from_coefficients([2.0, 0, 1])  # even: f(d) = f(0) at d -> 0 only; use f(d)=f(0)
    with pytest.raises(InvalidArgument):
        growth_normalization(from_coefficients([5.0]), 0.5)


# -- circle maxima ----------------------------------------------------------


def test_max_modulus_on_circle_against_dense_scan():
    rng = np.random.default_rng(17)
    for _ in range(5):
        f = from_coefficients(rng.normal(size=7) + 1j * rng.normal(size=7))
        r = 0.6
        res = max_modulus_on_circle(f, r)
        z = r * np.exp(2j * np.pi * np.arange(1 << 14) / (1 << 14))
        dense = float(np.max(np.abs(f.evaluate_many(z))))
        # the polished value is a genuine evaluation, so it may exceed the
        # dense grid max but never the certified upper bound
        assert res.value >= dense - 1e-12
        assert res.upper >= dense - 1e-12
        assert res.value <= res.upper
        assert abs(res.value - dense) < 1e-6
        assert abs(abs(f.evaluate(res.location)) - res.value) < 1e-12


def test_series_divide_geometric():
    # 1 / (1 - z) = sum z^k
    out = series_divide(np.array([1.0 + 0j]), np.array([1.0, -1.0], dtype=complex), 5)
    np.testing.assert_allclose(out, np.ones(6), atol=1e-14)
