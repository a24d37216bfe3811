"""Backend parity and correctness of the hot kernels."""

import numpy as np
import pytest

from diskdiam import _kernels
from diskdiam._kernels import _fallback

HAVE_COMPILED = "compiled" in _kernels.available_backends()


def brute_diameter(xs, ys):
    pts = xs + 1j * ys
    n = len(pts)
    best = (-1.0, 0, 0)
    for i in range(n):
        for j in range(i, n):
            d2 = abs(pts[i] - pts[j]) ** 2
            if d2 > best[0]:
                best = (d2, i, j)
    return best


def point_sets():
    rng = np.random.default_rng(42)
    yield np.array([0.0]), np.array([0.0])
    yield np.array([0.0, 3.0]), np.array([0.0, 4.0])
    yield np.array([0.0, 1.0, 2.0]), np.array([0.0, 0.0, 0.0])  # collinear
    yield np.zeros(10), np.zeros(10)  # all duplicates
    t = np.linspace(0, 2 * np.pi, 128, endpoint=False)
    yield np.cos(t), np.sin(t)  # circle, many ties
    for n in (5, 33, 200, 1000):
        yield rng.normal(size=n), rng.normal(size=n)
    xs = rng.normal(size=300)
    yield xs, 2.0 * xs + 1.0  # big collinear set (degenerate hull)


POINT_SETS = list(point_sets())


@pytest.mark.parametrize("case", range(len(POINT_SETS)))
def test_fallback_hull_matches_brute_force(case):
    xs, ys = POINT_SETS[case]
    d2, i, j = _fallback.hull_diameter(xs, ys)
    bd2, _, _ = brute_diameter(xs, ys)
    assert d2 == pytest.approx(bd2, abs=1e-12)
    assert (xs[i] - xs[j]) ** 2 + (ys[i] - ys[j]) ** 2 == pytest.approx(d2, abs=1e-12)


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernels not built")
def test_compiled_hull_matches_fallback():
    for xs, ys in point_sets():
        a = _fallback.hull_diameter(xs, ys)
        b = _kernels._IMPLS["compiled"].hull_diameter(xs, ys)
        assert a[0] == b[0]
        da = (xs[a[1]] - xs[a[2]]) ** 2 + (ys[a[1]] - ys[a[2]]) ** 2
        db = (xs[b[1]] - xs[b[2]]) ** 2 + (ys[b[1]] - ys[b[2]]) ** 2
        assert da == pytest.approx(db, abs=1e-14)


def test_horner_matches_power_sum():
    rng = np.random.default_rng(7)
    coeffs = rng.normal(size=12) + 1j * rng.normal(size=12)
    z = 0.8 * (rng.normal(size=50) + 1j * rng.normal(size=50))
    expected = sum(coeffs[k] * z**k for k in range(12))
    for name in _kernels.available_backends():
        got = _kernels._IMPLS[name].horner_eval(coeffs, z)
        np.testing.assert_allclose(got, expected, atol=1e-12)


def test_forced_backend_switches():
    assert _kernels.active_backend() in _kernels.available_backends()
    with _kernels.forced_backend("fallback"):
        assert _kernels.active_backend() == "fallback"
        out = _kernels.horner_eval(np.array([1.0, 2.0]), np.array([0.5 + 0j]))
        assert out[0] == pytest.approx(2.0)
    assert _kernels.active_backend() in _kernels.available_backends()


def test_hull_rejects_empty():
    with pytest.raises(ValueError):
        _fallback.hull_diameter(np.array([]), np.array([]))
