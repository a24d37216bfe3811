from pathlib import Path

import numpy as np
import pytest

from diskdiam.series import from_coefficients

SPECS_DIR = Path(__file__).resolve().parents[1] / "specs"

FAMILY_SEED = 20250810


def random_polynomial_family(count=50, degree=8, seed=FAMILY_SEED):
    """Seeded polynomials with coefficients in the unit square."""
    rng = np.random.default_rng(seed)
    return [
        from_coefficients(rng.random(degree + 1) + 1j * rng.random(degree + 1))
        for _ in range(count)
    ]


@pytest.fixture(scope="session")
def poly_family():
    return random_polynomial_family()
