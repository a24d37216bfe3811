"""Certified image diameters and the classical growth bounds they control.

The package represents analytic functions on the unit disk as certified
truncated power series, computes two-sided enclosures of image diameters,
and verifies the derivative/growth/coefficient bounds that hold under a
diameter constraint, together with their equality cases, the hyperbolic
density corollary, and exploratory sweeps for the related open questions.
"""

from ._kernels import active_backend, available_backends
from .bounds import (
    ClassifierResult,
    PoukkaReport,
    SchurDecomposition,
    equality_classifier,
    fixed_point_lemma_check,
    growth_bound,
    growth_bound_symmetric,
    landau_toeplitz,
    poukka,
    schur_decompose,
    schwarz_derivative,
    schwarz_growth,
)
from .diameter import (
    DiameterEstimate,
    RatioCurve,
    boundary_attainment_check,
    brute_force_circle_diameter,
    disk_diameter,
    image_circle_diameter,
    linearity_probe,
    normalize_to_diameter,
    ratio_curve,
)
from .errors import (
    BudgetExceededError,
    DegenerateInputError,
    DiskdiamError,
    DomainError,
    InvalidArgument,
    PreconditionError,
    SpecFormatError,
    UnivalenceError,
)
from .explore import (
    FamilySpec,
    SweepResult,
    family_members,
    phi_profile,
    problem2_sweep,
    problem3_sweep,
)
from .hyperbolic import (
    DensityProfile,
    DomainMap,
    density_at,
    density_bound_report,
    min_density,
    monotonicity_check,
    univalence_spot_check,
)
from .report import BoundReport, bound_report
from .series import (
    AnalyticFunction,
    GrowthNormalization,
    MoebiusMap,
    centered_sup_bound,
    coefficients_from_circle,
    compose_moebius,
    from_coefficients,
    growth_normalization,
    identity,
    make_extremal_lft,
    make_schur_extremal,
    max_modulus_on_circle,
    monomial,
)
from .specio import dump_function_spec, load_function_spec
from .verify import run_verification_suite

__version__ = "0.1.0"
