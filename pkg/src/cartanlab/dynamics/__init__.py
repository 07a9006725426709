"""Isotropy dynamics on the model flag manifolds.

Orbit convergence toward the base point, the projective ballast matrices and
their eigenstructure, the CR shrinking paths with their arclength bounds, and
the flamboyance family certification.
"""

from .orbits import (
    OrbitReport,
    act_on_flag,
    isotropy_power,
    orbit_converges,
    fixed_set_codimension_probe,
    standard_isotropy,
)
from .ballast import (
    SingularParameter,
    ballast_projective,
    verify_factorization_identity,
    eigenvector_families,
    verify_eigenstructure_projective,
    divergence_test,
)
from .shrinking import (
    ShrinkReport,
    SingularZ,
    QuadratureUnstable,
    cr_shrinking_paths,
    closed_form_Y,
    shrinking_arclength,
    verify_characteristic_polynomial,
)
from .flamboyance import (
    FamilyConditionViolated,
    LineFamilyElement,
    flamboyance_check,
    line_family,
)

__all__ = [
    "OrbitReport",
    "act_on_flag",
    "isotropy_power",
    "orbit_converges",
    "fixed_set_codimension_probe",
    "standard_isotropy",
    "SingularParameter",
    "ballast_projective",
    "verify_factorization_identity",
    "eigenvector_families",
    "verify_eigenstructure_projective",
    "divergence_test",
    "ShrinkReport",
    "SingularZ",
    "QuadratureUnstable",
    "cr_shrinking_paths",
    "closed_form_Y",
    "shrinking_arclength",
    "verify_characteristic_polynomial",
    "FamilyConditionViolated",
    "LineFamilyElement",
    "flamboyance_check",
    "line_family",
]
