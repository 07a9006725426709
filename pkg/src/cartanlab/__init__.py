"""cartan-lab: a verification laboratory for parabolic model geometries.

Exact and floating linear algebra over R, C, H, and Q(i); registered model
geometries with their gradings and isotropy subgroups; isotropy dynamics on
flag manifolds (ballast sequences, shrinking paths, flamboyance families);
path development and holonomy; and chart-complex gluing (naive and corrected)
for the scripted plane/torus scenarios.  A FastAPI service and a thin CLI
drive the verification suites and emit deterministic JSON reports.
"""

__version__ = "0.1.0"

from .scalars import Scalar, rational, qi, quat, flt, cflt
from .matrices import (
    Mat,
    DimensionMismatch,
    NotNilpotent,
    NonConvergence,
    SingularMatrix,
    mat_exp_nilpotent,
    mat_exp_general,
)
from .projective import ProjPoint, proj_equal, chordal_gap
from .models import ModelSpec, IsotropyParams, get_model, build_isotropy

__all__ = [
    "Scalar",
    "rational",
    "qi",
    "quat",
    "flt",
    "cflt",
    "Mat",
    "DimensionMismatch",
    "NotNilpotent",
    "NonConvergence",
    "SingularMatrix",
    "mat_exp_nilpotent",
    "mat_exp_general",
    "ProjPoint",
    "proj_equal",
    "chordal_gap",
    "ModelSpec",
    "IsotropyParams",
    "get_model",
    "build_isotropy",
    "__version__",
]
