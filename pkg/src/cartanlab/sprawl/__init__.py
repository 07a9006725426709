"""Chart-complex gluing over the scripted plane and torus scenarios.

Regions are finite unions of exactly-testable convex primitives; scenarios
pair a region with an exact automorphism of the carrier.  Incrementations
certify how paths cross between the region's iterates, sprawl-equivalence is
decided by certificate construction plus per-scenario closed-form oracles,
and the atlas builders assemble naive and corrected chart complexes.
"""

from .regions import Ball, Sector, Region, FloodFill
from .scenarios import (
    Scenario,
    affine_scaling_scenario,
    rotation_scenario,
    torus_translation_scenario,
    scenario_from_config,
)
from .paths import Polyline
from .incrementation import (
    Incrementation,
    find_incrementation,
    validate_incrementation,
)
from .equivalence import Verdict, sprawl_equivalent
from .atlas import (
    ChartComplex,
    build_sprawl_atlas,
    naive_hausdorff_violation,
    naive_identified,
    sprawl_holonomy,
)
from .embedding import klein_embedding_image

__all__ = [
    "Ball",
    "Sector",
    "Region",
    "FloodFill",
    "Scenario",
    "affine_scaling_scenario",
    "rotation_scenario",
    "torus_translation_scenario",
    "scenario_from_config",
    "Polyline",
    "Incrementation",
    "find_incrementation",
    "validate_incrementation",
    "Verdict",
    "sprawl_equivalent",
    "ChartComplex",
    "build_sprawl_atlas",
    "naive_hausdorff_violation",
    "naive_identified",
    "sprawl_holonomy",
    "klein_embedding_image",
]
