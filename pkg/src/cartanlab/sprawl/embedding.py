"""Image of the sprawl inside the Klein geometry: density and complement.

For the flag-manifold scenarios, the sprawl image is the union of the
isotropy iterates of a gap-ball around the base point; the report verifies
that sampled non-fixed points enter the union for small |i| while the
complement satisfies the fixed-set equations.
"""

from __future__ import annotations

from typing import List, Sequence

from ..dynamics.orbits import act_on_flag, isotropy_power
from ..matrices import Mat
from ..models import ModelSpec, base_point
from ..projective import ProjPoint, chordal_gap, proj_equal


def klein_embedding_image(
    model: ModelSpec,
    a: Mat,
    points: Sequence[ProjPoint],
    window: int = 1024,
    ball_gap: float = 0.25,
) -> dict:
    """Coverage of sampled points by the iterates a^i(U), U a gap-ball.

    A point is covered at level i when a^-i moves it into the ball
    {gap to base < ball_gap}.  Non-fixed points must be covered within the
    window; uncovered points must be exactly fixed.
    """
    base = base_point(model)
    covered = []
    complement = []
    for p in points:
        found = None
        level = 0
        while level <= window:
            for i in ([0] if level == 0 else [level, -level]):
                moved = act_on_flag(model, isotropy_power(model, a, -i), p)
                if chordal_gap(moved, base) < ball_gap:
                    found = i
                    break
            if found is not None:
                break
            level = 1 if level == 0 else level * 2
        if found is not None:
            covered.append((p, found))
        else:
            complement.append(p)
    complement_fixed = all(proj_equal(act_on_flag(model, a, p), p) for p in complement)
    return {
        "covered": len(covered),
        "max_level": max((abs(i) for _, i in covered), default=0),
        "complement": len(complement),
        "complement_is_fixed": complement_fixed,
        "ok": complement_fixed,
    }
