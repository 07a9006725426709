"""Chart complexes: naive gluing, its Hausdorff defect, and the sprawl atlas.

Charts are integer-indexed copies of the region; identifications are stored
as certified records.  NAIVE mode glues adjacent charts over the
distinguished component of the adjacent-iterate intersection (and chains
them); SPRAWL mode glues by sprawl-equivalence with stored certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..development import holonomy_closure
from ..matrices import Mat
from .equivalence import Verdict, lift_oracle, sprawl_equivalent
from .paths import Polyline
from .regions import Point, dist2, mesh_points
from .scenarios import Scenario


@dataclass
class Identification:
    chart1: int
    point1: Point
    chart2: int
    point2: Point
    kind: str                      # NAIVE-adjacent | SPRAWL
    verdict: Optional[Verdict] = None

    def serialize(self) -> dict:
        out = {
            "chart1": self.chart1,
            "point1": [str(self.point1[0]), str(self.point1[1])],
            "chart2": self.chart2,
            "point2": [str(self.point2[0]), str(self.point2[1])],
            "kind": self.kind,
        }
        if self.verdict is not None and self.verdict.loop is not None:
            out["certificate"] = self.verdict.serialize()
        return out


@dataclass
class ChartComplex:
    scenario: Scenario
    chart_range: Tuple[int, int]
    mode: str                       # NAIVE | SPRAWL
    mesh: List[Point]
    identifications: List[Identification] = field(default_factory=list)
    unresolved: List[dict] = field(default_factory=list)

    def identified_pairs(self) -> set:
        out = set()
        for rec in self.identifications:
            out.add(((rec.chart1, rec.point1), (rec.chart2, rec.point2)))
        return out


def naive_identified(scenario: Scenario, i: int, j: int, m: Point) -> bool:
    """Adjacent-chain naive identification of the chart points over sigma
    image m: every intermediate crossing must happen in the distinguished
    component of the adjacent-iterate intersection."""
    lo, hi = min(i, j), max(i, j)
    for k in range(lo, hi):
        if not scenario.component_contains(k, k + 1, m):
            return False
    return True


def partner_point(scenario: Scenario, i: int, p: Point, j: int) -> Optional[Point]:
    """The chart-j coordinate with the same sigma image, if it lies in U."""
    m = scenario.apply_power(i, p)
    q = scenario.canonical_rep(scenario.apply_power(-j, m))
    if scenario.region.contains(q):
        return q
    return None


def naive_hausdorff_violation(
    scenario: Scenario, i: int, mesh_resolution: Optional[int] = None
) -> List[dict]:
    """Sampled witnesses of the naive gluing's Hausdorff failure at chart i.

    A witness x has (0, x) and (i, alpha^-i x) unidentified although some
    naive-identified mesh point u sits within one mesh cell of x, so every
    neighborhood pair meets through identified points.
    """
    res = mesh_resolution or scenario.mesh_resolution
    mesh = mesh_points(scenario.region, res)
    lo, hi = scenario.region.bounding_box()
    cell = max(hi[0] - lo[0], hi[1] - lo[1]) / res
    near2 = (2 * cell) * (2 * cell)
    identified = []
    candidates = []
    for x in mesh:
        if partner_point(scenario, 0, x, i) is None:
            continue
        if naive_identified(scenario, 0, i, scenario.apply_power(0, x)):
            identified.append(x)
        else:
            candidates.append(x)
    witnesses = []
    for x in candidates:
        for u in identified:
            if dist2(x, u) < near2:
                witnesses.append({
                    "point": [str(x[0]), str(x[1])],
                    "identified_neighbor": [str(u[0]), str(u[1])],
                })
                break
    return witnesses


def build_sprawl_atlas(
    scenario: Scenario,
    chart_range: Tuple[int, int],
    mesh_resolution: Optional[int] = None,
    mode: str = "SPRAWL",
) -> ChartComplex:
    """Glue the chart window over a mesh, certifying every identification.

    SPRAWL mode runs sprawl_equivalent per candidate pair (the sigma map
    respects every recorded gluing by construction, and this is asserted);
    NAIVE mode records only adjacent-chain identifications.
    """
    res = mesh_resolution or scenario.mesh_resolution
    mesh = mesh_points(scenario.region, res)
    lo_c, hi_c = chart_range
    complex_ = ChartComplex(scenario, chart_range, mode, mesh)
    for p in mesh:
        for i in range(lo_c, hi_c + 1):
            for j in range(i + 1, hi_c + 1):
                q = partner_point(scenario, i, p, j)
                if q is None:
                    continue
                m = scenario.apply_power(i, p)
                if mode == "NAIVE":
                    if naive_identified(scenario, i, j, m):
                        complex_.identifications.append(
                            Identification(i, p, j, q, "NAIVE-adjacent"))
                    continue
                verdict = sprawl_equivalent(scenario, (i, p), (j, q))
                if verdict.is_yes:
                    assert scenario.sigma_equal(
                        scenario.apply_power(i, p), scenario.apply_power(j, q))
                    complex_.identifications.append(
                        Identification(i, p, j, q, "SPRAWL", verdict))
                elif verdict.status == "UNKNOWN":
                    complex_.unresolved.append({
                        "chart1": i, "chart2": j,
                        "point": [str(p[0]), str(p[1])],
                        "reason": verdict.reason,
                    })
    return complex_


def sprawl_holonomy(
    generators: Sequence[Mat],
    a: Mat,
    word_bound: int = 6,
    element_cap: int = 4096,
):
    """Holonomy of the sprawl: the closure of the region's holonomy group
    under a-conjugation (delegates to the development-side closure)."""
    return holonomy_closure(generators, a, word_bound=word_bound, element_cap=element_cap)
