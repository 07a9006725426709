"""Sprawl-equivalence of chart points: certificates, oracles, verdicts.

Chart points are pairs (i, p) with p in the region and sigma-image
alpha^i(p).  YES verdicts carry a backtracking loop (thin by construction,
certified by the development-level reduction) together with a validated
incrementation from i1 to i2.  The scripted scenarios also have closed-form
oracles, so YES/NO is definitive there; the search path stays available as
an independent certificate producer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from ..development import certify_backtracking
from .incrementation import Incrementation, find_incrementation, validate_incrementation
from .paths import Polyline
from .regions import Ball, Point, Sector, as_point, cross, dist2, dot, sub
from .scenarios import Scenario


@dataclass
class Verdict:
    status: str                      # YES | NO | UNKNOWN
    loop: Optional[Polyline] = None
    incrementation: Optional[Incrementation] = None
    reason: str = ""

    @property
    def is_yes(self) -> bool:
        return self.status == "YES"

    def serialize(self) -> dict:
        out = {"status": self.status, "reason": self.reason}
        if self.loop is not None:
            out["loop"] = self.loop.serialize()
        if self.incrementation is not None:
            out["incrementation"] = self.incrementation.serialize()
        return out


def chart_point_valid(scenario: Scenario, i: int, p: Point) -> bool:
    return scenario.region.contains(p)


def lift_oracle(scenario: Scenario, i1: int, p1: Point, i2: int, p2: Point) -> Optional[bool]:
    """Closed-form equivalence oracle for the scripted scenarios.

    torus-translation: plane lifts must coincide exactly; rotation and
    affine-scaling: every sigma-image match is equivalent.  Returns None for
    unrecognized scenarios.
    """
    if scenario.name == "torus-translation":
        l1 = scenario.apply_power(i1, scenario.canonical_rep(p1))
        l2 = scenario.apply_power(i2, scenario.canonical_rep(p2))
        return as_point(l1) == as_point(l2)
    if scenario.name in ("rotation", "affine-scaling"):
        return scenario.sigma_equal(scenario.apply_power(i1, p1), scenario.apply_power(i2, p2))
    return None


# ---------------------------------------------------------------------------
# certificate constructors
# ---------------------------------------------------------------------------

def _constant_loop(scenario: Scenario, m: Point, i1: int, i2: int) -> Optional[Tuple[Polyline, Incrementation]]:
    """Constant loop at m with labels stepping from i1 to i2.

    Works when m lies in every intermediate iterate and in the distinguished
    components of the adjacent intersections.
    """
    lo, hi = min(i1, i2), max(i1, i2)
    for k in range(lo, hi + 1):
        if not scenario.in_iterate(k, m):
            return None
    step = 1 if i2 >= i1 else -1
    labels = list(range(i1, i2 + step, step)) or [i1]
    for k1, k2 in zip(labels, labels[1:]):
        if not scenario.component_contains(k1, k2, m):
            return None
    cells = len(labels)
    times = [Fraction(j, cells) for j in range(cells + 1)]
    loop = Polyline([m, m])
    return loop, Incrementation(times, labels)


def _radial_loop(scenario: Scenario, m: Point, i1: int, i2: int) -> Optional[Tuple[Polyline, Incrementation]]:
    """Rotation-scenario loop: walk radially from m into the central ball,
    step the labels there, and backtrack out."""
    ball = next(p for p in scenario.region.primitives if isinstance(p, Ball))
    r2 = ball.radius2
    m = as_point(m)
    norm2 = dot(m, m)
    if norm2 == 0:
        return None
    # q = s m with |q|^2 = 9 r^4 / (16 |m|^2) < r^2 whenever 3|q...| holds
    s = 3 * r2 / (4 * norm2) if 9 * r2 * r2 < 16 * r2 * norm2 else Fraction(1, 2)
    q = (m[0] * s, m[1] * s)
    if not (ball.contains(q) and dist2(q, (Fraction(0), Fraction(0))) > 0):
        return None
    # the two radial pieces must live in both end iterates
    for k in (i1, i2):
        ok, _ = scenario.segment_in_iterate(k, m, q)
        if not ok:
            return None
    origin = (Fraction(0), Fraction(0))
    loop = Polyline([m, q, origin, q, m])
    steps = abs(i2 - i1)
    if steps == 0:
        return _constant_loop(scenario, m, i1, i2)
    step = 1 if i2 > i1 else -1
    labels = [i1] + [i1 + step * (j + 1) for j in range(steps)]
    # crossings sit on the [origin -> q] stretch, inside the ball
    lo_t, hi_t = Fraction(1, 2), Fraction(3, 4)
    cuts = [lo_t + (hi_t - lo_t) * Fraction(j, steps + 1) for j in range(1, steps + 1)]
    times = [Fraction(0)] + cuts + [Fraction(1)]
    return loop, Incrementation(times, labels)


def _hub_loop(scenario: Scenario, m: Point, i1: int, i2: int) -> Optional[Tuple[Polyline, Incrementation]]:
    """Torus loop through the midpoint hub for |i1 - i2| = 2."""
    if abs(i1 - i2) != 2:
        return None
    mid = (i1 + i2) // 2
    hub = scenario.apply_power(mid, scenario.base)
    for k in (i1, mid, i2):
        ok, _ = scenario.segment_in_iterate(k, m, hub)
        if not ok:
            return None
    loop = Polyline([m, hub, m])
    times = [Fraction(0), Fraction(3, 8), Fraction(5, 8), Fraction(1)]
    return loop, Incrementation(times, [i1, mid, i2])


def build_certificate(scenario: Scenario, i1: int, p1: Point, i2: int, p2: Point):
    """Construct a (loop, incrementation) certificate for an oracle-YES pair."""
    m = scenario.apply_power(i1, p1)
    for builder in (_constant_loop, _hub_loop):
        cert = builder(scenario, m, i1, i2)
        if cert is not None:
            return cert
    if scenario.name == "rotation":
        cert = _radial_loop(scenario, m, i1, i2)
        if cert is not None:
            return cert
    return None


def sprawl_equivalent(
    scenario: Scenario,
    chart1: Tuple[int, Point],
    chart2: Tuple[int, Point],
    search_depth: int = 5,
    bundle: Optional[Tuple] = None,
) -> Verdict:
    """Decide sprawl-equivalence of two chart points.

    NO immediately when the sigma-images differ (or the bundle elements do);
    otherwise constructive certificates are tried, then the breadth-first
    incrementation search over a backtracking probe loop, and finally the
    scenario oracle settles NO.  UNKNOWN only without an oracle.
    """
    (i1, p1), (i2, p2) = chart1, chart2
    p1 = scenario.canonical_rep(p1)
    p2 = scenario.canonical_rep(p2)
    if not (chart_point_valid(scenario, i1, p1) and chart_point_valid(scenario, i2, p2)):
        return Verdict("NO", reason="chart point outside the region")
    m1 = scenario.apply_power(i1, p1)
    m2 = scenario.apply_power(i2, p2)
    if not scenario.sigma_equal(m1, m2):
        return Verdict("NO", reason="sigma images differ")
    if bundle is not None:
        g1, g2 = bundle
        if g1 is not None and g2 is not None and g1 != g2:
            return Verdict("NO", reason="bundle developments differ")
    oracle = lift_oracle(scenario, i1, p1, i2, p2)
    if oracle is False:
        return Verdict("NO", reason="oracle: lifts differ")
    cert = build_certificate(scenario, i1, p1, i2, p2)
    if cert is not None:
        loop, inc = cert
        ok, witness = validate_incrementation(scenario, loop, inc)
        # a constant loop backtracks trivially; otherwise run the reduction
        thin = loop.is_constant() or certify_backtracking(loop.to_development_path())[0]
        if ok and thin and inc.initial_label == i1 and inc.terminal_label == i2:
            return Verdict("YES", loop, inc, "constructed certificate")
    # search fallback: a backtracking probe loop through the marked images
    probe = _probe_loop(scenario, m1, i1, i2)
    if probe is not None:
        inc = find_incrementation(scenario, probe, i1, i2, depth=search_depth)
        if inc is not None:
            ok, _ = validate_incrementation(scenario, probe, inc)
            thin, _ = certify_backtracking(probe.to_development_path())
            if ok and thin:
                return Verdict("YES", probe, inc, "searched certificate")
    if oracle is True:
        return Verdict("UNKNOWN", reason="oracle says YES but no certificate was found")
    return Verdict("UNKNOWN", reason="no oracle and no certificate within budget")


def _probe_loop(scenario: Scenario, m: Point, i1: int, i2: int) -> Optional[Polyline]:
    """A candidate backtracking loop from m through nearby marked images."""
    hub = scenario.apply_power(max(i1, i2), scenario.base)
    if as_point(hub) == as_point(m):
        mid = scenario.apply_power(min(i1, i2), scenario.base)
        if as_point(mid) == as_point(m):
            return Polyline([m, m])
        return Polyline([m, mid, m])
    return Polyline([m, hub, m])
