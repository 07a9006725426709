"""Scripted sprawl scenarios: torus translation, plane rotation, affine scaling.

Every scenario is exact: the automorphism has rational matrix entries (the
rotation uses the 3/5-4/5 Pythagorean rotation, which has infinite order
because its angle is an irrational multiple of pi), regions are rational
primitives, and sigma-image comparisons are exact Fraction equalities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .regions import Ball, FloodFill, Point, Region, Sector, add, as_point, dist2, sub


@dataclass(frozen=True)
class PlaneMap:
    """Exact affine map p -> A p + b of the plane."""

    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction
    b1: Fraction = Fraction(0)
    b2: Fraction = Fraction(0)

    @staticmethod
    def translation(v) -> "PlaneMap":
        v = as_point(v)
        return PlaneMap(Fraction(1), Fraction(0), Fraction(0), Fraction(1), v[0], v[1])

    @staticmethod
    def linear(a11, a12, a21, a22) -> "PlaneMap":
        return PlaneMap(Fraction(a11), Fraction(a12), Fraction(a21), Fraction(a22))

    def apply(self, p: Point) -> Point:
        p = as_point(p)
        return (self.a11 * p[0] + self.a12 * p[1] + self.b1,
                self.a21 * p[0] + self.a22 * p[1] + self.b2)

    def compose(self, other: "PlaneMap") -> "PlaneMap":
        # self after other
        return PlaneMap(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
            self.a11 * other.b1 + self.a12 * other.b2 + self.b1,
            self.a21 * other.b1 + self.a22 * other.b2 + self.b2,
        )

    def inverse(self) -> "PlaneMap":
        det = self.a11 * self.a22 - self.a12 * self.a21
        if det == 0:
            raise ZeroDivisionError("singular plane map")
        i11, i12 = self.a22 / det, -self.a12 / det
        i21, i22 = -self.a21 / det, self.a11 / det
        return PlaneMap(i11, i12, i21, i22,
                        -(i11 * self.b1 + i12 * self.b2),
                        -(i21 * self.b1 + i22 * self.b2))


def torus_reduce(p: Point) -> Point:
    import math

    return (p[0] - math.floor(p[0]), p[1] - math.floor(p[1]))


@dataclass
class Scenario:
    """A region U with an exact carrier automorphism and a base point.

    The sprawl machinery works in lifted plane coordinates throughout; for
    torus carriers, sigma-image equality reduces modulo the lattice.
    """

    name: str
    carrier: str                     # plane | torus
    auto: PlaneMap
    region: Region
    base: Point
    mesh_resolution: int = 64
    component_oracle: Optional[Callable[[int, int], Callable[[Point], bool]]] = None
    equivalence_oracle: Optional[Callable] = None
    certificate_builder: Optional[Callable] = None
    _powers: Dict[int, PlaneMap] = field(default_factory=dict)
    _member_cache: Dict = field(default_factory=dict)

    def power(self, k: int) -> PlaneMap:
        if k in self._powers:
            return self._powers[k]
        if k == 0:
            out = PlaneMap.linear(1, 0, 0, 1)
        elif k > 0:
            out = self.auto.compose(self.power(k - 1))
        else:
            out = self.auto.inverse().compose(self.power(k + 1))
        self._powers[k] = out
        return out

    def apply_power(self, k: int, p: Point) -> Point:
        return self.power(k).apply(p)

    def sigma_equal(self, p: Point, q: Point) -> bool:
        """Equality of carrier points (mod the lattice on the torus)."""
        p, q = as_point(p), as_point(q)
        if self.carrier == "torus":
            d = sub(p, q)
            return d[0].denominator == 1 and d[1].denominator == 1
        return p == q

    def canonical_rep(self, p: Point) -> Point:
        """Lattice shift of p landing inside the region's plane primitives."""
        p = as_point(p)
        if self.carrier != "torus":
            return p
        import math

        from .regions import TORUS_SHIFTS

        p = (p[0] - math.floor(p[0]), p[1] - math.floor(p[1]))
        pxf, pyf = float(p[0]), float(p[1])
        ambiguous = []
        for s in TORUS_SHIFTS:
            sx, sy = float(s[0]), float(s[1])
            for prim in self.region.primitives:
                verdict = prim.classify_float(pxf + sx, pyf + sy)
                if verdict is True:
                    return add(p, s)
                if verdict is None:
                    ambiguous.append(s)
        for s in ambiguous:
            q = add(p, s)
            if any(prim.contains_exact(q) for prim in self.region.primitives):
                return q
        return p

    def in_iterate(self, k: int, p: Point) -> bool:
        """p in alpha^k(U), exact (memoized)."""
        key = (k, p)
        cached = self._member_cache.get(key)
        if cached is None:
            cached = self.region.contains(self.power(-k).apply(p))
            if len(self._member_cache) < 1_000_000:
                self._member_cache[key] = cached
        return cached

    def segment_in_iterate(self, k: int, p: Point, q: Point) -> Tuple[bool, bool]:
        inv = self.power(-k)
        return self.region.segment_inside(inv.apply(p), inv.apply(q))

    def component_contains(self, k1: int, k2: int, p: Point) -> bool:
        """p lies in the distinguished component of alpha^k1(U) & alpha^k2(U).

        Scripted scenarios supply an exact oracle predicate; the generic
        fallback flood-fills the intersection at mesh resolution and matches
        the component of the marked base image.
        """
        if not (self.in_iterate(k1, p) and self.in_iterate(k2, p)):
            return False
        if self.component_oracle is not None:
            return self.component_oracle(k1, k2)(p)
        marked = self.apply_power(max(k1, k2), self.base)
        lo, hi = self.region.bounding_box()
        span = max(hi[0] - lo[0], hi[1] - lo[1])
        lo_w = (lo[0] - span, lo[1] - span)
        hi_w = (hi[0] + span, hi[1] + span)
        fill = FloodFill(
            lambda q: self.in_iterate(k1, q) and self.in_iterate(k2, q),
            lo_w, hi_w, self.mesh_resolution,
        )
        return fill.component_of(p) == fill.component_of(marked)

    def validate(self):
        if not self.region.contains(self.base):
            raise ValueError("the region must contain the base point")
        if not self.region.contains(self.auto.apply(self.base)):
            raise ValueError("the region must contain the image of the base point")
        lo, hi = self.region.bounding_box()
        fill = FloodFill(self.region.contains, lo, hi, self.mesh_resolution)
        if not fill.is_connected():
            raise ValueError("the region must be connected at mesh resolution")
        return self


# ---------------------------------------------------------------------------
# the three scripted scenarios
# ---------------------------------------------------------------------------

def torus_translation_scenario(
    v=(Fraction(1, 5), Fraction(1, 10)),
    radius2=Fraction(9, 100),
    mesh_resolution: int = 64,
) -> Scenario:
    """Ball around 0 on R^2/Z^2, translated by v with |v| < radius."""
    v = as_point(v)
    if dist2(v, (Fraction(0), Fraction(0))) >= radius2:
        raise ValueError("the translation must keep the base image inside the ball")
    region = Region([Ball((Fraction(0), Fraction(0)), radius2)], carrier="torus")
    sc = Scenario(
        name="torus-translation",
        carrier="torus",
        auto=PlaneMap.translation(v),
        region=region,
        base=(Fraction(0), Fraction(0)),
        mesh_resolution=mesh_resolution,
    )

    def component_oracle(k1: int, k2: int):
        # adjacent-iterate intersections are single plane lenses (no torus
        # wrap at these diameters), so the pair membership test is exact
        def pred(p: Point) -> bool:
            return sc.in_iterate(k1, p) and sc.in_iterate(k2, p)

        return pred

    sc.component_oracle = component_oracle
    return sc.validate()


def rotation_scenario(
    ball_radius2=Fraction(1, 16),
    sector_radius2=Fraction(1),
    sector_slope=Fraction(1, 4),
    mesh_resolution: int = 64,
) -> Scenario:
    """Pythagorean rotation about 0 with U = ball + sector (disjoint from its
    own rotation), realizing the non-Hausdorff naive gluing."""
    rot = PlaneMap.linear(Fraction(3, 5), Fraction(-4, 5), Fraction(4, 5), Fraction(3, 5))
    ball = Ball((Fraction(0), Fraction(0)), ball_radius2)
    sector = Sector((Fraction(1), -sector_slope), (Fraction(1), sector_slope), sector_radius2)
    region = Region([ball, sector], carrier="plane")
    sc = Scenario(
        name="rotation",
        carrier="plane",
        auto=rot,
        region=region,
        base=(Fraction(0), Fraction(0)),
        mesh_resolution=mesh_resolution,
    )
    ball_region = Region([ball], carrier="plane")

    def component_oracle(k1: int, k2: int):
        if abs(k1 - k2) == 1:
            # adjacent iterates meet exactly in the central ball
            return lambda p: ball_region.contains(p)
        return lambda p: sc.in_iterate(k1, p) and sc.in_iterate(k2, p)

    sc.component_oracle = component_oracle
    return sc.validate()


def affine_scaling_scenario(
    lam=Fraction(1, 2),
    radius2=Fraction(1),
    mesh_resolution: int = 32,
) -> Scenario:
    """Scaling by lambda about 0 with U a ball around 0."""
    if not (0 < lam < 1):
        raise ValueError("the scaling factor must satisfy 0 < lambda < 1")
    region = Region([Ball((Fraction(0), Fraction(0)), radius2)], carrier="plane")
    sc = Scenario(
        name="affine-scaling",
        carrier="plane",
        auto=PlaneMap.linear(lam, 0, 0, lam),
        region=region,
        base=(Fraction(0), Fraction(0)),
        mesh_resolution=mesh_resolution,
    )

    def component_oracle(k1: int, k2: int):
        # the intersection of two concentric balls is the smaller ball
        def pred(p: Point) -> bool:
            return sc.in_iterate(k1, p) and sc.in_iterate(k2, p)

        return pred

    sc.component_oracle = component_oracle
    return sc.validate()


def _primitive_from_config(prim: dict):
    kind = prim.get("type", "ball")
    if kind == "ball":
        cx, cy = prim.get("center", ["0", "0"])
        return Ball((Fraction(cx), Fraction(cy)), Fraction(prim["radius2"]))
    if kind == "sector":
        lx, ly = prim["d_low"]
        hx, hy = prim["d_high"]
        return Sector((Fraction(lx), Fraction(ly)), (Fraction(hx), Fraction(hy)),
                      Fraction(prim.get("radius2", "1")))
    raise ValueError(f"unknown primitive type {kind!r}")


def _automorphism_from_config(auto: dict) -> PlaneMap:
    kind = auto.get("kind", "translation")
    if kind == "translation":
        vx, vy = auto.get("vector", ["1/5", "1/10"])
        return PlaneMap.translation((Fraction(vx), Fraction(vy)))
    if kind == "scaling":
        lam = Fraction(auto.get("factor", "1/2"))
        return PlaneMap.linear(lam, 0, 0, lam)
    if kind == "rotation":
        c = Fraction(auto.get("cos", "3/5"))
        s = Fraction(auto.get("sin", "4/5"))
        return PlaneMap.linear(c, -s, s, c)
    if kind == "linear":
        a11, a12, a21, a22 = (Fraction(x) for x in auto["matrix"])
        return PlaneMap.linear(a11, a12, a21, a22)
    raise ValueError(f"unknown automorphism kind {kind!r}")


def scenario_from_config(cfg: dict) -> Scenario:
    """Build a scenario from a JSON-style dict.

    The three scripted kinds carry their closed-form oracles; the `custom`
    kind assembles a general scenario from explicit region primitives, an
    automorphism spec, and a base point (equivalence queries on it may
    honestly return UNKNOWN).
    """
    kind = cfg.get("kind", "torus-translation")
    mesh = int(cfg.get("mesh_resolution", 64))
    if kind == "torus-translation":
        v = cfg.get("translation", ["1/5", "1/10"])
        r2 = Fraction(cfg.get("radius2", "9/100"))
        return torus_translation_scenario(
            (Fraction(v[0]), Fraction(v[1])), r2, mesh_resolution=mesh)
    if kind == "rotation":
        return rotation_scenario(
            Fraction(cfg.get("ball_radius2", "1/16")),
            Fraction(cfg.get("sector_radius2", "1")),
            Fraction(cfg.get("sector_slope", "1/4")),
            mesh_resolution=mesh,
        )
    if kind == "affine-scaling":
        return affine_scaling_scenario(
            Fraction(cfg.get("lambda", "1/2")),
            Fraction(cfg.get("radius2", "1")),
            mesh_resolution=mesh,
        )
    if kind == "custom":
        primitives = [_primitive_from_config(p) for p in cfg["region"]]
        carrier = cfg.get("carrier", "plane")
        bx, by = cfg.get("base", ["0", "0"])
        sc = Scenario(
            name=cfg.get("name", "custom"),
            carrier=carrier,
            auto=_automorphism_from_config(cfg.get("automorphism", {})),
            region=Region(primitives, carrier=carrier),
            base=(Fraction(bx), Fraction(by)),
            mesh_resolution=mesh,
        )
        return sc.validate()
    raise ValueError(f"unknown scenario kind {kind!r}")
