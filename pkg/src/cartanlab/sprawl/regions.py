"""Plane/torus regions built from convex primitives with exact membership.

Points are pairs of Fractions.  Primitives are open convex sets (balls and
angular sectors of width below pi), so a straight segment lies inside a
primitive exactly when its endpoints do; that makes segment containment
certifiable without sampling.  Torus membership scans the 3x3 lattice-shift
window, which suffices for regions of diameter below 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

Point = Tuple[Fraction, Fraction]

TORUS_SHIFTS = [(Fraction(i), Fraction(j)) for i in (-1, 0, 1) for j in (-1, 0, 1)]


def as_point(p) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def cross(p: Point, q: Point) -> Fraction:
    return p[0] * q[1] - p[1] * q[0]


def dot(p: Point, q: Point) -> Fraction:
    return p[0] * q[0] + p[1] * q[1]


def dist2(p: Point, q: Point) -> Fraction:
    d = sub(p, q)
    return d[0] * d[0] + d[1] * d[1]


_MARGIN = 1e-9


@dataclass(frozen=True)
class Ball:
    """Open disc; exact membership via squared radius.

    Membership classifies with floats first and falls back to exact Fraction
    comparison only near the boundary, so generic queries stay cheap while
    boundary decisions stay exact.
    """

    center: Point
    radius2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "_cf", (float(self.center[0]), float(self.center[1])))
        object.__setattr__(self, "_r2f", float(self.radius2))

    def classify_float(self, px: float, py: float):
        dx = px - self._cf[0]
        dy = py - self._cf[1]
        d2 = dx * dx + dy * dy
        if d2 < self._r2f - _MARGIN:
            return True
        if d2 > self._r2f + _MARGIN:
            return False
        return None

    def contains_exact(self, p: Point) -> bool:
        return dist2(p, self.center) < self.radius2

    def contains(self, p: Point) -> bool:
        verdict = self.classify_float(float(p[0]), float(p[1]))
        if verdict is None:
            return self.contains_exact(p)
        return verdict


@dataclass(frozen=True)
class Sector:
    """Open circular sector at the origin between two boundary directions.

    The sector is the set swept counterclockwise from d_low to d_high with
    radius below sqrt(radius2); the angular width must stay below pi so the
    set is convex (intersection of two open half-planes and a disc).
    """

    d_low: Point
    d_high: Point
    radius2: Fraction

    def __post_init__(self):
        if cross(self.d_low, self.d_high) <= 0:
            raise ValueError("sector directions must open counterclockwise (width < pi)")

    def classify_float(self, px: float, py: float):
        n2 = px * px + py * py
        if n2 < _MARGIN:
            return None
        lowf = float(self.d_low[0]) * py - float(self.d_low[1]) * px
        highf = px * float(self.d_high[1]) - py * float(self.d_high[0])
        r2f = float(self.radius2)
        if lowf > _MARGIN and highf > _MARGIN and n2 < r2f - _MARGIN:
            return True
        if lowf < -_MARGIN or highf < -_MARGIN or n2 > r2f + _MARGIN:
            return False
        return None

    def contains_exact(self, p: Point) -> bool:
        if p == (0, 0):
            return False
        if dot(p, p) >= self.radius2:
            return False
        return cross(self.d_low, p) > 0 and cross(p, self.d_high) > 0

    def contains(self, p: Point) -> bool:
        verdict = self.classify_float(float(p[0]), float(p[1]))
        if verdict is None:
            return self.contains_exact(p)
        return verdict


Primitive = object  # Ball | Sector


@dataclass
class Region:
    """Finite union of primitives on a plane or torus carrier."""

    primitives: List[Primitive]
    carrier: str = "plane"      # plane | torus

    def _shifts(self):
        return TORUS_SHIFTS if self.carrier == "torus" else [(Fraction(0), Fraction(0))]

    def contains(self, p: Point) -> bool:
        p = as_point(p)
        pxf, pyf = float(p[0]), float(p[1])
        ambiguous = []
        for s in self._shifts():
            sx, sy = float(s[0]), float(s[1])
            for prim in self.primitives:
                verdict = prim.classify_float(pxf + sx, pyf + sy)
                if verdict is True:
                    return True
                if verdict is None:
                    ambiguous.append((s, prim))
        for s, prim in ambiguous:
            if prim.contains_exact(add(p, s)):
                return True
        return False

    def segment_inside(self, p: Point, q: Point, samples: int = 17) -> Tuple[bool, bool]:
        """(inside, certified) for the straight segment from p to q.

        Certified when one primitive (after one lattice shift) contains both
        endpoints: convexity then contains the segment.  Otherwise falls back
        to sampling and reports certified=False.
        """
        p, q = as_point(p), as_point(q)
        for s in self._shifts():
            ps, qs = add(p, s), add(q, s)
            for prim in self.primitives:
                if prim.contains(ps) and prim.contains(qs):
                    return True, True
        for j in range(samples + 1):
            t = Fraction(j, samples)
            pt = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
            if not self.contains(pt):
                return False, False
        return True, False

    def bounding_box(self) -> Tuple[Point, Point]:
        los, his = [], []
        for prim in self.primitives:
            if isinstance(prim, Ball):
                r = _frac_sqrt_upper(prim.radius2)
                los.append((prim.center[0] - r, prim.center[1] - r))
                his.append((prim.center[0] + r, prim.center[1] + r))
            else:
                r = _frac_sqrt_upper(prim.radius2)
                los.append((-r, -r))
                his.append((r, r))
        lo = (min(p[0] for p in los), min(p[1] for p in los))
        hi = (max(p[0] for p in his), max(p[1] for p in his))
        return lo, hi


def _frac_sqrt_upper(x: Fraction) -> Fraction:
    """A rational upper bound for sqrt(x)."""
    f = float(x) ** 0.5
    return Fraction(f).limit_denominator(1 << 20) + Fraction(1, 1 << 16)


def mesh_points(region: Region, resolution: int) -> List[Point]:
    """Cell-centered grid points of the bounding box that lie in the region."""
    lo, hi = region.bounding_box()
    out = []
    for i in range(resolution):
        x = lo[0] + (hi[0] - lo[0]) * Fraction(2 * i + 1, 2 * resolution)
        for j in range(resolution):
            y = lo[1] + (hi[1] - lo[1]) * Fraction(2 * j + 1, 2 * resolution)
            if region.contains((x, y)):
                out.append((x, y))
    return out


class FloodFill:
    """Connected components of a membership predicate at mesh resolution."""

    def __init__(self, predicate, lo: Point, hi: Point, resolution: int):
        self.predicate = predicate
        self.lo, self.hi = lo, hi
        self.resolution = resolution
        self.labels = {}
        self.count = 0
        self._run()

    def _cell_point(self, i: int, j: int) -> Point:
        return (
            self.lo[0] + (self.hi[0] - self.lo[0]) * Fraction(2 * i + 1, 2 * self.resolution),
            self.lo[1] + (self.hi[1] - self.lo[1]) * Fraction(2 * j + 1, 2 * self.resolution),
        )

    def _run(self):
        n = self.resolution
        inside = {}
        for i in range(n):
            for j in range(n):
                if self.predicate(self._cell_point(i, j)):
                    inside[(i, j)] = None
        for cell in sorted(inside):
            if inside[cell] is not None:
                continue
            self.count += 1
            stack = [cell]
            inside[cell] = self.count
            while stack:
                ci, cj = stack.pop()
                for ni, nj in ((ci + 1, cj), (ci - 1, cj), (ci, cj + 1), (ci, cj - 1)):
                    if (ni, nj) in inside and inside[(ni, nj)] is None:
                        inside[(ni, nj)] = self.count
                        stack.append((ni, nj))
        self.labels = inside

    def component_of(self, p: Point) -> Optional[int]:
        n = self.resolution
        dx = (self.hi[0] - self.lo[0]) / n
        dy = (self.hi[1] - self.lo[1]) / n
        if dx == 0 or dy == 0:
            return None
        i = int((Fraction(p[0]) - self.lo[0]) / dx)
        j = int((Fraction(p[1]) - self.lo[1]) / dy)
        best = None
        for ci in (i - 1, i, i + 1):
            for cj in (j - 1, j, j + 1):
                if (ci, cj) in self.labels:
                    cand = self.labels[(ci, cj)]
                    if best is None or dist2(self._cell_point(ci, cj), as_point(p)) < best[0]:
                        best = (dist2(self._cell_point(ci, cj), as_point(p)), cand)
        return best[1] if best else None

    def is_connected(self) -> bool:
        return self.count <= 1
