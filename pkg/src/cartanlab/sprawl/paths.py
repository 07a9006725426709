"""Exact polylines over the scenario carriers.

A polyline stores its breakpoints in lifted plane coordinates with the
parameter interval [0, 1] split evenly over the segments.  Evaluation at
rational times is exact, subpaths restrict to parameter windows, and the
conversion to a development path uses translation velocities, so the
backtracking certificate and holonomy checks run on the same object.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from ..development import PLPath, Segment, translation_algebra
from .regions import Point, as_point


class Polyline:
    def __init__(self, points: Sequence[Point]):
        if len(points) < 2:
            raise ValueError("a polyline needs at least two breakpoints")
        self.points = [as_point(p) for p in points]

    @property
    def segment_count(self) -> int:
        return len(self.points) - 1

    def breakpoint_times(self) -> List[Fraction]:
        n = self.segment_count
        return [Fraction(i, n) for i in range(n + 1)]

    def point_at(self, t) -> Point:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("parameter outside [0, 1]")
        n = self.segment_count
        scaled = t * n
        idx = min(int(scaled), n - 1)
        local = scaled - idx
        p, q = self.points[idx], self.points[idx + 1]
        return (p[0] + local * (q[0] - p[0]), p[1] + local * (q[1] - p[1]))

    def subpath_points(self, t0, t1) -> List[Point]:
        """Breakpoints of the restriction to [t0, t1] (exact)."""
        t0, t1 = Fraction(t0), Fraction(t1)
        if t1 < t0:
            raise ValueError("empty parameter window")
        pts = [self.point_at(t0)]
        for i, t in enumerate(self.breakpoint_times()):
            if t0 < t < t1:
                pts.append(self.points[i])
        pts.append(self.point_at(t1))
        return pts

    def reversed(self) -> "Polyline":
        return Polyline(list(reversed(self.points)))

    def concat(self, other: "Polyline") -> "Polyline":
        if self.points[-1] != other.points[0]:
            raise ValueError("polylines are not contiguous")
        return Polyline(self.points + other.points[1:])

    def is_loop(self) -> bool:
        return self.points[0] == self.points[-1]

    def is_constant(self) -> bool:
        return all(p == self.points[0] for p in self.points)

    def to_development_path(self) -> PLPath:
        segs = []
        for p, q in zip(self.points, self.points[1:]):
            disp = [q[0] - p[0], q[1] - p[1]]
            segs.append(Segment(p, q, translation_algebra(disp), 1))
        return PLPath(segs)

    def serialize(self) -> List[List[str]]:
        return [[str(x), str(y)] for x, y in self.points]

    @staticmethod
    def deserialize(data: Sequence[Sequence[str]]) -> "Polyline":
        return Polyline([(Fraction(x), Fraction(y)) for x, y in data])

    def __repr__(self):
        return f"Polyline({self.points!r})"
