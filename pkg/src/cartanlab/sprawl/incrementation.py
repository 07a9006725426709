"""Incrementations: partition-plus-labels certificates for chart crossings.

An incrementation for a path splits [0, 1] at rational times and labels each
cell with a chart index; consecutive labels differ by exactly one, every cell
stays inside the labelled iterate of the region, and every crossing point
lies in the distinguished connected component of the adjacent-iterate
intersection (the one holding the marked base image).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .paths import Polyline
from .regions import Point
from .scenarios import Scenario


@dataclass
class Incrementation:
    times: List[Fraction]      # 0 = t_0 < ... < t_l = 1
    labels: List[int]          # one label per cell

    def __post_init__(self):
        self.times = [Fraction(t) for t in self.times]
        if len(self.times) != len(self.labels) + 1:
            raise ValueError("need one label per partition cell")
        if self.times[0] != 0 or self.times[-1] != 1:
            raise ValueError("partition must span [0, 1]")
        if any(a >= b for a, b in zip(self.times, self.times[1:])):
            raise ValueError("partition times must strictly increase")

    @property
    def initial_label(self) -> int:
        return self.labels[0]

    @property
    def terminal_label(self) -> int:
        return self.labels[-1]

    def reversed(self) -> "Incrementation":
        return Incrementation([1 - t for t in reversed(self.times)], list(reversed(self.labels)))

    def serialize(self) -> dict:
        return {"times": [str(t) for t in self.times], "labels": list(self.labels)}

    @staticmethod
    def deserialize(data: dict) -> "Incrementation":
        return Incrementation([Fraction(t) for t in data["times"]], list(data["labels"]))


def validate_incrementation(
    scenario: Scenario, path: Polyline, inc: Incrementation
) -> Tuple[bool, Optional[dict]]:
    """All three certificate conditions; returns (ok, witness-on-failure).

    Cell containments are certified through convex primitives where possible
    and sampled otherwise; crossing components use the scenario's exact
    component predicate.
    """
    for j, (k1, k2) in enumerate(zip(inc.labels, inc.labels[1:])):
        if abs(k1 - k2) != 1:
            return False, {"kind": "label-step", "cell": j, "labels": (k1, k2)}
    for j, label in enumerate(inc.labels):
        pts = path.subpath_points(inc.times[j], inc.times[j + 1])
        for p, q in zip(pts, pts[1:]):
            ok, _certified = scenario.segment_in_iterate(label, p, q)
            if not ok:
                return False, {
                    "kind": "containment",
                    "cell": j,
                    "label": label,
                    "segment": [[str(p[0]), str(p[1])], [str(q[0]), str(q[1])]],
                }
    for j in range(len(inc.labels) - 1):
        crossing = path.point_at(inc.times[j + 1])
        if not scenario.component_contains(inc.labels[j], inc.labels[j + 1], crossing):
            return False, {
                "kind": "crossing-component",
                "cell": j,
                "labels": (inc.labels[j], inc.labels[j + 1]),
                "point": [str(crossing[0]), str(crossing[1])],
            }
    return True, None


def find_incrementation(
    scenario: Scenario,
    path: Polyline,
    i1: int,
    i2: int,
    depth: int = 6,
    max_expansions: int = 20000,
) -> Optional[Incrementation]:
    """Breadth-first search over dyadic partitions and unit-step labels.

    Semi-decision: returns a valid incrementation from i1 to i2 or None when
    the budget is exhausted (absence within the budget proves nothing).
    """
    times = sorted(set(path.breakpoint_times())
                   | {Fraction(j, 1 << depth) for j in range((1 << depth) + 1)})
    index = {t: i for i, t in enumerate(times)}
    start = (index[Fraction(0)], i1)
    # state: (time index, current label); parents reconstruct the partition
    from collections import deque

    queue = deque([start])
    parent = {start: None}
    expansions = 0
    goal = None
    while queue and expansions < max_expansions:
        ti, label = queue.popleft()
        expansions += 1
        t_here = times[ti]
        for tj in range(ti + 1, len(times)):
            t_next = times[tj]
            pts = path.subpath_points(t_here, t_next)
            good = True
            for p, q in zip(pts, pts[1:]):
                ok, _ = scenario.segment_in_iterate(label, p, q)
                if not ok:
                    good = False
                    break
            if not good:
                # a longer cell with the same label cannot recover
                break
            if t_next == 1:
                if label == i2:
                    goal = (tj, label)
                    parent[goal] = ((ti, label), None)
                    break
                continue
            crossing = path.point_at(t_next)
            for nxt in (label - 1, label + 1):
                state = (tj, nxt)
                if state in parent:
                    continue
                if scenario.component_contains(label, nxt, crossing):
                    parent[state] = ((ti, label), t_next)
                    queue.append(state)
        if goal:
            break
    if not goal:
        return None
    cells = []
    cur = goal
    while parent[cur] is not None:
        (prev, crossing_time) = parent[cur]
        cells.append((prev[1], crossing_time))
        cur = prev
    cells.reverse()
    labels = [lab for lab, _ in cells]
    cut_times = [t for _, t in cells if t is not None]
    times_out = [Fraction(0)] + cut_times + [Fraction(1)]
    return Incrementation(times_out, labels)
