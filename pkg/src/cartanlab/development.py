"""Path development into the model group, loop holonomy, and closures.

Paths are piecewise data: each segment carries its endpoint coordinates in
the carrier plus a constant model-algebra velocity (a time-varying velocity
callable is also accepted and integrated by a frozen-exponential RK4 with
step halving).  Development multiplies exp(duration * X) factors on the
right, starting from the identity, and is exact whenever every velocity is
nilpotent with exact entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .matrices import Mat, NotNilpotent, mat_exp_general, mat_exp_nilpotent


class NotALoop(ValueError):
    pass


class StepFailure(ArithmeticError):
    pass


@dataclass(frozen=True)
class Segment:
    start: tuple
    end: tuple
    velocity: object            # Mat, or callable t -> Mat, or None (constant point)
    duration: object = 1        # parameter length (Fraction or float)

    def reversed(self) -> "Segment":
        vel = self.velocity
        if isinstance(vel, Mat):
            vel = -vel
        elif callable(vel):
            orig = vel
            dur = self.duration
            vel = lambda t: -orig(dur - t)
        return Segment(self.end, self.start, vel, self.duration)

    def is_exact_reverse_of(self, other: "Segment") -> bool:
        if self.start != other.end or self.end != other.start:
            return False
        if self.duration != other.duration:
            return False
        if isinstance(self.velocity, Mat) and isinstance(other.velocity, Mat):
            return (self.velocity + other.velocity).is_zero()
        return self.velocity is None and other.velocity is None

    def is_degenerate(self) -> bool:
        if self.start != self.end:
            return False
        if self.velocity is None:
            return True
        return isinstance(self.velocity, Mat) and self.velocity.is_zero()


class PLPath:
    """Contiguous piecewise path with per-segment velocity data."""

    def __init__(self, segments: Sequence[Segment]):
        self.segments = list(segments)
        for a, b in zip(self.segments, self.segments[1:]):
            if a.end != b.start:
                raise ValueError("segments are not contiguous")

    @staticmethod
    def from_breakpoints(points: Sequence[tuple], velocities: Sequence, durations=None) -> "PLPath":
        durations = durations or [1] * (len(points) - 1)
        segs = [Segment(points[i], points[i + 1], velocities[i], durations[i])
                for i in range(len(points) - 1)]
        return PLPath(segs)

    @property
    def start(self):
        return self.segments[0].start

    @property
    def end(self):
        return self.segments[-1].end

    def is_loop(self) -> bool:
        return bool(self.segments) and self.start == self.end

    def reversed(self) -> "PLPath":
        return PLPath([s.reversed() for s in reversed(self.segments)])

    def concat(self, other: "PLPath") -> "PLPath":
        return PLPath(self.segments + other.segments)

    def __len__(self):
        return len(self.segments)


@dataclass
class DevelopmentResult:
    breakpoints: List[Mat]
    endpoint: Mat
    exact: bool
    error_estimate: float = 0.0


def _exp_step(x: Mat, nilpotency_bound: int, tol: float):
    try:
        return mat_exp_nilpotent(x, nilpotency_bound), True
    except NotNilpotent:
        try:
            return mat_exp_general(x, tol), False
        except Exception as exc:  # noqa: BLE001 - report as a step failure
            raise StepFailure(str(exc)) from exc


def _rk4_step(g: Mat, vel: Callable[[float], Mat], t0: float, h: float, bound: int, tol: float) -> Mat:
    k1 = vel(t0).to_float()
    k2 = vel(t0 + h / 2).to_float()
    k3 = k2
    k4 = vel(t0 + h).to_float()
    avg = (k1 + k2.scale_left(2.0) + k3.scale_left(2.0) + k4).scale_left(h / 6.0)
    step, _ = _exp_step(avg, bound, tol)
    return g * step


def _develop_varying(g: Mat, seg: Segment, bound: int, tol: float) -> Mat:
    steps = 8
    prev = None
    for _ in range(16):
        cur = g
        h = float(seg.duration) / steps
        for i in range(steps):
            cur = _rk4_step(cur, seg.velocity, i * h, h, bound, tol)
        if prev is not None and (cur - prev).norm() < 1e-10:
            return cur
        prev = cur
        steps *= 2
    raise StepFailure("RK4 step halving did not stabilize")


def develop_path(path: PLPath, dim: int, ring: str = "QI", tol: float = 1e-12) -> DevelopmentResult:
    """Solve the left-invariant development ODE segment by segment.

    Constant algebra velocities advance by exp(duration * X) exactly when X
    is nilpotent with exact entries; float or non-nilpotent data falls back
    to the residual-checked float exponential, and callable velocities are
    integrated by RK4 with step halving to 1e-10.
    """
    g = Mat.identity(dim, ring)
    exact = True
    out = [g]
    for seg in path.segments:
        if seg.velocity is None:
            out.append(g)
            continue
        if callable(seg.velocity):
            g = _develop_varying(g, seg, dim + 1, tol)
            exact = False
        else:
            x = seg.velocity
            dur = seg.duration
            if isinstance(dur, float) or not x.is_exact:
                step = mat_exp_general(x.to_float().scale_left(float(dur)), tol)
                exact = False
            else:
                scaled = x.scale_left(Fraction(dur) if not isinstance(dur, Fraction) else dur)
                step, was_exact = _exp_step(scaled, dim + 1, tol)
                exact = exact and was_exact
            g = g * step
        out.append(g)
    err = 0.0
    if not exact:
        err = tol * max(1, len(path.segments))
    return DevelopmentResult(out, g, exact, err)


def loop_holonomy(path: PLPath, dim: int, ring: str = "QI", h_gamma: Optional[Mat] = None) -> Mat:
    """gamma_G(1) h^-1 for a loop; NotALoop when the endpoints differ."""
    if h_gamma is None:
        if not path.is_loop():
            raise NotALoop("path endpoints differ and no frame change was supplied")
        h_gamma = Mat.identity(dim, ring)
    dev = develop_path(path, dim, ring)
    return dev.endpoint * h_gamma.inverse()


def certify_backtracking(path: PLPath) -> Tuple[bool, List[Tuple[int, int]]]:
    """Reduce the segment word by cancelling adjacent exact-reverse pairs.

    Returns (certified, trace); the trace lists the cancelled index pairs in
    cancellation order.  This certifies thinness: it never decides it.
    """
    indexed = [(i, s) for i, s in enumerate(path.segments) if not s.is_degenerate()]
    stack: List[Tuple[int, Segment]] = []
    trace: List[Tuple[int, int]] = []
    for i, seg in indexed:
        if stack and seg.is_exact_reverse_of(stack[-1][1]):
            j, _ = stack.pop()
            trace.append((j, i))
        else:
            stack.append((i, seg))
    return (not stack) and path.is_loop(), trace


# ---------------------------------------------------------------------------
# subgroup closures
# ---------------------------------------------------------------------------

@dataclass
class SubgroupClosure:
    elements: List[Mat]
    generators: List[Mat]
    conjugator: Mat
    word_bound: int
    saturated: bool
    cap_exceeded: bool = False

    def contains(self, g: Mat, key=None) -> bool:
        key = key or _default_key
        keys = {key(e) for e in self.elements}
        return key(g) in keys


def _default_key(m: Mat):
    if m.is_exact:
        return tuple((e.a, e.b, e.c, e.d) for row in m.rows for e in row)
    return tuple(
        (round(float(e.a), 9), round(float(e.b), 9), round(float(e.c), 9), round(float(e.d), 9))
        for row in m.rows
        for e in row
    )


def holonomy_closure(
    generators: Sequence[Mat],
    a: Mat,
    word_bound: int = 6,
    element_cap: int = 4096,
    key=None,
) -> SubgroupClosure:
    """Breadth-first word enumeration saturating toward the smallest subgroup
    containing the generators that is normalized by a.

    One round maps every known element g to g^-1, a g a^-1, a^-1 g a, and the
    letter products g l and l g over the alphabet of generators and their
    inverses; iterating rounds exhausts the subgroup.  Deterministic:
    elements are kept in first-seen order and rounds scan them in that order.
    `saturated` is True iff some round within the bound added nothing;
    hitting element_cap marks the closure capped and returns the partial set.
    """
    key = key or _default_key
    n = a.n
    eye = Mat.identity(n, a.ring)
    a_inv = a.inverse()
    elements: List[Mat] = []
    seen = set()

    def push(m: Mat) -> bool:
        k = key(m)
        if k in seen:
            return False
        seen.add(k)
        elements.append(m)
        return True

    push(eye)
    letters: List[Mat] = []
    for g in generators:
        letters.append(g)
        letters.append(g.inverse())
        push(g)
        push(g.inverse())
    saturated = False
    capped = False
    for _ in range(word_bound):
        added = False
        snapshot = list(elements)
        for g in snapshot:
            candidates = [a * g * a_inv, a_inv * g * a, g.inverse()]
            for letter in letters:
                candidates.append(g * letter)
                candidates.append(letter * g)
            for c in candidates:
                if push(c):
                    added = True
                if len(elements) > element_cap:
                    capped = True
                    break
            if capped:
                break
        if capped:
            break
        if not added:
            saturated = True
            break
    return SubgroupClosure(elements, list(generators), a, word_bound, saturated, capped)


# ---------------------------------------------------------------------------
# Euclidean/affine carrier helpers used by loops over tori and planes
# ---------------------------------------------------------------------------

def translation_matrix(v: Sequence, ring: str = "QI") -> Mat:
    m = len(v)
    rows = [[1 if i == j else 0 for j in range(m + 1)] for i in range(m + 1)]
    g = Mat(rows, ring)
    for i, x in enumerate(v):
        g = g.with_entry(i, m, x)
    return g


def translation_algebra(v: Sequence, ring: str = "QI") -> Mat:
    m = len(v)
    x = Mat.zeros(m + 1, ring=ring)
    for i, val in enumerate(v):
        x = x.with_entry(i, m, val)
    return x


def polyline_path(points: Sequence[tuple], ring: str = "QI") -> PLPath:
    """Straight-segment path through plane/torus coordinates.

    Velocities are the displacement translations in the Euclidean model
    algebra, so development recovers the total displacement.
    """
    segs = []
    for p, q in zip(points, points[1:]):
        disp = [b - a for a, b in zip(p, q)]
        segs.append(Segment(tuple(p), tuple(q), translation_algebra(disp, ring), 1))
    return PLPath(segs)
