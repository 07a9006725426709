"""Orbits of isotropy elements on the flag manifolds.

The convergence functional is the squared chordal displacement
`chordal_gap` (minimum over the right scalar action); it decays like 1/k^2
along the attracting orbits of the standard unipotent isotropies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from ..matrices import Mat, mat_exp_nilpotent, nilpotent_log
from ..models import (
    IsotropyParams,
    ModelSpec,
    NotOnNullCone,
    build_isotropy,
    base_point,
    nullcone_contains,
)
from ..projective import ProjPoint, chordal_gap, proj_equal
from ..scalars import Scalar, ZERO, ONE


def standard_isotropy(model: ModelSpec, kind: str = "default") -> Mat:
    """The conjugation-normal-form isotropy element of each scenario.

    cproj/hproj: the unipotent with p = (1, 0, ..., 0).  cr: `central`
    (exp of the top grading slot, s = 1), `timelike` (beta = e_1), or
    `spacelike` (beta = the last, negative-signature direction).
    """
    if model.family in ("cproj", "hproj"):
        row = [ONE] + [ZERO] * (model.matrix_dim - 2)
        return build_isotropy(model, IsotropyParams(p_row=row))
    if model.family == "cr":
        mid = model.middle
        if kind in ("default", "central"):
            g, info = build_isotropy(model, IsotropyParams(beta=[ZERO] * mid, s=1))
        elif kind == "timelike":
            if model.params[0] < 1:
                raise ValueError("timelike isotropy needs p >= 1")
            g, info = build_isotropy(
                model, IsotropyParams(beta=[ONE] + [ZERO] * (mid - 1), s=0)
            )
        elif kind == "spacelike":
            if model.params[1] < 1:
                raise ValueError("spacelike isotropy needs q >= 1")
            g, info = build_isotropy(
                model, IsotropyParams(beta=[ZERO] * (mid - 1) + [ONE], s=0)
            )
        else:
            raise ValueError(f"unknown cr isotropy kind {kind!r}")
        assert info.non_null
        return g
    raise ValueError(f"no standard isotropy for {model.family}")


def isotropy_power(model: ModelSpec, a: Mat, k: int) -> Mat:
    """a**k, exact; unipotent elements go through exp(k log a)."""
    try:
        x = nilpotent_log(a, model.matrix_dim + 1)
        return mat_exp_nilpotent(x.scale_left(Scalar(Fraction(k))), model.matrix_dim + 1)
    except Exception:
        pass
    out = Mat.identity(model.matrix_dim, a.ring)
    base = a if k >= 0 else a.inverse()
    e = abs(k)
    while e:
        if e & 1:
            out = out * base
        base = base * base
        e >>= 1
    return out


def act_on_flag(model: ModelSpec, g: Mat, p: ProjPoint, tol: float = 0.0) -> ProjPoint:
    """Left matrix action followed by canonical normalization.

    CR points must sit on the null-cone (exactly for exact inputs; floats use
    a scale-invariant residual against the squared coordinate norm).
    """
    if model.family == "cr":
        if p.is_exact:
            if not nullcone_contains(model, p):
                raise NotOnNullCone(f"point is off the null-cone of {model.tag}")
        else:
            from ..models import hermitian_form_value

            val = abs(hermitian_form_value(model, p))
            scale = sum(float(c.norm2()) for c in p.coords)
            if val > max(tol, 1e-9) * max(scale, 1.0):
                raise NotOnNullCone(f"point is off the null-cone of {model.tag}")
    col = g * p.column(g.ring)
    return ProjPoint.from_column(model.tag, col).canonical()


@dataclass
class OrbitReport:
    point: ProjPoint
    iterates: List[Tuple[int, ProjPoint, float]] = field(default_factory=list)
    converged: bool = False
    converged_at: Optional[int] = None
    is_fixed: bool = False
    monotone_tail: bool = True


def _orbit_schedule(k_max: int) -> List[int]:
    ks = list(range(1, min(9, k_max + 1)))
    k = 16
    while k < k_max:
        ks.append(k)
        k *= 2
    if k_max not in ks and k_max >= 1:
        ks.append(k_max)
    return sorted(set(ks))


def orbit_converges(
    model: ModelSpec, a: Mat, p: ProjPoint, k_max: int = 10_000, tol: float = 1e-6
) -> OrbitReport:
    """Iterate a^k . p and test chordal-gap convergence to the base point.

    Fixed points are flagged without iteration (exactly, for exact inputs);
    otherwise the sweep runs in floats on a doubling schedule of k values and
    `converged` requires a gap below tol at some k <= k_max with a
    non-increasing tail afterwards.
    """
    report = OrbitReport(point=p)
    moved = act_on_flag(model, a, p)
    if proj_equal(moved, p, tol=1e-18 if not p.is_exact else 0.0):
        report.is_fixed = True
        return report
    base = base_point(model).to_float()
    try:
        log_a = nilpotent_log(a, model.matrix_dim + 1).to_float()
    except Exception:
        log_a = None
    pf = p.to_float()
    for k in _orbit_schedule(k_max):
        if log_a is not None:
            ak = mat_exp_nilpotent(log_a.scale_left(Scalar(float(k))), model.matrix_dim + 1)
        else:
            ak = isotropy_power(model, a, k).to_float()
        pk = act_on_flag(model, ak, pf, tol=1e-6)
        gap = chordal_gap(pk, base)
        report.iterates.append((k, pk, gap))
    hit = None
    for idx, (k, _, gap) in enumerate(report.iterates):
        if gap < tol:
            hit = idx
            break
    if hit is not None:
        tail = [g for _, _, g in report.iterates[hit:]]
        report.monotone_tail = all(b <= a_ + 1e-15 for a_, b in zip(tail, tail[1:]))
        if report.monotone_tail:
            report.converged = True
            report.converged_at = report.iterates[hit][0]
    return report


# ---------------------------------------------------------------------------
# codimension probe
# ---------------------------------------------------------------------------

EXPECTED_CODIMENSION = {
    "cproj": 2,
    "hproj": 4,
    "cr-central": 2,
    "cr-noncentral": 4,
}


def fixed_residual(model: ModelSpec, scenario: str, p: ProjPoint) -> float:
    """Distance-like defect of the fixed-set equations at a canonical point."""
    c = p.canonical().to_float()
    if model.family in ("cproj", "hproj"):
        return abs(c.coords[1])
    n = model.matrix_dim
    if scenario == "cr-central":
        return abs(c.coords[n - 1])
    x = c.coords[1]
    last = c.coords[n - 1]
    return (float(x.norm2()) + float(last.norm2())) ** 0.5


def _leaving_curves(model: ModelSpec, scenario: str, p: ProjPoint) -> List[Callable[[float], ProjPoint]]:
    """Curves through p staying on the carrier, leaving Fix to first order."""
    coords = [c.to_float() for c in p.canonical().coords]
    n = model.matrix_dim

    if model.family in ("cproj", "hproj"):
        units = [Scalar(1.0), Scalar(0.0, 1.0)]
        if model.family == "hproj":
            units += [Scalar(0.0, 0.0, 1.0), Scalar(0.0, 0.0, 0.0, 1.0)]

        def make(unit):
            def curve(t: float) -> ProjPoint:
                cs = list(coords)
                cs[1] = cs[1] + unit.to_float() * Scalar(t)
                return ProjPoint(model.tag, cs)

            return curve

        return [make(u) for u in units]

    p_, q_ = model.params
    mid = model.middle
    r = coords[0]

    def with_slots(x=None, ys=None, c=None) -> ProjPoint:
        cs = list(coords)
        if x is not None:
            cs[1] = x
        if ys is not None:
            for a, val in enumerate(ys):
                cs[1 + a] = val
        if c is not None:
            cs[n - 1] = c
        return ProjPoint(model.tag, cs)

    def bumped(cs, slot, extra2):
        """Rescale |cs[slot]|^2 by +extra2; requires extra2 >= -|cs[slot]|^2."""
        cur2 = float(cs[slot].norm2())
        mag = max(cur2 + extra2, 0.0) ** 0.5
        phase = cs[slot] * Scalar(1.0 / abs(cs[slot])) if abs(cs[slot]) > 0 else Scalar(1.0)
        cs[slot] = phase * Scalar(mag)
        return cs

    if scenario == "cr-central":
        def curve_imag(t: float) -> ProjPoint:
            return with_slots(c=Scalar(0.0, t) * r)

        def curve_real(t: float) -> ProjPoint:
            # c = -t r direction; soak the form value into a positive slot
            cs = bumped(list(coords), 1, 2.0 * t * float(r.norm2()))
            cs[n - 1] = Scalar(-t) * r
            return ProjPoint(model.tag, cs)

        return [curve_imag, curve_real]

    # cr-noncentral: x-directions soak the last (negative) middle slot,
    # c-directions soak a positive y slot
    neg = mid

    def make_x(unit):
        def curve(t: float) -> ProjPoint:
            cs = list(coords)
            cs[1] = unit.to_float() * Scalar(t)
            cs = bumped(cs, neg, t * t)
            return ProjPoint(model.tag, cs)

        return curve

    def curve_c_imag(t: float) -> ProjPoint:
        return with_slots(c=Scalar(0.0, t) * r)

    def curve_c_real(t: float) -> ProjPoint:
        cs = bumped(list(coords), 2, 2.0 * t * float(r.norm2()))
        cs[n - 1] = Scalar(-t) * r
        return ProjPoint(model.tag, cs)

    return [make_x(Scalar(1.0)), make_x(Scalar(0.0, 1.0)), curve_c_imag, curve_c_real]


def _tangent_curve(model: ModelSpec, scenario: str, p: ProjPoint) -> Callable[[float], ProjPoint]:
    """A curve that stays inside the fixed set (used as a negative control)."""
    coords = [c.to_float() for c in p.canonical().coords]
    n = model.matrix_dim

    if model.family in ("cproj", "hproj"):
        def curve(t: float) -> ProjPoint:
            cs = list(coords)
            cs[n - 1] = cs[n - 1] + Scalar(t)
            return ProjPoint(model.tag, cs)

        return curve

    if scenario == "cr-central":
        # rotate the whole null middle vector by a phase: stays on the cone
        def curve(t: float) -> ProjPoint:
            import math as _m

            ph = Scalar(_m.cos(t), _m.sin(t))
            cs = list(coords)
            for a in range(1, n - 1):
                cs[a] = ph * cs[a]
            return ProjPoint(model.tag, cs)

        return curve

    def curve(t: float) -> ProjPoint:
        import math as _m

        ph = Scalar(_m.cos(t), _m.sin(t))
        cs = list(coords)
        for a in range(2, n - 1):
            cs[a] = ph * cs[a]
        return ProjPoint(model.tag, cs)

    return curve


def fixed_set_codimension_probe(model: ModelSpec, scenario: str, samples: List[ProjPoint]) -> dict:
    """Exhibit independent directions leaving Fix linearly at sampled points.

    Also runs one deliberately tangent curve per point and reports it as
    staying inside Fix.
    """
    expected = EXPECTED_CODIMENSION[scenario if scenario.startswith("cr") else model.family]
    h = 1e-4
    results = []
    for p in samples:
        curves = _leaving_curves(model, scenario, p)
        leaving = 0
        for curve in curves:
            res = [fixed_residual(model, scenario, curve(t)) for t in (h, 2 * h, 4 * h)]
            ratios = [res[1] / res[0] if res[0] > 0 else 0.0,
                      res[2] / res[1] if res[1] > 0 else 0.0]
            linear = res[0] > h / 10 and all(abs(rho - 2.0) < 0.4 for rho in ratios)
            if linear:
                leaving += 1
        tangent = _tangent_curve(model, scenario, p)
        tangent_res = max(fixed_residual(model, scenario, tangent(t)) for t in (h, 2 * h, 4 * h))
        results.append({
            "leaving_directions": leaving,
            "expected": expected,
            "tangent_flagged": tangent_res < 1e-9,
        })
    ok = all(r["leaving_directions"] >= r["expected"] and r["tangent_flagged"] for r in results)
    return {"scenario": scenario, "expected_codimension": expected, "points": results, "ok": ok}
