"""Shrinking paths in the CR isotropy and their arclength estimates.

For the non-central non-null isotropy a (normal form with the distinguished
middle direction first), the path beta_k(t) = beta0(t) beta_plus(t) in P is
chosen so that a^k exp(tX) beta_k(t)^-1 stays in the horospherical subgroup
G_-.  The closed forms below are stated for the timelike normal form; the
spacelike case runs through the exact big-cell factorization instead and is
validated by the same G_- pattern test.

The matrix Y_{k,t} (the body velocity of the trapped path) is the g_-
projection of Ad_{beta_k(t)}(X).  Its y-slot coefficient is
(1 - k^2 t^2 mu / 4) / (1+z)^2: the derivative of t y / (1+z), which the
exact computation confirms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from ..matrices import Mat, SingularMatrix, mat_exp_nilpotent
from ..models import (
    ModelSpec,
    NotInGroup,
    factor_big_cell,
    grading_project,
    in_G_minus,
    signature_matrix,
)
from ..scalars import Scalar, ZERO, ONE, I as IMAG
from .orbits import isotropy_power, standard_isotropy


class SingularZ(ArithmeticError):
    pass


class QuadratureUnstable(ArithmeticError):
    pass


def _as_scalar(v) -> Scalar:
    return v if isinstance(v, Scalar) else Scalar(v)


def _frame(model: ModelSpec, kind: str):
    """Distinguished middle slot and residual signature for the normal form."""
    p, q = model.params
    mid = model.middle
    if kind == "timelike":
        if p < 1:
            raise ValueError("timelike frame needs p >= 1")
        dist = 0
        rest = list(range(1, mid))
        signs = [1] * (p - 1) + [-1] * q
    elif kind == "spacelike":
        if q < 1:
            raise ValueError("spacelike frame needs q >= 1")
        dist = mid - 1
        rest = list(range(mid - 1))
        signs = [1] * p + [-1] * (q - 1)
    else:
        raise ValueError(kind)
    return dist, rest, signs


def horospherical_cr(model: ModelSpec, x, y: Sequence, tau, kind: str = "timelike") -> Mat:
    """The g_- element X with slots (x, y, tau i) in the chosen normal form."""
    n = model.matrix_dim
    dist, rest, signs = _frame(model, kind)
    x = _as_scalar(x)
    ys = [_as_scalar(v) for v in y]
    tau = _as_scalar(tau)
    if not tau.is_real():
        raise ValueError("tau must be real")
    if len(ys) != len(rest):
        raise ValueError(f"y must have length {len(rest)}")
    sig_d = 1 if kind == "timelike" else -1
    out = Mat.zeros(n, ring=model.ring)
    out.rows[1 + dist][0] = x
    out.rows[n - 1][1 + dist] = -(x.conj() * Scalar(sig_d))
    for a, (idx, s) in enumerate(zip(rest, signs)):
        out.rows[1 + idx][0] = ys[a]
        out.rows[n - 1][1 + idx] = -(ys[a].conj() * Scalar(s))
    out.rows[n - 1][0] = IMAG * tau
    return out


def form_mu(model: ModelSpec, x, y: Sequence, kind: str = "timelike") -> Scalar:
    """mu = sigma_d |x|^2 + conj(y)^T I_sub y (real)."""
    _, _, signs = _frame(model, kind)
    x = _as_scalar(x)
    total = x.conj() * x if kind == "timelike" else -(x.conj() * x)
    for s, v in zip(signs, (_as_scalar(v) for v in y)):
        term = v.conj() * v
        total = total + (term if s > 0 else -term)
    return total


def z_value(model: ModelSpec, x, y: Sequence, tau, k: int, t, kind: str = "timelike") -> Scalar:
    """z_k(t, X); 1 + z is the leading entry of a^k exp(tX)."""
    x, tau, t = _as_scalar(x), _as_scalar(tau), _as_scalar(t)
    mu = form_mu(model, x, y, kind)
    kt = Scalar(k) * t
    quad = kt * kt * mu / Scalar(4)
    imag = IMAG * (Scalar(k) * kt * tau / Scalar(2))
    if kind == "timelike":
        return kt * x + quad - imag
    return kt * x - quad + imag


def beta_closed(model: ModelSpec, x, y: Sequence, tau, k: int, t) -> Tuple[Mat, Mat]:
    """(beta0, beta_plus) of the timelike normal form, exact.

    beta_plus is unipotent (its trailing diagonal entry is 1).  Raises
    SingularZ when 1 + z vanishes.
    """
    n = model.matrix_dim
    dist, rest, signs = _frame(model, "timelike")
    x = _as_scalar(x)
    ys = [_as_scalar(v) for v in y]
    t = _as_scalar(t)
    kt = Scalar(k) * t
    z = z_value(model, x, ys, tau, k, t, "timelike")
    opz = ONE + z
    if opz.is_zero():
        raise SingularZ("1 + z = 0")
    opzb = opz.conj()
    w = opz.inv()
    wb = opzb.inv()
    muy = ZERO
    for s, v in zip(signs, ys):
        term = v.conj() * v
        muy = muy + (term if s > 0 else -term)
    k2t = Scalar(k) * kt
    k2t2 = kt * kt

    b0 = Mat.zeros(n, ring=model.ring)
    b0.rows[0][0] = opz
    b0.rows[1][1] = opzb * w - k2t2 * muy * w / Scalar(2)
    for a, (idx, s) in enumerate(zip(rest, signs)):
        b0.rows[1][1 + idx] = (kt * (kt * x + Scalar(2)) / Scalar(2)) * w * (ys[a].conj() * Scalar(s))
        b0.rows[1 + idx][1] = -(kt * (kt * x.conj() + Scalar(2)) / Scalar(2)) * w * ys[a]
    for a, (ia, sa) in enumerate(zip(rest, signs)):
        for b_, (ib, sb) in enumerate(zip(rest, signs)):
            delta = ONE if ia == ib else ZERO
            b0.rows[1 + ia][1 + ib] = delta - (k2t2 / Scalar(2)) * w * ys[a] * (ys[b_].conj() * Scalar(sb))
    b0.rows[n - 1][n - 1] = wb

    bp = Mat.identity(n, model.ring)
    bp.rows[0][1] = Scalar(k) * (kt * x.conj() + Scalar(2)) * w / Scalar(2)
    for a, (idx, s) in enumerate(zip(rest, signs)):
        bp.rows[0][1 + idx] = (k2t / Scalar(2)) * w * (ys[a].conj() * Scalar(s))
        bp.rows[1 + idx][n - 1] = -(k2t / Scalar(2)) * wb * ys[a]
    bp.rows[0][n - 1] = -(Scalar(k) * Scalar(k) / Scalar(2)) * w
    bp.rows[1][n - 1] = -(Scalar(k) * (kt * x + Scalar(2)) / Scalar(2)) * wb
    return b0, bp


def closed_form_Y(model: ModelSpec, x, y: Sequence, tau, k: int, t) -> Mat:
    """The displayed g_- projection Y_{k,t} (timelike), with the corrected
    y-slot coefficient (1 - k^2 t^2 mu / 4)."""
    n = model.matrix_dim
    dist, rest, signs = _frame(model, "timelike")
    x = _as_scalar(x)
    ys = [_as_scalar(v) for v in y]
    t = _as_scalar(t)
    tau = _as_scalar(tau)
    mu = form_mu(model, x, ys, "timelike")
    z = z_value(model, x, ys, tau, k, t, "timelike")
    opz = ONE + z
    if opz.is_zero():
        raise SingularZ("1 + z = 0")
    opz2_inv = (opz * opz).inv()
    nrm_inv = (opz * opz.conj()).inv()
    kt = Scalar(k) * t
    a4 = ONE + kt * kt * mu / Scalar(4)
    a4m = ONE - kt * kt * mu / Scalar(4)
    yx = (a4 * x + kt * mu - IMAG * (Scalar(k) * tau)) * opz2_inv
    ytau = tau * nrm_inv
    out = Mat.zeros(n, ring=model.ring)
    out.rows[1 + dist][0] = yx
    out.rows[n - 1][1 + dist] = -yx.conj()
    for a, (idx, s) in enumerate(zip(rest, signs)):
        yy = a4m * opz2_inv * ys[a]
        out.rows[1 + idx][0] = yy
        out.rows[n - 1][1 + idx] = -(yy.conj() * Scalar(s))
    out.rows[n - 1][0] = IMAG * ytau
    return out


@dataclass
class CRPathStep:
    beta0: Mat
    beta_plus: Mat
    beta: Mat
    g_minus: Mat
    Y: Mat
    z: Optional[Scalar]
    trapped: bool
    matches_display: Optional[bool]


def cr_shrinking_paths(
    model: ModelSpec, x, y: Sequence, tau, k: int, t, kind: str = "timelike"
) -> CRPathStep:
    """Build beta_k(t), trap a^k exp(tX) in G_-, and extract Y_{k,t}.

    Timelike: the closed-form displays (checked against the exact big-cell
    factorization and the displayed Y).  Spacelike: factorization route with
    the same pattern tests; beta0/beta_plus are the factor parts.
    """
    tau_s = _as_scalar(tau)
    if tau_s.is_zero():
        raise ValueError("tau must be nonzero: the central direction must move")
    a = standard_isotropy(model, kind)
    big_x = horospherical_cr(model, x, y, tau, kind)
    ak = isotropy_power(model, a, k)
    g = ak * mat_exp_nilpotent(big_x.scale_left(_as_scalar(t)), model.matrix_dim)
    if g[0, 0].is_zero():
        raise SingularZ("a^k exp(tX) left the big cell (1 + z = 0)")
    if kind == "timelike":
        b0, bp = beta_closed(model, x, y, tau, k, t)
        z = z_value(model, x, y, tau, k, t, kind)
        beta = b0 * bp
        matches = None
    else:
        gm, g0, pp = factor_big_cell(model, g)
        b0, bp = g0, pp
        beta = g0 * pp
        z = None
        matches = None
    g_minus = g * beta.inverse()
    trapped = in_G_minus(model, g_minus, tol=0.0 if g_minus.is_exact else 1e-9)
    if not trapped:
        raise NotInGroup("beta failed to trap a^k exp(tX) in G_-")
    ad_x = beta * big_x * beta.inverse()
    Y = grading_project(model, ad_x, -1) + grading_project(model, ad_x, -2)
    if kind == "timelike":
        matches = Y == closed_form_Y(model, x, y, tau, k, t) if Y.is_exact else \
            Y.close_to(closed_form_Y(model, x, y, tau, k, t), 1e-10)
    return CRPathStep(b0, bp, beta, g_minus, Y, z, trapped, matches)


def g_minus_norm2(model: ModelSpec, Y: Mat) -> float:
    """Positive-definite metric |x|^2 + conj(y)^T y + tau^2 on g_-."""
    n = model.matrix_dim
    total = 0.0
    for a in range(model.middle):
        total += float(Y[1 + a, 0].norm2())
    total += float(Y[n - 1, 0].b) ** 2
    return total


def metric_integrand(model: ModelSpec, x, y: Sequence, tau, k: int, kind: str = "timelike") -> Callable[[float], float]:
    """t -> sqrt(g(Y_{k,t}, Y_{k,t})) in floats."""
    if kind == "timelike":
        xs = _as_scalar(x).to_float()
        ys = [_as_scalar(v).to_float() for v in y]
        mu = float(form_mu(model, x, y, "timelike").a)
        tauf = float(_as_scalar(tau).a)
        xr, xi = xs.a, xs.b
        yy = sum(float(v.norm2()) for v in ys)

        def f(t: float) -> float:
            kt = k * t
            zr = kt * xr + kt * kt * mu / 4.0
            zi = kt * xi - k * kt * tauf / 2.0
            nz = (1.0 + zr) ** 2 + zi * zi
            if nz <= 0.0:
                raise QuadratureUnstable("|1+z| vanished on the path")
            a4 = 1.0 + kt * kt * mu / 4.0
            a4m = 1.0 - kt * kt * mu / 4.0
            nxr = a4 * xr + kt * mu
            nxi = a4 * xi - k * tauf
            num = nxr * nxr + nxi * nxi + a4m * a4m * yy + tauf * tauf
            return math.sqrt(num) / nz

        return f

    def f(t: float) -> float:
        step = cr_shrinking_paths(
            model,
            _as_scalar(x).to_float(),
            [_as_scalar(v).to_float() for v in y],
            _as_scalar(tau).to_float(),
            k,
            float(t),
            kind,
        )
        return math.sqrt(g_minus_norm2(model, step.Y))

    return f


def _simpson(f: Callable[[float], float], a: float, b: float, panels: int) -> float:
    h = (b - a) / panels
    total = f(a) + f(b)
    for i in range(1, panels):
        total += (4.0 if i % 2 else 2.0) * f(a + i * h)
    return total * h / 3.0


def graded_quadrature(f: Callable[[float], float], k: int, abs_tol: float = 1e-12,
                      start_panels: int = 64, max_panels: int = 1 << 14) -> float:
    """Composite Simpson on a geometrically graded mesh near t = 0.

    The integrand has a spike of width ~ 1/k^2 at the left endpoint, so
    uniform panels cannot resolve it for large k; dyadic segments keep every
    segment well sampled.  Panel counts double until two sweeps agree.
    """
    levels = max(12, 4 * math.ceil(math.log2(k + 2)) + 8)
    cuts = [0.0] + [2.0 ** (-j) for j in range(levels, -1, -1)]
    panels = start_panels
    prev = None
    while panels <= max_panels:
        total = 0.0
        for a, b in zip(cuts, cuts[1:]):
            total += _simpson(f, a, b, panels)
        if prev is not None and abs(total - prev) <= abs_tol:
            return total
        prev = total
        panels *= 2
    raise QuadratureUnstable("composite quadrature did not stabilize")


def closed_form_bound(model: ModelSpec, x, y: Sequence, tau, k: int) -> Optional[float]:
    """The arctan/log upper bound on the arclength (timelike normal form).

    Valid once c_k - Re(x)^2 > 0 (k large enough); returns None below that
    threshold.  The t^2 coefficient carries the corrected -|y|^2 sign forced
    by the corrected y slot of Y_{k,t}.
    """
    xs = _as_scalar(x).to_float()
    xr, xi = xs.a, xs.b
    tauf = float(_as_scalar(tau).a)
    mu = float(form_mu(model, x, y, "timelike").a)
    yy = sum(float(_as_scalar(v).norm2()) for v in y)
    x2 = xr * xr + xi * xi
    gxx = x2 + yy + tauf * tauf
    ck = mu / 2.0 + (xi - k * tauf / 2.0) ** 2
    disc = ck - xr * xr
    if disc <= 0.0:
        return None
    rt = math.sqrt(disc)
    at_hi = math.atan((k * ck + xr) / rt)
    at_lo = math.atan(xr / rt)
    f1 = (at_hi - at_lo) / (k * rt)
    log_term = math.log(k * k * ck + 2.0 * k * xr + 1.0)
    f2 = (1.0 - (xr / (k * ck)) * log_term
          - ((ck - 2.0 * xr * xr) / (k * ck * rt)) * (at_hi - at_lo)) / (k * k * ck)
    fk = math.sqrt(max(gxx - 2.0 * k * tauf * (xi - k * tauf / 2.0), 0.0))
    fk += math.sqrt(abs(2.0 * k * mu * xr))
    fk += k * math.sqrt(abs(mu / 2.0 * (x2 - yy - k * tauf * xi + 2.0 * mu)))
    fk += k * abs(mu) * math.sqrt(k * abs(xr) / 2.0)
    return fk * f1 + (k * k * abs(mu) / 4.0) * math.sqrt(x2 + yy) * f2


@dataclass
class ShrinkReport:
    k_list: List[int]
    arclengths: List[float]
    bounds: List[Optional[float]]
    bound_satisfied: bool
    verdict: str
    final_below: Optional[float] = None


def shrinking_arclength(
    model: ModelSpec,
    x,
    y: Sequence,
    tau,
    k_list: Sequence[int],
    kind: str = "timelike",
    quadrature_tol: float = 1e-12,
    tol_final: float = 0.01,
    bound_rel_tol: float = 1e-8,
) -> ShrinkReport:
    """Quadrature arclengths of the trapped paths over k_list, with bounds.

    Verdict SHRINKS iff the arclength sequence is eventually strictly
    decreasing and ends below tol_final.
    """
    if _as_scalar(tau).is_zero():
        raise ValueError("tau = 0: the leading entry never grows and nothing shrinks")
    arclengths = []
    bounds = []
    bound_ok = True
    for k in k_list:
        f = metric_integrand(model, x, y, tau, k, kind)
        val = graded_quadrature(f, k, abs_tol=quadrature_tol)
        arclengths.append(val)
        if kind == "timelike":
            b = closed_form_bound(model, x, y, tau, k)
            bounds.append(b)
            if b is not None and val > b * (1.0 + bound_rel_tol) + 1e-12:
                bound_ok = False
        else:
            bounds.append(None)
    decreasing = all(b < a for a, b in zip(arclengths, arclengths[1:]))
    verdict = "SHRINKS" if decreasing and arclengths and arclengths[-1] < tol_final else "INCONCLUSIVE"
    return ShrinkReport(list(k_list), arclengths, bounds, bound_ok, verdict, arclengths[-1] if arclengths else None)


# ---------------------------------------------------------------------------
# characteristic polynomial of the beta0 middle block
# ---------------------------------------------------------------------------

def _det(mat: List[List[Scalar]]) -> Scalar:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = ZERO
    sign = ONE
    for c in range(n):
        minor = [row[:c] + row[c + 1:] for row in mat[1:]]
        total = total + sign * mat[0][c] * _det(minor)
        sign = -sign
    return total


def verify_characteristic_polynomial(
    model: ModelSpec, x, y: Sequence, tau, k: int, t, lambdas: Sequence
) -> bool:
    """det(lambda 1 - M) for the beta0 middle block against the closed form.

    The closed form is (lambda-1)^(mid-2) ((lambda - (1+zbar)/(1+z))(lambda-1)
    + k^2 t^2 (conj(y)^T I y)/(1+z) lambda), degenerating to
    lambda - (1+zbar)/(1+z) when the y block is empty.
    """
    mid = model.middle
    b0, _ = beta_closed(model, x, y, tau, k, t)
    z = z_value(model, x, y, tau, k, t, "timelike")
    opz = ONE + z
    if opz.is_zero():
        raise SingularZ("1 + z = 0")
    a0 = opz.conj() * opz.inv()
    _, _, signs = _frame(model, "timelike")
    muy = ZERO
    for s, v in zip(signs, (_as_scalar(w) for w in y)):
        term = v.conj() * v
        muy = muy + (term if s > 0 else -term)
    kt = Scalar(k) * _as_scalar(t)
    for lam in lambdas:
        lam = _as_scalar(lam)
        mat = [[(lam if i == j else ZERO) - b0[1 + i, 1 + j] for j in range(mid)] for i in range(mid)]
        det = _det(mat)
        core = (lam - a0) * (lam - ONE) + kt * kt * muy * opz.inv() * lam
        if mid >= 2:
            expected = core
            for _ in range(mid - 2):
                expected = expected * (lam - ONE)
        else:
            expected = lam - a0
        if det.exact and expected.exact:
            if det != expected:
                return False
        elif abs(det - expected) > 1e-9:
            return False
    return True
