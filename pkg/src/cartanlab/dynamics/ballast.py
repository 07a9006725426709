"""Ballast matrices of the projective models and their eigenstructure.

All displayed matrices live in the fine block decomposition 1 | 1 | m-1 of
PGL_(m+1): entry (0,*) and (1,*) rows are the two distinguished lines and the
trailing block has size m-1.  Over the quaternions the scalar fractions are
right divisions (y * (1+ktx)^-1); this is the order that makes the
factorization identity hold when multiplied out, and it reduces to the
commutative formula over C.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from ..curvature import CurvatureTensorValue, curvature_rep_action
from ..matrices import Mat, ad, mat_exp_nilpotent
from ..models import ModelSpec, canonicalize_algebra, group_equal
from ..scalars import Scalar, ZERO, ONE


class SingularParameter(ArithmeticError):
    pass


def _as_scalar(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


def horospherical_projective(model: ModelSpec, x, y: Sequence) -> Mat:
    """The g_- element with parameters (x, y) in the fine blocks."""
    n = model.matrix_dim
    x = _as_scalar(x)
    ys = [_as_scalar(v) for v in y]
    if len(ys) != n - 2:
        raise ValueError(f"y must have length {n - 2}")
    out = Mat.zeros(n, ring=model.ring)
    out.rows[1][0] = x
    for j, v in enumerate(ys):
        out.rows[2 + j][0] = v
    return out


def ballast_projective(model: ModelSpec, x, y: Sequence, k: int, t=1):
    """The ballast matrix b_k(t) of the projective scenarios.

    Entries: (1+ktx, k) on the first row, 1/(1+ktx) in the middle, and
    -kt y (1+ktx)^-1 feeding the trailing block.  Returns (matrix, advisory)
    where the advisory flags negative real x, for which the attracting
    direction is k -> -infinity.
    """
    n = model.matrix_dim
    x = _as_scalar(x)
    ys = [_as_scalar(v) for v in y]
    t = _as_scalar(t)
    kt = Scalar(k) * t
    w = ONE + kt * x
    if w.is_zero():
        raise SingularParameter("1 + ktx = 0")
    winv = w.inv()
    b = Mat.zeros(n, ring=model.ring)
    b.rows[0][0] = w
    b.rows[0][1] = Scalar(k)
    b.rows[1][1] = winv
    for j in range(n - 2):
        b.rows[2 + j][1] = -(kt * (ys[j] * winv))
        b.rows[2 + j][2 + j] = ONE
    advisory = None
    if x.is_real() and x.a < 0:
        advisory = "negative real x: iterate with k -> -infinity"
    return b, advisory


def verify_factorization_identity(model: ModelSpec, x, y: Sequence, t, k: int) -> bool:
    """Check a^k exp(tX) = exp((t/(1+ktx)) X) b_k(t) as group elements.

    Exact over exact scalars (both C and H); raises SingularParameter when
    1 + ktx = 0.
    """
    n = model.matrix_dim
    x = _as_scalar(x)
    ys = [_as_scalar(v) for v in y]
    t = _as_scalar(t)
    w = ONE + Scalar(k) * t * x
    if w.is_zero():
        raise SingularParameter("1 + ktx = 0")
    a = Mat.identity(n, model.ring).with_entry(0, 1, ONE)
    ak = Mat.identity(n, model.ring).with_entry(0, 1, Scalar(k))
    big_x = horospherical_projective(model, x, ys)
    lhs = ak * mat_exp_nilpotent(big_x.scale_left(t), 2)
    c = t * w.inv()
    rescaled = horospherical_projective(model, x * c, [v * c for v in ys])
    b, _ = ballast_projective(model, x, ys, k, t)
    rhs = mat_exp_nilpotent(rescaled, 2) * b
    return group_equal(model, lhs, rhs)


# ---------------------------------------------------------------------------
# eigenvector families of the complex ballast (fine blocks 1 | 1 | m-1)
# ---------------------------------------------------------------------------

@dataclass
class EigenFamily:
    name: str
    free_params: int
    member: Callable[..., Mat]      # free params -> algebra element
    eigenvalue: Callable[[Scalar, int], Scalar]  # (x, k) -> lambda


def eigenvector_families(model: ModelSpec, x, y: Sequence) -> List[EigenFamily]:
    """The six displayed eigenvector families of Ad_{b_k} (complex case m = 2).

    Free parameters are scalars; x must be nonzero and the eigenvalues also
    need 2 + kx != 0 for the fractional entries to exist.
    """
    if model.family != "cproj" or model.matrix_dim != 3:
        raise ValueError("eigen families are recorded for cproj:2")
    x = _as_scalar(x)
    if x.is_zero():
        raise SingularParameter("x = 0")
    yv = _as_scalar(y[0])
    n = 3

    def frac(k):
        w = ONE + Scalar(k) * x
        u = Scalar(2) + Scalar(k) * x
        if u.is_zero():
            raise SingularParameter("2 + kx = 0")
        return w, u, w / u  # (1+kx, 2+kx, ratio)

    def pplus_line(beta):
        beta = _as_scalar(beta)
        m = Mat.zeros(n)
        m.rows[0][1] = -(beta * yv / x)
        m.rows[0][2] = beta
        return m

    def e12():
        return Mat.zeros(n).with_entry(0, 1, ONE)

    def family_a(k):
        w, u, r = frac(k)
        m = Mat.zeros(n)
        m.rows[0][0] = -(x * r)
        m.rows[0][1] = -(r * r)
        m.rows[1][0] = x * x
        m.rows[1][1] = x * r
        m.rows[2][0] = x * yv
        m.rows[2][1] = r * yv
        return m

    def family_b(k, v, beta):
        v, beta = _as_scalar(v), _as_scalar(beta)
        w, u, r = frac(k)
        m = Mat.zeros(n)
        m.rows[0][1] = w * beta * yv / (x * u)
        m.rows[0][2] = -(r * beta)
        m.rows[1][1] = -(beta * yv)
        m.rows[1][2] = x * beta
        m.rows[2][0] = x * v
        m.rows[2][1] = r * v - beta * yv * yv / x
        m.rows[2][2] = yv * beta
        return m

    def family_c(k, r1, r2, rr):
        # solving Ad_b m = m on this span forces the (2,1) entry
        # r2 y - R y / x (the pure-R direction alone is not invariant)
        r1, r2, rr = _as_scalar(r1), _as_scalar(r2), _as_scalar(rr)
        w, u, r = frac(k)
        m = Mat.zeros(n)
        m.rows[0][0] = r1 * x
        m.rows[0][1] = (r1 - r2) * r
        m.rows[1][1] = r2 * x
        m.rows[2][1] = r2 * yv - rr * yv / x
        m.rows[2][2] = rr
        return m

    def family_d(v, beta):
        v, beta = _as_scalar(v), _as_scalar(beta)
        m = Mat.zeros(n)
        m.rows[0][1] = -(beta * yv / x)
        m.rows[0][2] = beta
        m.rows[2][1] = v
        return m

    one = lambda x_, k: ONE

    def pow_lam(p):
        def f(x_, k):
            w = ONE + Scalar(k) * x_
            out = ONE
            base = w if p >= 0 else w.inv()
            for _ in range(abs(p)):
                out = out * base
            return out

        return f

    return [
        EigenFamily("p_plus_line", 1, lambda k, beta: pplus_line(beta), pow_lam(1)),
        EigenFamily("p_plus_top", 0, lambda k: e12(), pow_lam(2)),
        EigenFamily("g_lowest", 0, family_a, pow_lam(-2)),
        EigenFamily("g_mixed_lower", 2, family_b, pow_lam(-1)),
        EigenFamily("g_levi", 3, family_c, one),
        EigenFamily("g_mixed_upper", 2, lambda k, v, beta: family_d(v, beta), pow_lam(1)),
    ]


def verify_eigenstructure_projective(model: ModelSpec, x, y: Sequence, k: int, param_draws) -> dict:
    """Check Ad_{b_k} v = lambda v exactly for every displayed family.

    `param_draws` supplies scalar tuples for the free family parameters.
    Returns a report with per-family residual counts (all zero on success).
    """
    x = _as_scalar(x)
    b, _ = ballast_projective(model, x, y, k)
    families = eigenvector_families(model, x, y)
    report = {"families": [], "ok": True}
    for fam in families:
        failures = 0
        checked = 0
        lam = fam.eigenvalue(x, k)
        for params in param_draws(fam.free_params):
            v = fam.member(k, *params)
            got = ad(b, v)
            want = v.scale_left(lam)
            diff = canonicalize_algebra(model, got - want)
            checked += 1
            if not diff.is_zero():
                failures += 1
        report["families"].append(
            {"name": fam.name, "eigenvalue": repr(lam), "checked": checked, "failures": failures}
        )
        if failures:
            report["ok"] = False
    return report


# ---------------------------------------------------------------------------
# divergence of curvature-type values under a ballast sequence
# ---------------------------------------------------------------------------

def divergence_test(
    model: ModelSpec,
    ballast_gen: Callable[[int], Mat],
    w: CurvatureTensorValue,
    k_list: Sequence[int],
    growth_threshold: float = 1e6,
) -> dict:
    """Track ||b_k . w|| over k_list.

    Verdicts: DIVERGES when the norm exceeds growth_threshold times the
    initial norm, EXEMPT when w is supported entirely on the slot
    Lambda^2 g_1 (x) g_-2 excluded by regularity, INCONCLUSIVE otherwise.
    """
    norms = []
    base = w.norm()
    if w.is_zero():
        return {"verdict": "INCONCLUSIVE", "norms": [(k, 0.0) for k in k_list],
                "note": "zero value stays zero"}
    exempt = all(
        tuple(sorted(w.grades_of_term(key)[:2])) == (1, 1) and w.grades_of_term(key)[2] == -2
        for key in w.terms
    )
    if exempt and model.family == "cr":
        return {"verdict": "EXEMPT", "norms": [], "note": "supported on the regularity-excluded slot"}
    verdict = "INCONCLUSIVE"
    for k in k_list:
        bk = ballast_gen(k)
        moved = curvature_rep_action(model, bk, w)
        norms.append((k, moved.norm()))
        if moved.norm() > growth_threshold * base:
            verdict = "DIVERGES"
            break
    return {"verdict": verdict, "norms": norms, "initial_norm": base}
