"""Registered model geometries and their subgroup/grading structure.

Five families are registered, addressable by string tags:

    cproj:m   complex projective space CP^m        (blocks 1 | m)
    hproj:m   quaternionic projective space HP^m   (blocks 1 | m)
    cr:p,q    the null-cone of the signature-(p,q) Hermitian form
              on C^(p+q+2)                          (blocks 1 | p+q | 1)
    aff:m     affine space R^m with GL_m isotropy   (blocks m | 1)
    euc:m     Euclidean space R^m with O(m) isotropy

Each model knows its grading projectors, the block patterns of the subgroups
G_-, G_0, P_+ and P, projective equality of group elements, and an exact
big-cell factorization M = g_- g_0 p_+ used to derive isotropy path data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .matrices import DimensionMismatch, Mat, SingularMatrix, nilpotent_log
from .projective import ProjPoint
from .scalars import Scalar, ZERO, ONE, I as IMAG


class NotInAlgebra(ValueError):
    pass


class NotInGroup(ValueError):
    pass


class NotInP(ValueError):
    pass


class NotOnNullCone(ValueError):
    pass


@dataclass(frozen=True)
class ModelSpec:
    """One registered model geometry."""

    family: str              # cproj | hproj | cr | aff | euc
    params: tuple            # (m,) or (p, q)
    matrix_dim: int
    ring: str                # scalar ring tag of the matrix realization
    grades: tuple            # grading degrees carried by the model algebra
    flag_dim: int            # real dimension of G/H

    @property
    def tag(self) -> str:
        if self.family == "cr":
            return f"cr:{self.params[0]},{self.params[1]}"
        return f"{self.family}:{self.params[0]}"

    @property
    def depth(self) -> int:
        return max(self.grades)

    # block bookkeeping for the cr family
    @property
    def middle(self) -> int:
        p, q = self.params
        return p + q


def get_model(tag: str) -> ModelSpec:
    """Look a model up by its string tag, e.g. 'cproj:2' or 'cr:1,1'."""
    name, _, rest = tag.partition(":")
    if name == "cproj":
        m = int(rest)
        if m < 1:
            raise ValueError("cproj needs m >= 1")
        return ModelSpec("cproj", (m,), m + 1, "QI", (-1, 0, 1), 2 * m)
    if name == "hproj":
        m = int(rest)
        if m < 1:
            raise ValueError("hproj needs m >= 1")
        return ModelSpec("hproj", (m,), m + 1, "H", (-1, 0, 1), 4 * m)
    if name == "cr":
        p, q = (int(s) for s in rest.split(","))
        if p + q < 1:
            raise ValueError("cr needs p+q >= 1")
        return ModelSpec("cr", (p, q), p + q + 2, "QI", (-2, -1, 0, 1, 2), 2 * (p + q) + 1)
    if name == "aff":
        m = int(rest)
        return ModelSpec("aff", (m,), m + 1, "R", (-1, 0), m)
    if name == "euc":
        m = int(rest)
        return ModelSpec("euc", (m,), m + 1, "R", (-1, 0), m)
    raise ValueError(f"unknown model tag {tag!r}")


# ---------------------------------------------------------------------------
# Hermitian form of the cr family
# ---------------------------------------------------------------------------

def signature_matrix(p: int, q: int, ring: str = "QI") -> Mat:
    """Diagonal matrix with p entries +1 followed by q entries -1."""
    n = p + q
    rows = [[(ONE if i == j and i < p else (-ONE if i == j else ZERO)) for j in range(n)] for i in range(n)]
    return Mat(rows, ring)


def form_matrix(model: ModelSpec) -> Mat:
    """The Hermitian matrix J with h(u, v) = conj(u)^T J v."""
    if model.family != "cr":
        raise ValueError("form_matrix is specific to the cr family")
    p, q = model.params
    n = model.matrix_dim
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][n - 1] = ONE
    rows[n - 1][0] = ONE
    for a in range(p + q):
        rows[1 + a][1 + a] = ONE if a < p else -ONE
    return Mat(rows, model.ring)


def hermitian_form_value(model: ModelSpec, point: ProjPoint) -> Scalar:
    """Value of the quadratic form 2 Re(conj(z_0) z_last) + sum +-|z_a|^2."""
    if model.family != "cr":
        raise ValueError("hermitian form is specific to the cr family")
    if len(point) != model.matrix_dim:
        raise DimensionMismatch("coordinate dimension mismatch")
    p, q = model.params
    z = point.coords
    val = z[0].conj() * z[-1] + z[-1].conj() * z[0]
    for a in range(p + q):
        term = z[1 + a].conj() * z[1 + a]
        val = val + (term if a < p else -term)
    return val


def nullcone_contains(model: ModelSpec, point: ProjPoint, tol: float = 0.0) -> bool:
    val = hermitian_form_value(model, point)
    if point.is_exact:
        return val.is_zero()
    return abs(val) <= tol


def base_point(model: ModelSpec) -> ProjPoint:
    coords = [ONE] + [ZERO] * (model.matrix_dim - 1)
    return ProjPoint(model.tag, coords)


# ---------------------------------------------------------------------------
# Algebra membership, canonicalization, grading
# ---------------------------------------------------------------------------

def canonicalize_algebra(model: ModelSpec, x: Mat) -> Mat:
    """Canonical representative of an algebra class.

    cproj: subtract (tr/n) 1 (center is C 1); hproj: subtract (Re tr / n) 1
    (center is R 1); cr: subtract (tr/n) 1, turning 'equal up to imaginary
    multiples of 1' into entrywise equality.  aff/euc need no adjustment.
    """
    if x.n != model.matrix_dim or x.m != model.matrix_dim:
        raise DimensionMismatch("wrong matrix dimension for model")
    n = x.n
    if model.family in ("cproj", "cr"):
        t = x.trace()
        shift = Scalar(Fraction(1, n)) if t.exact else Scalar(1.0 / n)
        return x - Mat.identity(n, x.ring).scale_left(t * shift)
    if model.family == "hproj":
        t = x.trace()
        return x - Mat.identity(n, x.ring).scale_left(Scalar(t.a / n))
    return x


def algebra_contains(model: ModelSpec, x: Mat, tol: float = 0.0) -> bool:
    """Pattern check that x lies in the model Lie algebra."""
    if x.n != model.matrix_dim or x.m != model.matrix_dim:
        return False
    if model.family == "cproj":
        return all(e.is_complex() for row in x.rows for e in row)
    if model.family == "hproj":
        return True
    if model.family == "cr":
        if not all(e.is_complex() for row in x.rows for e in row):
            return False
        tr_re = x.trace().a
        if x.is_exact:
            if tr_re != 0:
                return False
        elif abs(float(tr_re)) > tol * x.n:
            return False
        y = canonicalize_algebra(model, x)
        j = form_matrix(model)
        if not x.is_exact:
            j = j.to_float()
        resid = y.conj_transpose() * j + j * y
        return resid.is_zero() if x.is_exact else resid.norm() <= tol
    if model.family in ("aff", "euc"):
        n = x.n
        last_row_zero = all(x[n - 1, j].is_zero() for j in range(n))
        if not last_row_zero:
            return False
        if model.family == "euc":
            r = Mat([[x[i, j] for j in range(n - 1)] for i in range(n - 1)], x.ring)
            resid = r.transpose() + r
            return resid.is_zero() if x.is_exact else resid.norm() <= tol
        return True
    raise ValueError(model.family)


def grading_project(model: ModelSpec, x: Mat, i: int) -> Mat:
    """Component of x in the grading slot g_i (algebra input pattern-checked)."""
    if not algebra_contains(model, x, tol=1e-9):
        raise NotInAlgebra(f"matrix is not in the {model.tag} algebra")
    if i not in model.grades:
        raise ValueError(f"grade {i} not carried by {model.tag}")
    y = canonicalize_algebra(model, x)
    n = model.matrix_dim
    out = Mat.zeros(n, ring=x.ring)
    if model.family in ("cproj", "hproj"):
        if i == -1:
            for r in range(1, n):
                out.rows[r][0] = y[r, 0]
        elif i == 1:
            for c in range(1, n):
                out.rows[0][c] = y[0, c]
        else:
            out.rows[0][0] = y[0, 0]
            for r in range(1, n):
                for c in range(1, n):
                    out.rows[r][c] = y[r, c]
        return out
    if model.family == "cr":
        p, q = model.params
        mid = p + q
        sig = signature_matrix(p, q, x.ring)
        if i == -2:
            out.rows[n - 1][0] = y[n - 1, 0]
            return out
        if i == 2:
            out.rows[0][n - 1] = y[0, n - 1]
            return out
        if i == -1:
            v = [y[1 + a, 0] for a in range(mid)]
            for a in range(mid):
                out.rows[1 + a][0] = v[a]
                # mirrored row entry -conj(v)^T I
                out.rows[n - 1][1 + a] = -(v[a].conj() * sig[a, a])
            return out
        if i == 1:
            beta = [y[0, 1 + a] for a in range(mid)]
            for a in range(mid):
                out.rows[0][1 + a] = beta[a]
                out.rows[1 + a][n - 1] = -(sig[a, a] * beta[a].conj())
            return out
        out.rows[0][0] = y[0, 0]
        out.rows[n - 1][n - 1] = y[n - 1, n - 1]
        for a in range(mid):
            for b in range(mid):
                out.rows[1 + a][1 + b] = y[1 + a, 1 + b]
        return out
    # aff / euc: translations in grade -1, linear part in grade 0
    if i == -1:
        for r in range(n - 1):
            out.rows[r][n - 1] = y[r, n - 1]
    else:
        for r in range(n - 1):
            for c in range(n - 1):
                out.rows[r][c] = y[r, c]
    return out


# ---------------------------------------------------------------------------
# Group membership patterns and projective equality
# ---------------------------------------------------------------------------

def group_contains(model: ModelSpec, g: Mat, tol: float = 0.0) -> bool:
    if g.n != model.matrix_dim or g.m != model.matrix_dim:
        return False
    if model.family == "cr":
        j = form_matrix(model)
        if not g.is_exact:
            j = j.to_float()
        resid = g.conj_transpose() * j * g - j
        return resid.is_zero() if g.is_exact else resid.norm() <= tol
    if model.family == "euc":
        n = g.n
        if any(not g[n - 1, c].is_zero() for c in range(n - 1)) or g[n - 1, n - 1] != ONE:
            return False
        a = Mat([[g[i, c] for c in range(n - 1)] for i in range(n - 1)], g.ring)
        resid = a.transpose() * a - Mat.identity(n - 1, g.ring)
        return resid.is_zero() if g.is_exact else resid.norm() <= tol
    if model.family == "aff":
        n = g.n
        if any(not g[n - 1, c].is_zero() for c in range(n - 1)) or g[n - 1, n - 1] != ONE:
            return False
        try:
            Mat([[g[i, c] for c in range(n - 1)] for i in range(n - 1)], g.ring).inverse()
        except SingularMatrix:
            return False
        return True
    try:
        g.inverse()
    except SingularMatrix:
        return False
    return True


def group_equal(model: ModelSpec, a: Mat, b: Mat, tol: float = 0.0) -> bool:
    """Equality of group elements in the projective quotient.

    cproj: up to a nonzero complex scalar; hproj: up to a nonzero REAL
    scalar only; cr: up to a unit-modulus complex scalar; aff/euc: literal.
    """
    if a.n != b.n or a.m != b.m:
        return False
    if model.family in ("aff", "euc"):
        return a == b if a.is_exact and b.is_exact else a.close_to(b, tol)
    lam = None
    for i in range(a.n):
        for j in range(a.m):
            if not b[i, j].is_zero():
                lam = b[i, j].inv() * a[i, j]
                break
        if lam is not None:
            break
    if lam is None:
        return a.is_zero()
    if model.family == "hproj":
        if a.is_exact and b.is_exact:
            if not lam.is_real():
                return False
        elif abs(lam - Scalar(lam.a)) > max(tol, 1e-12) * max(1.0, abs(lam)):
            return False
    if model.family == "cr":
        unit_resid = lam * lam.conj() - ONE
        if a.is_exact and b.is_exact:
            if not unit_resid.is_zero():
                return False
        elif abs(unit_resid) > max(tol, 1e-12):
            return False
    scaled = b.scale_right(lam)
    if a.is_exact and b.is_exact:
        return a == scaled
    return a.close_to(scaled, tol)


def in_G_minus(model: ModelSpec, g: Mat, tol: float = 0.0) -> bool:
    """Exact (or tol-level) block-pattern membership test for G_-."""
    n = model.matrix_dim
    if g.n != n or g.m != n:
        return False
    exact = g.is_exact

    def zero(s: Scalar) -> bool:
        return s.is_zero() if exact else abs(s) <= tol

    def eq(s: Scalar, t: Scalar) -> bool:
        return s == t if exact else abs(s - t) <= tol

    if model.family in ("cproj", "hproj"):
        if not eq(g[0, 0], ONE):
            return False
        if any(not zero(g[0, c]) for c in range(1, n)):
            return False
        for r in range(1, n):
            for c in range(1, n):
                if not eq(g[r, c], ONE if r == c else ZERO):
                    return False
        return True
    if model.family == "cr":
        p, q = model.params
        mid = p + q
        sig = signature_matrix(p, q, g.ring)
        if not eq(g[0, 0], ONE) or not eq(g[n - 1, n - 1], ONE):
            return False
        if any(not zero(g[0, c]) for c in range(1, n)):
            return False
        if any(not zero(g[1 + a, n - 1]) for a in range(mid)):
            return False
        for a in range(mid):
            for b in range(mid):
                if not eq(g[1 + a, 1 + b], ONE if a == b else ZERO):
                    return False
        v = [g[1 + a, 0] for a in range(mid)]
        for a in range(mid):
            if not eq(g[n - 1, 1 + a], -(v[a].conj() * sig[a, a])):
                return False
        # bottom-left entry it - (1/2) conj(v)^T I v: real part forced
        u = g[n - 1, 0]
        vsv = ZERO
        for a in range(mid):
            vsv = vsv + v[a].conj() * sig[a, a] * v[a]
        resid = u + u.conj() + vsv
        return zero(resid)
    raise ValueError(f"G_- pattern undefined for {model.family}")


def in_P(model: ModelSpec, g: Mat, tol: float = 0.0) -> bool:
    """Block-upper-triangular pattern (plus group membership) for P."""
    n = model.matrix_dim
    if g.n != n or g.m != n:
        return False
    exact = g.is_exact

    def zero(s: Scalar) -> bool:
        return s.is_zero() if exact else abs(s) <= tol

    if not group_contains(model, g, tol=max(tol, 1e-9)):
        return False
    if model.family in ("cproj", "hproj"):
        return all(zero(g[r, 0]) for r in range(1, n))
    if model.family == "cr":
        if any(not zero(g[r, 0]) for r in range(1, n)):
            return False
        return all(zero(g[n - 1, c]) for c in range(1, n - 1))
    # aff/euc isotropy: linear part only
    return all(zero(g[r, n - 1]) for r in range(n - 1))


def in_P_plus(model: ModelSpec, g: Mat, tol: float = 0.0) -> bool:
    n = model.matrix_dim
    exact = g.is_exact

    def eq(s: Scalar, t: Scalar) -> bool:
        return s == t if exact else abs(s - t) <= tol

    if not in_P(model, g, tol):
        return False
    if model.family in ("cproj", "hproj"):
        return all(eq(g[i, i], ONE) for i in range(n)) and all(
            eq(g[r, c], ZERO) for r in range(1, n) for c in range(1, n) if r != c
        )
    if model.family == "cr":
        p, q = model.params
        mid = p + q
        sig = signature_matrix(p, q, g.ring)
        if not all(eq(g[i, i], ONE) for i in range(n)):
            return False
        for a in range(mid):
            for b in range(mid):
                if a != b and not eq(g[1 + a, 1 + b], ZERO):
                    return False
        beta = [g[0, 1 + a] for a in range(mid)]
        for a in range(mid):
            if not eq(g[1 + a, n - 1], -(sig[a, a] * beta[a].conj())):
                return False
        w = g[0, n - 1]
        bsb = ZERO
        for a in range(mid):
            bsb = bsb + beta[a] * sig[a, a] * beta[a].conj()
        return eq(w + w.conj(), -bsb)
    raise ValueError(f"P_+ undefined for {model.family}")


# ---------------------------------------------------------------------------
# Isotropy construction
# ---------------------------------------------------------------------------

@dataclass
class IsotropyParams:
    """Parameters of a P_+ element, with an optional G_0 part.

    cproj/hproj: `p_row` over the model ring.  cr: `beta` over C^(p+q) and a
    real `s`.  The optional G_0 part is (r, A).
    """

    p_row: Optional[Sequence] = None
    beta: Optional[Sequence] = None
    s: object = None
    g0_r: object = None
    g0_A: Optional[Mat] = None


@dataclass
class CRIsotropyInfo:
    non_null: bool
    beta_sig_beta: Scalar          # beta I_{p,q} conj(beta)^T, a real scalar
    top_right: Scalar              # i s - (1/2) beta I conj(beta)^T
    classification: Optional[str]  # timelike | spacelike | None


def build_isotropy(model: ModelSpec, params: IsotropyParams):
    """Build the P_+ (or P) element described by `params`.

    Returns the matrix for the projective models and `(matrix, CRIsotropyInfo)`
    for the cr family, where the info carries the non-null flag and the
    timelike/spacelike classification.
    """
    n = model.matrix_dim
    if model.family in ("cproj", "hproj"):
        row = [x if isinstance(x, Scalar) else Scalar(x) for x in (params.p_row or [])]
        if len(row) != n - 1:
            raise DimensionMismatch(f"p_row must have length {n - 1}")
        g = Mat.identity(n, model.ring)
        for c, x in enumerate(row):
            g.rows[0][1 + c] = x
        if params.g0_r is not None or params.g0_A is not None:
            g = _g0_projective(model, params) * g
        return g
    if model.family == "cr":
        p, q = model.params
        mid = p + q
        beta = [x if isinstance(x, Scalar) else Scalar(x) for x in (params.beta or [])]
        if len(beta) != mid:
            raise DimensionMismatch(f"beta must have length {mid}")
        s = params.s if params.s is not None else 0
        s_sc = s if isinstance(s, Scalar) else Scalar(s)
        if not s_sc.is_real():
            raise ValueError("s must be real")
        sig = signature_matrix(p, q, model.ring)
        bsb = ZERO
        for a in range(mid):
            bsb = bsb + beta[a] * sig[a, a] * beta[a].conj()
        top_right = IMAG * s_sc - bsb.rdiv(Scalar(2))
        g = Mat.identity(n, model.ring)
        for a in range(mid):
            g.rows[0][1 + a] = beta[a]
            g.rows[1 + a][n - 1] = -(sig[a, a] * beta[a].conj())
        g.rows[0][n - 1] = top_right
        non_null = not top_right.is_zero()
        classification = None
        if any(not b.is_zero() for b in beta):
            if bsb.a > 0:
                classification = "timelike"
            elif bsb.a < 0:
                classification = "spacelike"
        info = CRIsotropyInfo(non_null, bsb, top_right, classification)
        if params.g0_r is not None or params.g0_A is not None:
            g = _g0_cr(model, params) * g
        return g, info
    raise ValueError(f"isotropy construction undefined for {model.family}")


def _g0_projective(model: ModelSpec, params: IsotropyParams) -> Mat:
    n = model.matrix_dim
    r = params.g0_r if isinstance(params.g0_r, Scalar) else Scalar(params.g0_r if params.g0_r is not None else 1)
    a = params.g0_A if params.g0_A is not None else Mat.identity(n - 1, model.ring)
    g = Mat.zeros(n, ring=model.ring)
    g.rows[0][0] = r
    for i in range(n - 1):
        for j in range(n - 1):
            g.rows[1 + i][1 + j] = a[i, j]
    return g


def _g0_cr(model: ModelSpec, params: IsotropyParams) -> Mat:
    n = model.matrix_dim
    r = params.g0_r if isinstance(params.g0_r, Scalar) else Scalar(params.g0_r if params.g0_r is not None else 1)
    a = params.g0_A if params.g0_A is not None else Mat.identity(n - 2, model.ring)
    g = Mat.zeros(n, ring=model.ring)
    g.rows[0][0] = r
    g.rows[n - 1][n - 1] = r.conj().inv()
    for i in range(n - 2):
        for j in range(n - 2):
            g.rows[1 + i][1 + j] = a[i, j]
    return g


def isotropy_log_params(model: ModelSpec, g: Mat) -> IsotropyParams:
    """Recover P_+ parameters from the nilpotent logarithm of g (round trip)."""
    x = nilpotent_log(g, model.matrix_dim + 1)
    n = model.matrix_dim
    if model.family in ("cproj", "hproj"):
        return IsotropyParams(p_row=[x[0, c] for c in range(1, n)])
    if model.family == "cr":
        mid = model.middle
        beta = [x[0, 1 + a] for a in range(mid)]
        s_entry = x[0, n - 1]
        return IsotropyParams(beta=beta, s=Scalar(s_entry.b))
    raise ValueError(model.family)


def _random_algebra_sample(model: ModelSpec, rng) -> Mat:
    """A random exact algebra element assembled from the parameter slots."""
    from fractions import Fraction as F

    def rq():
        return Scalar(F(rng.randint(-2, 2), rng.randint(1, 2)),
                      F(rng.randint(-2, 2), rng.randint(1, 2)))

    n = model.matrix_dim
    if model.family in ("cproj",):
        return Mat([[rq() for _ in range(n)] for _ in range(n)])
    if model.family == "hproj":
        return Mat([[Scalar(*(F(rng.randint(-2, 2)) for _ in range(4)))
                     for _ in range(n)] for _ in range(n)], "H")
    if model.family == "cr":
        mid = model.middle
        sig = signature_matrix(*model.params)
        x = Mat.zeros(n)
        r = rq()
        x.rows[0][0] = r
        x.rows[n - 1][n - 1] = -r.conj()
        for a in range(mid):
            v, b = rq(), rq()
            x.rows[1 + a][0] = v
            x.rows[n - 1][1 + a] = -(v.conj() * sig[a, a])
            x.rows[0][1 + a] = b
            x.rows[1 + a][n - 1] = -(sig[a, a] * b.conj())
            x.rows[1 + a][1 + a] = x.rows[1 + a][1 + a] + Scalar(0, rng.randint(-2, 2))
        for a in range(mid):
            for b_ in range(a + 1, mid):
                w = rq()
                x.rows[1 + a][1 + b_] = w
                x.rows[1 + b_][1 + a] = -(sig[a, a] * w.conj() * sig[b_, b_])
        x.rows[n - 1][0] = Scalar(0, F(rng.randint(-3, 3), 2))
        x.rows[0][n - 1] = Scalar(0, F(rng.randint(-3, 3), 2))
        return x
    # aff / euc
    x = Mat.zeros(n, ring="R")
    for i in range(n - 1):
        x.rows[i][n - 1] = Scalar(F(rng.randint(-3, 3)))
        for j in range(n - 1):
            x.rows[i][j] = Scalar(F(rng.randint(-3, 3)))
    if model.family == "euc":
        for i in range(n - 1):
            for j in range(i, n - 1):
                x.rows[i][j] = -x.rows[j][i] if i != j else Scalar(0)
    return x


def commutator_grades_ok(model: ModelSpec, rng, draws: int = 3) -> bool:
    """Sampled check that [g_i, g_j] lands in g_(i+j)."""
    from .matrices import commutator

    for _ in range(draws):
        x = _random_algebra_sample(model, rng)
        y = _random_algebra_sample(model, rng)
        for gi in model.grades:
            for gj in model.grades:
                br = commutator(grading_project(model, x, gi), grading_project(model, y, gj))
                target = gi + gj
                if target in model.grades:
                    if grading_project(model, br, target) != canonicalize_algebra(model, br):
                        return False
                elif not canonicalize_algebra(model, br).is_zero():
                    return False
    return True


# ---------------------------------------------------------------------------
# Exact big-cell factorization M = g_- g_0 p_+
# ---------------------------------------------------------------------------

def factor_big_cell(model: ModelSpec, g: Mat):
    """Factor g as (g_minus, g_zero, p_plus); exact over exact scalars.

    Raises SingularMatrix when g lies outside the big cell (vanishing
    leading entry), NotInGroup when the quotient fails the P patterns.
    """
    n = model.matrix_dim
    if g.n != n or g.m != n:
        raise DimensionMismatch("wrong dimension")
    if model.family in ("cproj", "hproj"):
        if g[0, 0].is_zero():
            raise SingularMatrix("outside the big cell")
        gm = Mat.identity(n, g.ring)
        inv00 = g[0, 0].inv()
        for r in range(1, n):
            gm.rows[r][0] = g[r, 0] * inv00
        quo = gm.inverse() * g
        g0 = Mat.zeros(n, ring=g.ring)
        g0.rows[0][0] = quo[0, 0]
        for i in range(1, n):
            for j in range(1, n):
                g0.rows[i][j] = quo[i, j]
        pp = g0.inverse() * quo
        if not in_P_plus(model, pp, tol=1e-9):
            raise NotInGroup("unexpected P_+ pattern failure")
        return gm, g0, pp
    if model.family == "cr":
        if g[0, 0].is_zero():
            raise SingularMatrix("outside the big cell")
        mid = model.middle
        inv00 = g[0, 0].inv()
        v = [g[1 + a, 0] * inv00 for a in range(mid)]
        u = g[n - 1, 0] * inv00
        gm = Mat.identity(n, g.ring)
        sig = signature_matrix(*model.params, g.ring)
        for a in range(mid):
            gm.rows[1 + a][0] = v[a]
            gm.rows[n - 1][1 + a] = -(v[a].conj() * sig[a, a])
        gm.rows[n - 1][0] = u
        if not in_G_minus(model, gm, tol=1e-9):
            raise NotInGroup("leading column is not of G_- shape")
        quo = gm.inverse() * g
        g0 = Mat.zeros(n, ring=g.ring)
        g0.rows[0][0] = quo[0, 0]
        g0.rows[n - 1][n - 1] = quo[n - 1, n - 1]
        for i in range(mid):
            for j in range(mid):
                g0.rows[1 + i][1 + j] = quo[1 + i, 1 + j]
        pp = g0.inverse() * quo
        if not in_P_plus(model, pp, tol=1e-9):
            raise NotInGroup("unexpected P_+ pattern failure")
        return gm, g0, pp
    raise ValueError(f"factorization undefined for {model.family}")
