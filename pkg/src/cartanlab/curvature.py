"""Curvature-type tensor values in Lambda^2 p_+ (x) g and the isotropy action.

Values are stored sparsely over a fixed REAL basis of the model algebra,
adapted to the grading, with antisymmetrized wedge slots drawn from the
positive-grade part.  The quaternionic projective family is not carried
here: every eigenvalue-style statement this module checks is made over R or
C, and the quaternionic case is handled at the group level elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .matrices import Mat, ad
from .models import ModelSpec, NotInP, canonicalize_algebra, grading_project, in_P, signature_matrix
from .scalars import Scalar, ZERO, ONE, I as IMAG


@dataclass(frozen=True)
class BasisElement:
    index: int
    grade: int
    mat: Mat


class UnsupportedModel(ValueError):
    pass


def algebra_basis(model: ModelSpec) -> List[BasisElement]:
    """Real basis of the model algebra, each element of pure grade."""
    if model.family == "cproj":
        return _basis_cproj(model)
    if model.family == "cr":
        return _basis_cr(model)
    if model.family in ("aff", "euc"):
        return _basis_aff(model)
    raise UnsupportedModel(
        f"tensor machinery is defined over R/C only, not for {model.family}"
    )


def _basis_cproj(model: ModelSpec) -> List[BasisElement]:
    n = model.matrix_dim
    out: List[BasisElement] = []

    def grade_of(i, j):
        if i > 0 and j == 0:
            return -1
        if i == 0 and j > 0:
            return 1
        return 0

    idx = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for unit in (ONE, IMAG):
                m = Mat.zeros(n).with_entry(i, j, unit)
                out.append(BasisElement(idx, grade_of(i, j), m))
                idx += 1
    for a in range(n - 1):
        for unit in (ONE, IMAG):
            m = Mat.zeros(n).with_entry(a, a, unit).with_entry(a + 1, a + 1, -unit)
            out.append(BasisElement(idx, 0, m))
            idx += 1
    return out


def _cr_g1_elem(model: ModelSpec, beta: Sequence[Scalar]) -> Mat:
    n = model.matrix_dim
    sig = signature_matrix(*model.params)
    m = Mat.zeros(n)
    for a, b in enumerate(beta):
        m.rows[0][1 + a] = b
        m.rows[1 + a][n - 1] = -(sig[a, a] * b.conj())
    return m


def _cr_gm1_elem(model: ModelSpec, v: Sequence[Scalar]) -> Mat:
    n = model.matrix_dim
    sig = signature_matrix(*model.params)
    m = Mat.zeros(n)
    for a, x in enumerate(v):
        m.rows[1 + a][0] = x
        m.rows[n - 1][1 + a] = -(x.conj() * sig[a, a])
    return m


def _basis_cr(model: ModelSpec) -> List[BasisElement]:
    n = model.matrix_dim
    mid = model.middle
    sig = signature_matrix(*model.params)
    out: List[BasisElement] = []
    idx = 0

    def push(grade, m):
        nonlocal idx
        out.append(BasisElement(idx, grade, m))
        idx += 1

    push(-2, Mat.zeros(n).with_entry(n - 1, 0, IMAG))
    for a in range(mid):
        for unit in (ONE, IMAG):
            v = [unit if b == a else ZERO for b in range(mid)]
            push(-1, _cr_gm1_elem(model, v))
    # g_0: the r slot (r, 0, -conj(r)) and u(p,q) in the middle block.
    # Classes are taken in the gauge where the LAST middle diagonal entry has
    # zero imaginary part, which absorbs the central direction i*1.
    push(0, Mat.zeros(n).with_entry(0, 0, ONE).with_entry(n - 1, n - 1, -ONE))
    push(0, Mat.zeros(n).with_entry(0, 0, IMAG).with_entry(n - 1, n - 1, IMAG))
    for a in range(mid - 1):
        push(0, Mat.zeros(n).with_entry(1 + a, 1 + a, IMAG))
    for a in range(mid):
        for b in range(a + 1, mid):
            ss = sig[a, a] * sig[b, b]
            m1 = Mat.zeros(n).with_entry(1 + a, 1 + b, ONE).with_entry(1 + b, 1 + a, -ss)
            m2 = Mat.zeros(n).with_entry(1 + a, 1 + b, IMAG).with_entry(1 + b, 1 + a, IMAG * ss)
            push(0, m1)
            push(0, m2)
    for a in range(mid):
        for unit in (ONE, IMAG):
            beta = [unit if b == a else ZERO for b in range(mid)]
            push(1, _cr_g1_elem(model, beta))
    push(2, Mat.zeros(n).with_entry(0, n - 1, IMAG))
    return out


def _basis_aff(model: ModelSpec) -> List[BasisElement]:
    n = model.matrix_dim
    out: List[BasisElement] = []
    idx = 0
    for a in range(n - 1):
        out.append(BasisElement(idx, -1, Mat.zeros(n, ring="R").with_entry(a, n - 1, ONE)))
        idx += 1
    if model.family == "aff":
        for a in range(n - 1):
            for b in range(n - 1):
                out.append(BasisElement(idx, 0, Mat.zeros(n, ring="R").with_entry(a, b, ONE)))
                idx += 1
    else:
        for a in range(n - 1):
            for b in range(a + 1, n - 1):
                m = Mat.zeros(n, ring="R").with_entry(a, b, ONE).with_entry(b, a, -ONE)
                out.append(BasisElement(idx, 0, m))
                idx += 1
    return out


def coords_in_basis(model: ModelSpec, x: Mat):
    """Real coordinates of an algebra element in `algebra_basis` order."""
    y = canonicalize_algebra(model, x)
    n = model.matrix_dim
    if model.family == "cproj":
        coords = []
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                coords.append(y[i, j].a)
                coords.append(y[i, j].b)
        partial_re = 0
        partial_im = 0
        for a in range(n - 1):
            partial_re = partial_re + y[a, a].a
            partial_im = partial_im + y[a, a].b
            coords.append(partial_re)
            coords.append(partial_im)
        return coords
    if model.family == "cr":
        mid = model.middle
        # renormalize the class to the zero-last-middle-diagonal gauge
        lam = y[mid, mid].b
        if lam != 0:
            y = y - Mat.identity(n, y.ring).scale_left(Scalar(0, lam) if not isinstance(lam, float) else Scalar(0.0, lam))
        coords = [y[n - 1, 0].b]
        for a in range(mid):
            coords.append(y[1 + a, 0].a)
            coords.append(y[1 + a, 0].b)
        coords.append(y[0, 0].a)
        coords.append(y[0, 0].b)
        for a in range(mid - 1):
            coords.append(y[1 + a, 1 + a].b)
        for a in range(mid):
            for b in range(a + 1, mid):
                coords.append(y[1 + a, 1 + b].a)
                coords.append(y[1 + a, 1 + b].b)
        for a in range(mid):
            coords.append(y[0, 1 + a].a)
            coords.append(y[0, 1 + a].b)
        coords.append(y[0, n - 1].b)
        return coords
    if model.family in ("aff", "euc"):
        coords = [y[a, n - 1].a for a in range(n - 1)]
        if model.family == "aff":
            for a in range(n - 1):
                for b in range(n - 1):
                    coords.append(y[a, b].a)
        else:
            for a in range(n - 1):
                for b in range(a + 1, n - 1):
                    coords.append(y[a, b].a)
        return coords
    raise UnsupportedModel(model.family)


class CurvatureTensorValue:
    """Sparse element of Lambda^2 p_+ (x) g with real coefficients.

    Terms are keyed by (i, j, w): i < j index positive-grade basis elements
    (the wedge slots) and w indexes the full algebra basis (the target slot).
    """

    def __init__(self, model: ModelSpec, terms: Dict[Tuple[int, int, int], object] | None = None):
        self.model = model
        self.basis = algebra_basis(model)
        self.plus_indices = [b.index for b in self.basis if b.grade > 0]
        self.terms: Dict[Tuple[int, int, int], object] = {}
        for key, c in (terms or {}).items():
            self._accumulate(key, c)

    def _accumulate(self, key, coeff):
        i, j, w = key
        if i == j or coeff == 0:
            return
        if i > j:
            i, j = j, i
            coeff = -coeff
        cur = self.terms.get((i, j, w), 0)
        new = cur + coeff
        if new == 0:
            self.terms.pop((i, j, w), None)
        else:
            self.terms[(i, j, w)] = new

    @staticmethod
    def from_triples(model: ModelSpec, triples: Sequence[Tuple[Mat, Mat, Mat, object]]):
        """Expand (Z1, Z2, W, coeff) matrix triples over the model basis."""
        value = CurvatureTensorValue(model)
        basis = value.basis
        for z1, z2, w, coeff in triples:
            c1 = coords_in_basis(model, z1)
            c2 = coords_in_basis(model, z2)
            cw = coords_in_basis(model, w)
            for b in basis:
                if b.grade <= 0 and (c1[b.index] != 0 or c2[b.index] != 0):
                    raise ValueError("wedge slots must lie in p_+")
            for b1 in basis:
                if b1.grade <= 0 or c1[b1.index] == 0:
                    continue
                for b2 in basis:
                    if b2.grade <= 0 or c2[b2.index] == 0:
                        continue
                    for bw in basis:
                        if cw[bw.index] == 0:
                            continue
                        value._accumulate(
                            (b1.index, b2.index, bw.index),
                            coeff * c1[b1.index] * c2[b2.index] * cw[bw.index],
                        )
        return value

    def is_zero(self) -> bool:
        return not self.terms

    def norm(self) -> float:
        return math.sqrt(sum(float(c) * float(c) for c in self.terms.values()))

    def grades_of_term(self, key):
        i, j, w = key
        return (self.basis[i].grade, self.basis[j].grade, self.basis[w].grade)

    def restricted_to_slot(self, wedge_grades: Tuple[int, int], target_grade: int):
        """Sub-value supported on one graded slot (order-insensitive wedge)."""
        want = tuple(sorted(wedge_grades))
        picked = {
            k: c
            for k, c in self.terms.items()
            if tuple(sorted(self.grades_of_term(k)[:2])) == want
            and self.grades_of_term(k)[2] == target_grade
        }
        return CurvatureTensorValue(self.model, picked)

    def __eq__(self, other):
        return isinstance(other, CurvatureTensorValue) and self.terms == other.terms

    def __repr__(self):
        return f"CurvatureTensorValue({self.model.tag}, {len(self.terms)} terms)"


def _ad_matrix(model: ModelSpec, b: Mat):
    """Real matrix of Ad_b on the algebra basis (columns = transformed basis)."""
    basis = algebra_basis(model)
    binv = b.inverse()
    cols = []
    for be in basis:
        img = b * be.mat * binv
        cols.append(coords_in_basis(model, img))
    return cols  # cols[l][k]: coefficient of basis_k in Ad_b(basis_l)


def curvature_rep_action(model: ModelSpec, b: Mat, w: CurvatureTensorValue) -> CurvatureTensorValue:
    """Apply Ad_b to every tensor slot; requires b in P."""
    if not in_P(model, b, tol=1e-9):
        raise NotInP("the acting element must lie in P")
    cols = _ad_matrix(model, b)
    out = CurvatureTensorValue(model)
    plus = set(w.plus_indices)
    for (i, j, t), coeff in w.terms.items():
        ci, cj, ct = cols[i], cols[j], cols[t]
        for i2 in plus:
            if ci[i2] == 0:
                continue
            for j2 in plus:
                if cj[j2] == 0:
                    continue
                for t2 in range(len(ct)):
                    if ct[t2] == 0:
                        continue
                    out._accumulate((i2, j2, t2), coeff * ci[i2] * cj[j2] * ct[t2])
    return out


def regularity_check(model: ModelSpec, w: CurvatureTensorValue) -> bool:
    """True iff no component violates positive filtration homogeneity.

    A term with wedge grades (g1, g2) and target grade gw violates when
    gw <= -(g1 + g2); for the cr family the only expressible violating slot
    is Lambda^2 g_1 (x) g_-2.
    """
    for key in w.terms:
        g1, g2, gw = w.grades_of_term(key)
        if gw <= -(g1 + g2):
            return False
    return True
