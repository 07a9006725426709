"""Points of the model flag manifolds in homogeneous coordinates.

A point is a nonzero coordinate column up to RIGHT multiplication by a
nonzero scalar of the model's coordinate ring (C for the complex projective
and CR models, H acting on the right for quaternionic projective space).
The canonical representative right-divides by the first nonzero entry.
"""

from __future__ import annotations

import math
from typing import Sequence

from .matrices import DimensionMismatch, Mat
from .scalars import Scalar, ZERO, ONE


class ProjPoint:
    """Homogeneous coordinates up to right scalar rescaling."""

    __slots__ = ("model_tag", "coords")

    def __init__(self, model_tag: str, coords: Sequence):
        self.model_tag = model_tag
        cs = []
        for x in coords:
            if isinstance(x, Mat):
                raise TypeError("coords must be scalars")
            cs.append(x if isinstance(x, Scalar) else Scalar(x))
        if all(c.is_zero() for c in cs):
            raise ValueError("homogeneous coordinates must not all vanish")
        self.coords = tuple(cs)

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def is_exact(self) -> bool:
        return all(c.exact for c in self.coords)

    def canonical(self) -> "ProjPoint":
        """Right-normalize so the first nonzero entry is 1."""
        for c in self.coords:
            if not c.is_zero():
                s = c.inv()
                return ProjPoint(self.model_tag, [x * s for x in self.coords])
        raise ValueError("zero coordinate vector")

    def column(self, ring: str) -> Mat:
        return Mat.column(self.coords, ring)

    @staticmethod
    def from_column(model_tag: str, col: Mat) -> "ProjPoint":
        return ProjPoint(model_tag, [col[i, 0] for i in range(col.n)])

    def scaled_right(self, s: Scalar) -> "ProjPoint":
        return ProjPoint(self.model_tag, [x * s for x in self.coords])

    def to_float(self) -> "ProjPoint":
        return ProjPoint(self.model_tag, [x.to_float() for x in self.coords])

    def __repr__(self) -> str:
        return f"ProjPoint({self.model_tag!r}, {list(self.coords)!r})"


def _inner(p: ProjPoint, q: ProjPoint) -> Scalar:
    """Hermitian pairing sum_i conj(p_i) q_i (left-conjugated)."""
    s = ZERO
    for a, b in zip(p.coords, q.coords):
        s = s + a.conj() * b
    return s


def _norm2(p: ProjPoint) -> float:
    return sum(float(c.norm2()) for c in p.coords)


def chordal_gap(p: ProjPoint, q: ProjPoint) -> float:
    """Squared chordal displacement min over unit scalars s of ||p^ - q^ s||^2.

    Equals 2 - 2 |<p^, q^>| on unit representatives; the minimizer over the
    right scalar action is the same for C and H coordinates.  This gap is the
    convergence functional used by the orbit reports: it vanishes exactly at
    equal points and decays quadratically in the chordal angle.
    """
    if len(p) != len(q):
        raise DimensionMismatch("points of different coordinate dimension")
    np2, nq2 = _norm2(p), _norm2(q)
    inner = _inner(p, q)
    val = 2.0 - 2.0 * math.sqrt(float(inner.norm2()) / (np2 * nq2))
    return max(val, 0.0)


def proj_equal(p: ProjPoint, q: ProjPoint, tol: float = 0.0) -> bool:
    """Equality up to the model's right scalar action.

    Exact coordinates are compared exactly through canonical forms
    (tol is ignored for exact inputs); float coordinates use the chordal
    gap with the supplied tolerance.
    """
    if p.model_tag != q.model_tag:
        raise DimensionMismatch(f"model {p.model_tag!r} vs {q.model_tag!r}")
    if len(p) != len(q):
        raise DimensionMismatch("points of different coordinate dimension")
    if p.is_exact and q.is_exact:
        pc, qc = p.canonical(), q.canonical()
        return all(a == b for a, b in zip(pc.coords, qc.coords))
    return chordal_gap(p, q) <= tol
