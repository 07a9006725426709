"""Matrices over the scalar rings, with division-ring-safe elimination.

A `Mat` carries a ring tag from {"R", "C", "H", "QI"}.  Tags "QI" and exact
"R" admit zero-tolerance equality; "H" matrices never rely on commutativity:
inversion is Gaussian elimination phrased purely through left row operations,
and scalar rescaling always names its side (`scale_left` / `scale_right`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .scalars import Scalar, ZERO, ONE

RING_TAGS = ("R", "C", "H", "QI")


class DimensionMismatch(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


class NonConvergence(ArithmeticError):
    pass


class SingularMatrix(ArithmeticError):
    pass


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, float):
        return Scalar(x)
    return Scalar(Fraction(x))


class Mat:
    """A rectangular matrix of Scalars (square in all group/algebra uses)."""

    __slots__ = ("rows", "n", "m", "ring")

    def __init__(self, rows: Sequence[Sequence], ring: str = "QI"):
        if ring not in RING_TAGS:
            raise ValueError(f"unknown ring tag {ring!r}")
        self.rows = [[_as_scalar(x) for x in row] for row in rows]
        self.n = len(self.rows)
        self.m = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.m for r in self.rows):
            raise DimensionMismatch("ragged rows")
        self.ring = ring

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int, ring: str = "QI") -> "Mat":
        return Mat([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], ring)

    @staticmethod
    def zeros(n: int, m: int | None = None, ring: str = "QI") -> "Mat":
        m = n if m is None else m
        return Mat([[ZERO] * m for _ in range(n)], ring)

    @staticmethod
    def column(entries: Iterable, ring: str = "QI") -> "Mat":
        return Mat([[x] for x in entries], ring)

    def copy(self) -> "Mat":
        return Mat([row[:] for row in self.rows], self.ring)

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def with_entry(self, i: int, j: int, value) -> "Mat":
        out = self.copy()
        out.rows[i][j] = _as_scalar(value)
        return out

    @property
    def is_exact(self) -> bool:
        return all(x.exact for row in self.rows for x in row)

    def to_float(self) -> "Mat":
        return Mat([[x.to_float() for x in row] for row in self.rows], self.ring)

    def column_entries(self, j: int = 0):
        return [self.rows[i][j] for i in range(self.n)]

    # -- arithmetic --------------------------------------------------------

    def _check_same_shape(self, other: "Mat"):
        if self.n != other.n or self.m != other.m:
            raise DimensionMismatch(f"{self.n}x{self.m} vs {other.n}x{other.m}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(
            [[self.rows[i][j] + other.rows[i][j] for j in range(self.m)] for i in range(self.n)],
            self.ring,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(
            [[self.rows[i][j] - other.rows[i][j] for j in range(self.m)] for i in range(self.n)],
            self.ring,
        )

    def __neg__(self) -> "Mat":
        return Mat([[-x for x in row] for row in self.rows], self.ring)

    def __mul__(self, other: "Mat") -> "Mat":
        if self.m != other.n:
            raise DimensionMismatch(f"{self.n}x{self.m} times {other.n}x{other.m}")
        out = []
        for i in range(self.n):
            row = []
            for j in range(other.m):
                s = ZERO
                for t in range(self.m):
                    s = s + self.rows[i][t] * other.rows[t][j]
                row.append(s)
            out.append(row)
        return Mat(out, self.ring)

    def scale_left(self, s) -> "Mat":
        """s * M entrywise (group-action side)."""
        s = _as_scalar(s)
        return Mat([[s * x for x in row] for row in self.rows], self.ring)

    def scale_right(self, s) -> "Mat":
        """M * s entrywise (homogeneous-coordinate side)."""
        s = _as_scalar(s)
        return Mat([[x * s for x in row] for row in self.rows], self.ring)

    def transpose(self) -> "Mat":
        return Mat([[self.rows[i][j] for i in range(self.n)] for j in range(self.m)], self.ring)

    def conj_transpose(self) -> "Mat":
        return Mat([[self.rows[i][j].conj() for i in range(self.n)] for j in range(self.m)], self.ring)

    def trace(self) -> Scalar:
        if self.n != self.m:
            raise DimensionMismatch("trace of non-square matrix")
        s = ZERO
        for i in range(self.n):
            s = s + self.rows[i][i]
        return s

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def norm(self) -> float:
        """Frobenius norm (float)."""
        return math.sqrt(sum(float(x.norm2()) for row in self.rows for x in row))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        if self.n != other.n or self.m != other.m:
            return False
        return all(
            self.rows[i][j] == other.rows[i][j] for i in range(self.n) for j in range(self.m)
        )

    def __hash__(self):
        return hash((self.n, self.m, tuple(tuple(row) for row in self.rows)))

    def close_to(self, other: "Mat", tol: float) -> bool:
        self._check_same_shape(other)
        return (self - other).norm() <= tol

    def inverse(self) -> "Mat":
        """Inverse by Gaussian elimination using left row operations only.

        Valid over the quaternions: row operations are left multiplications
        by elementary matrices, so the result is a genuine two-sided inverse.
        """
        if self.n != self.m:
            raise DimensionMismatch("inverse of non-square matrix")
        n = self.n
        aug = [self.rows[i][:] + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if not aug[r][col].is_zero():
                    piv = r
                    break
            if piv is None:
                raise SingularMatrix("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv_p = aug[col][col].inv()
            aug[col] = [inv_p * x for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [aug[r][j] - f * aug[col][j] for j in range(2 * n)]
        return Mat([row[n:] for row in aug], self.ring)

    def __repr__(self) -> str:
        return f"Mat({self.rows!r}, ring={self.ring!r})"


def ad(g: Mat, x: Mat) -> Mat:
    """Adjoint action g x g^-1."""
    return g * x * g.inverse()


def commutator(x: Mat, y: Mat) -> Mat:
    return x * y - y * x


def mat_exp_nilpotent(x: Mat, nilpotency_bound: int) -> Mat:
    """Finite exponential series for nilpotent x; exact on exact input.

    Raises NotNilpotent when x**nilpotency_bound != 0.
    """
    if x.n != x.m:
        raise DimensionMismatch("exp of non-square matrix")
    power = Mat.identity(x.n, x.ring)
    total = Mat.identity(x.n, x.ring)
    fact = 1
    for j in range(1, nilpotency_bound + 1):
        power = power * x
        if power.is_zero():
            return total
        fact *= j
        total = total + power.scale_left(Scalar(Fraction(1, fact)))
    raise NotNilpotent(f"x^{nilpotency_bound} != 0")


def nilpotent_log(g: Mat, nilpotency_bound: int) -> Mat:
    """Finite Mercator series log(1 + N) for unipotent g = 1 + N; exact."""
    n = g - Mat.identity(g.n, g.ring)
    power = Mat.identity(g.n, g.ring)
    total = Mat.zeros(g.n, ring=g.ring)
    for j in range(1, nilpotency_bound + 1):
        power = power * n
        if power.is_zero():
            return total
        sign = Fraction(1, j) if j % 2 == 1 else Fraction(-1, j)
        total = total + power.scale_left(Scalar(sign))
    raise NotNilpotent(f"(g-1)^{nilpotency_bound} != 0")


def mat_exp_general(x: Mat, tol: float = 1e-12) -> Mat:
    """Scaling-and-squaring Taylor exponential for float matrices.

    Post-checks ||exp(x) exp(-x) - 1|| < tol and raises NonConvergence
    otherwise.
    """
    if x.n != x.m:
        raise DimensionMismatch("exp of non-square matrix")
    xf = x.to_float()
    nrm = xf.norm()
    squarings = max(0, math.ceil(math.log2(nrm)) + 1) if nrm > 0.5 else 0
    scaled = xf.scale_left(Scalar(0.5**squarings)) if squarings else xf

    total = Mat.identity(x.n, x.ring).to_float()
    term = Mat.identity(x.n, x.ring).to_float()
    for j in range(1, 80):
        term = (term * scaled).scale_left(Scalar(1.0 / j))
        total = total + term
        if term.norm() < 1e-18 * max(1.0, total.norm()):
            break
    else:
        raise NonConvergence("series did not converge")
    for _ in range(squarings):
        total = total * total

    neg = _exp_series_only((-x).to_float())
    if (total * neg - Mat.identity(x.n, x.ring).to_float()).norm() >= tol:
        raise NonConvergence("residual test exp(x) exp(-x) = 1 failed")
    return total


def _exp_series_only(xf: Mat) -> Mat:
    nrm = xf.norm()
    squarings = max(0, math.ceil(math.log2(nrm)) + 1) if nrm > 0.5 else 0
    scaled = xf.scale_left(Scalar(0.5**squarings)) if squarings else xf
    total = Mat.identity(xf.n, xf.ring).to_float()
    term = total
    for j in range(1, 80):
        term = (term * scaled).scale_left(Scalar(1.0 / j))
        total = total + term
        if term.norm() < 1e-18 * max(1.0, total.norm()):
            break
    for _ in range(squarings):
        total = total * total
    return total


def parallel_map(fn: Callable, items: Sequence):
    """Map preserving order; uses threads when CARTAN_LAB_THREADS > 1.

    The work items must be independent (all lab operations are pure), so the
    ordered collection keeps results deterministic.
    """
    import os

    workers = int(os.environ.get("CARTAN_LAB_THREADS", "1") or "1")
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
