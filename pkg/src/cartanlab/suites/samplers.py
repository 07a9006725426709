"""Seeded samplers for the verification suites.

Coordinate magnitudes are bounded and the orbit samplers keep the moving
slot away from zero, so the squared-chordal gaps at the final iterate sit
well inside the convergence tolerance.  Null-cone points are built exactly:
the last coordinate absorbs the form value, with Pythagorean unit scalars
supplying exact equal-modulus pairs for the fixed sets.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Tuple

from ..models import ModelSpec, nullcone_contains
from ..projective import ProjPoint
from ..scalars import Scalar, ZERO, ONE, I as IMAG, qi, quat

PYTHAGOREAN_PHASES = [
    qi(1), qi(0, 1), qi(-1), qi(0, -1),
    qi(Fraction(3, 5), Fraction(4, 5)), qi(Fraction(-3, 5), Fraction(4, 5)),
    qi(Fraction(4, 5), Fraction(-3, 5)), qi(Fraction(5, 13), Fraction(12, 13)),
]


def rand_qi(rng: random.Random, span: int = 2, den: int = 2) -> Scalar:
    return qi(Fraction(rng.randint(-span, span), rng.randint(1, den)),
              Fraction(rng.randint(-span, span), rng.randint(1, den)))


def rand_quat(rng: random.Random, span: int = 2, den: int = 2) -> Scalar:
    return quat(*(Fraction(rng.randint(-span, span), rng.randint(1, den)) for _ in range(4)))


def rand_qi_dominant(rng: random.Random) -> Scalar:
    """Gaussian rational with max-component at least one."""
    while True:
        s = rand_qi(rng)
        if max(abs(s.a), abs(s.b)) >= 1:
            return s


def rand_quat_dominant(rng: random.Random) -> Scalar:
    while True:
        s = rand_quat(rng)
        if float(s.norm2()) >= 1:
            return s


def null_point(model: ModelSpec, r: Scalar, middle: List[Scalar], s_im: Fraction) -> ProjPoint:
    p, q = model.params
    signs = [1] * p + [-1] * q
    form = ZERO
    for sign, v in zip(signs, middle):
        term = v.conj() * v
        form = form + (term if sign > 0 else -term)
    c = r.conj().inv() * (IMAG * Scalar(s_im) - form / Scalar(2))
    return ProjPoint(model.tag, [r, *middle, c])


def nonzero(rng: random.Random, draw) -> Scalar:
    while True:
        s = draw(rng)
        if not s.is_zero():
            return s


def orbit_samples(model: ModelSpec, scenario: str, rng: random.Random, count: int) -> List[ProjPoint]:
    """Non-fixed points whose orbits reach the base point within the budget."""
    out: List[ProjPoint] = []
    n = model.matrix_dim
    while len(out) < count:
        if model.family == "cproj":
            coords = [rand_qi(rng), rand_qi_dominant(rng)] + [rand_qi(rng) for _ in range(n - 2)]
            out.append(ProjPoint(model.tag, coords))
        elif model.family == "hproj":
            coords = [rand_quat(rng), rand_quat_dominant(rng)] + [rand_quat(rng) for _ in range(n - 2)]
            out.append(ProjPoint(model.tag, coords))
        else:
            r = nonzero(rng, lambda g: rand_qi(g))
            middle = [rand_qi(rng) for _ in range(n - 2)]
            s_im = Fraction(rng.choice([-4, -3, 3, 4]))
            pt = null_point(model, r, middle, s_im)
            if scenario == "cr-noncentral" and pt.coords[n - 1].is_zero():
                continue
            if scenario == "cr-central" and pt.coords[n - 1].is_zero():
                continue
            out.append(pt)
    return out


def fixed_samples(model: ModelSpec, scenario: str, rng: random.Random, count: int) -> List[ProjPoint]:
    """Exactly fixed points of the scenario isotropy."""
    out: List[ProjPoint] = []
    n = model.matrix_dim
    while len(out) < count:
        if model.family in ("cproj", "hproj"):
            draw = rand_quat if model.family == "hproj" else rand_qi
            r = nonzero(rng, lambda g: draw(g))
            coords = [r, ZERO] + [draw(rng) for _ in range(n - 2)]
            out.append(ProjPoint(model.tag, coords))
        elif scenario == "cr-central":
            # c = 0 on the cone forces a null middle vector: |x| = |y| pairs
            r = nonzero(rng, lambda g: rand_qi(g))
            y = nonzero(rng, lambda g: rand_qi(g))
            phase = rng.choice(PYTHAGOREAN_PHASES)
            middle = [phase * y] + [ZERO] * (n - 4) + [y]
            coords = [r, *middle, ZERO]
            pt = ProjPoint(model.tag, coords)
            assert nullcone_contains(model, pt)
            out.append(pt)
        else:
            # x = c = 0 with a null rest vector (first and last rest slots)
            r = nonzero(rng, lambda g: rand_qi(g))
            y = nonzero(rng, lambda g: rand_qi(g))
            phase = rng.choice(PYTHAGOREAN_PHASES)
            rest = [phase * y] + [ZERO] * (n - 5) + [y]
            coords = [r, ZERO, *rest, ZERO]
            pt = ProjPoint(model.tag, coords)
            assert nullcone_contains(model, pt)
            out.append(pt)
    return out


def carrier_samples(model: ModelSpec, rng: random.Random, count: int) -> List[ProjPoint]:
    """General flag-manifold points (on the cone for the cr family)."""
    out: List[ProjPoint] = []
    n = model.matrix_dim
    while len(out) < count:
        if model.family in ("cproj", "hproj"):
            draw = rand_quat if model.family == "hproj" else rand_qi
            coords = [draw(rng) for _ in range(n)]
            if all(c.is_zero() for c in coords):
                continue
            out.append(ProjPoint(model.tag, coords))
        else:
            r = nonzero(rng, lambda g: rand_qi(g))
            middle = [rand_qi(rng) for _ in range(n - 2)]
            out.append(null_point(model, r, middle, Fraction(rng.randint(-4, 4))))
    return out
