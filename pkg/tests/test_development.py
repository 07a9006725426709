import math
import random
from fractions import Fraction

import pytest

from cartanlab.development import (
    NotALoop,
    PLPath,
    Segment,
    certify_backtracking,
    develop_path,
    holonomy_closure,
    loop_holonomy,
    polyline_path,
    translation_algebra,
    translation_matrix,
)
from cartanlab.matrices import Mat, mat_exp_nilpotent
from cartanlab.models import get_model
from cartanlab.scalars import Scalar, qi


def test_constant_path_develops_to_identity():
    path = PLPath([Segment((0, 0), (0, 0), None, 1)])
    dev = develop_path(path, 3)
    assert dev.endpoint == Mat.identity(3)


def test_torus_unit_loop_develops_to_lattice_translation():
    # horizontal unit loop on R^2/Z^2 lifts to translation by (1, 0)
    path = polyline_path([(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))])
    dev = develop_path(path, 3)
    assert dev.exact
    assert dev.endpoint == translation_matrix([1, 0])


def test_lattice_loop_general():
    pts = [(Fraction(0), Fraction(0)), (Fraction(2), Fraction(0)), (Fraction(2), Fraction(3))]
    path = polyline_path(pts)
    hol = loop_holonomy(path, 3, h_gamma=Mat.identity(3))
    assert hol == translation_matrix([2, 3])


def test_klein_one_parameter_subgroup():
    # gamma(t) = exp(tX) for X in g_-: development endpoint is exp(X)
    model = get_model("cproj:2")
    x = Mat.zeros(3).with_entry(1, 0, qi(1, 2)).with_entry(2, 0, qi(-1))
    path = PLPath([Segment(("e",), ("g",), x, 1)])
    dev = develop_path(path, 3)
    assert dev.endpoint == mat_exp_nilpotent(x, 3)


def test_development_multiplicative_over_concatenation():
    x1 = Mat.zeros(3).with_entry(1, 0, qi(1))
    x2 = Mat.zeros(3).with_entry(0, 1, qi(0, 2))
    p1 = PLPath([Segment((0,), (1,), x1, 1)])
    p2 = PLPath([Segment((1,), (2,), x2, Fraction(1, 2))])
    joint = p1.concat(p2)
    d1 = develop_path(p1, 3)
    d2 = develop_path(p2, 3)
    dj = develop_path(joint, 3)
    assert dj.endpoint == d1.endpoint * d2.endpoint


def test_backtracking_simple():
    seg = Segment((0,), (1,), Mat.zeros(3).with_entry(1, 0, 1), 1)
    loop = PLPath([seg, seg.reversed()])
    ok, trace = certify_backtracking(loop)
    assert ok
    assert trace == [(0, 1)]


def test_backtracking_nested():
    a = Segment((0,), (1,), Mat.zeros(3).with_entry(1, 0, 1), 1)
    b = Segment((1,), (2,), Mat.zeros(3).with_entry(2, 0, qi(0, 1)), 1)
    loop = PLPath([a, b, b.reversed(), a.reversed()])
    ok, trace = certify_backtracking(loop)
    assert ok
    assert trace == [(1, 2), (0, 3)]


def test_square_loop_not_backtracking():
    pts = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)),
           (Fraction(1), Fraction(1)), (Fraction(0), Fraction(1)),
           (Fraction(0), Fraction(0))]
    loop = polyline_path(pts)
    ok, _ = certify_backtracking(loop)
    assert not ok


def test_backtracking_implies_trivial_holonomy_exact():
    rng = random.Random(2)
    for _ in range(10):
        segs = []
        pts = [(0,)]
        for i in range(3):
            x = Mat.zeros(3).with_entry(1, 0, qi(rng.randint(-3, 3), rng.randint(-3, 3)))
            x = x.with_entry(2, 0, qi(rng.randint(-2, 2)))
            segs.append(Segment((i,), (i + 1,), x, Fraction(rng.randint(1, 3), 2)))
        fwd = PLPath(segs)
        loop = fwd.concat(fwd.reversed())
        ok, _ = certify_backtracking(loop)
        assert ok
        assert loop_holonomy(loop, 3) == Mat.identity(3)


def test_not_a_loop():
    path = polyline_path([(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))])
    with pytest.raises(NotALoop):
        loop_holonomy(path, 3)


def test_equal_development_and_start_coincide():
    # two straight lifts with the same development and start agree breakpointwise
    p1 = polyline_path([(Fraction(0), Fraction(0)), (Fraction(1), Fraction(2))])
    p2 = polyline_path([(Fraction(0), Fraction(0)), (Fraction(1), Fraction(2))])
    d1 = develop_path(p1, 3)
    d2 = develop_path(p2, 3)
    assert d1.breakpoints == d2.breakpoints


def test_rk4_matches_closed_form_rotation():
    gen = Mat([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]], "R")

    def vel(t):
        return gen

    path = PLPath([Segment((0,), (1,), vel, 1.0)])
    dev = develop_path(path, 3, ring="R")
    expected = Mat([[math.cos(1), -math.sin(1), 0.0],
                    [math.sin(1), math.cos(1), 0.0],
                    [0.0, 0.0, 1.0]], "R")
    assert dev.endpoint.close_to(expected, 1e-9)
    assert not dev.exact


# ---------------------------------------------------------------------------
# closures
# ---------------------------------------------------------------------------

def scaling_matrix(lam):
    return Mat([[lam, 0], [0, 1]], "QI")


def test_closure_trivial_group():
    a = scaling_matrix(Fraction(1, 2))
    closure = holonomy_closure([Mat.identity(2)], a, word_bound=4)
    assert closure.saturated
    assert len(closure.elements) == 1


def test_closure_central_conjugator_adds_nothing():
    t1 = translation_matrix([1])
    closure = holonomy_closure([t1], Mat.identity(2), word_bound=3, element_cap=64)
    # conjugation by the identity adds nothing: plain powers of t1 only
    offsets = sorted(float(g[0, 1].a) for g in closure.elements)
    assert all(o == int(o) for o in offsets)


def test_closure_aff1_dyadic():
    t1 = translation_matrix([1])
    a = scaling_matrix(Fraction(1, 2))
    closure = holonomy_closure([t1], a, word_bound=6, element_cap=20000)
    assert not closure.saturated  # the dyadic closure is infinite
    offsets = {g[0, 1].a for g in closure.elements}
    for want in (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)):
        assert want in offsets
    # all elements are translations by dyadic rationals
    for g in closure.elements:
        assert g[0, 0] == Scalar(1) and g[1, 1] == Scalar(1)
        denom = g[0, 1].a.denominator
        assert denom & (denom - 1) == 0


def test_closure_matches_scalar_oracle():
    # independent enumeration on translation offsets with the closed-form
    # conjugation rule a t_c a^-1 = t_{c/2}, mirroring the round structure
    t1 = translation_matrix([1])
    a = scaling_matrix(Fraction(1, 2))
    bound = 6
    closure = holonomy_closure([t1], a, word_bound=bound, element_cap=100000)

    offsets = {Fraction(0), Fraction(1), Fraction(-1)}
    letters = (Fraction(1), Fraction(-1))
    for _ in range(bound):
        new = set(offsets)
        for c in offsets:
            new.add(c / 2)
            new.add(c * 2)
            new.add(-c)
            for d in letters:
                new.add(c + d)
        offsets = new
    got = {g[0, 1].a for g in closure.elements}
    assert got == offsets


def test_closure_cap():
    t1 = translation_matrix([1])
    a = scaling_matrix(Fraction(1, 2))
    closure = holonomy_closure([t1], a, word_bound=8, element_cap=50)
    assert closure.cap_exceeded
    assert len(closure.elements) >= 50


def test_closure_group_axioms_within_bound():
    # elements found strictly before the last round are closed under the
    # round operations: inverse, conjugation, letter products
    t1 = translation_matrix([1])
    a = scaling_matrix(Fraction(1, 2))
    bound = 4
    closure = holonomy_closure([t1], a, word_bound=bound, element_cap=100000)
    inner = holonomy_closure([t1], a, word_bound=bound - 1, element_cap=100000)

    def key(m):
        return tuple((e.a, e.b, e.c, e.d) for row in m.rows for e in row)

    keys = {key(g) for g in closure.elements}
    for g in inner.elements:
        assert key(g.inverse()) in keys
        assert key(a * g * a.inverse()) in keys
        assert key(a.inverse() * g * a) in keys
        for letter in (t1, t1.inverse()):
            assert key(g * letter) in keys
            assert key(letter * g) in keys
