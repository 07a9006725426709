import math
import random
from fractions import Fraction

import pytest

from cartanlab.dynamics import (
    act_on_flag,
    fixed_set_codimension_probe,
    isotropy_power,
    orbit_converges,
    standard_isotropy,
)
from cartanlab.matrices import Mat
from cartanlab.models import NotOnNullCone, base_point, get_model, nullcone_contains
from cartanlab.projective import ProjPoint, chordal_gap, proj_equal
from cartanlab.scalars import I, J, Scalar, qi, quat


def test_act_on_flag_cproj_formula():
    model = get_model("cproj:2")
    a = standard_isotropy(model)
    p = ProjPoint(model.tag, [0, 1, 0])
    moved = act_on_flag(model, a, p)
    assert proj_equal(moved, ProjPoint(model.tag, [1, 1, 0]))


def test_act_on_flag_hproj_right_normalization():
    model = get_model("hproj:1")
    a = standard_isotropy(model)
    p = ProjPoint(model.tag, [quat(0), J])
    moved = act_on_flag(model, a, p)
    assert proj_equal(moved, ProjPoint(model.tag, [quat(1), quat(1)]))


def test_act_on_flag_cr_central():
    model = get_model("cr:1,0")
    a = standard_isotropy(model, "central")
    p = ProjPoint(model.tag, [I, 0, 1])
    assert nullcone_contains(model, p)
    moved = act_on_flag(model, a, p)
    expected = ProjPoint(model.tag, [qi(1), qi(0), qi(0, Fraction(-1, 2))])
    assert proj_equal(moved, expected)


def test_act_on_flag_rejects_off_cone():
    model = get_model("cr:1,0")
    a = standard_isotropy(model, "central")
    with pytest.raises(NotOnNullCone):
        act_on_flag(model, a, ProjPoint(model.tag, [1, 1, 1]))


def test_isotropy_power_closed_forms():
    model = get_model("cproj:2")
    a = standard_isotropy(model)
    assert isotropy_power(model, a, 5) == Mat.identity(3).with_entry(0, 1, 5)
    assert isotropy_power(model, a, -3) == Mat.identity(3).with_entry(0, 1, -3)
    cr = get_model("cr:1,1")
    ant = standard_isotropy(cr, "timelike")
    k = 4
    ak = isotropy_power(cr, ant, k)
    expected = Mat.identity(4).with_entry(0, 1, k).with_entry(1, 3, -k).with_entry(
        0, 3, qi(Fraction(-k * k, 2)))
    assert ak == expected


def test_orbit_base_point_fixed():
    model = get_model("cproj:2")
    a = standard_isotropy(model)
    rep = orbit_converges(model, a, base_point(model))
    assert rep.is_fixed


def test_orbit_gap_closed_form():
    # normalized iterate of [0;1;0] is [1;1/k;0]: the squared chordal
    # displacement from the base point is 2 - 2/sqrt(1 + 1/k^2) ~ 1/k^2
    model = get_model("cproj:2")
    a = standard_isotropy(model)
    rep = orbit_converges(model, a, ProjPoint(model.tag, [0, 1, 0]), k_max=10_000, tol=1e-6)
    assert rep.converged
    for k, _, gap in rep.iterates:
        expected = 2.0 - 2.0 / math.sqrt(1.0 + 1.0 / k**2)
        assert math.isclose(gap, expected, rel_tol=1e-9, abs_tol=1e-15)


def test_orbit_cr_noncentral_fixed_points():
    # x = c = 0 with null rest-direction: fixed exactly (needs an indefinite
    # rest form, hence cr:2,1)
    model = get_model("cr:2,1")
    a = standard_isotropy(model, "timelike")
    p = ProjPoint(model.tag, [1, 0, 1, 1, 0])
    assert nullcone_contains(model, p)
    rep = orbit_converges(model, a, p)
    assert rep.is_fixed


def test_orbit_cr_noncentral_converges():
    model = get_model("cr:2,1")
    a = standard_isotropy(model, "timelike")
    # c != 0 forces quadratic escape of the leading entry
    p = ProjPoint(model.tag, [qi(Fraction(-1, 2)), 1, 0, 0, 1])
    assert nullcone_contains(model, p)
    rep = orbit_converges(model, a, p, k_max=10_000, tol=1e-6)
    assert rep.converged and not rep.is_fixed


def test_codimension_probe_cproj():
    model = get_model("cproj:2")
    pts = [ProjPoint(model.tag, [1, 0, qi(r)]) for r in (0, 1, -2)]
    rep = fixed_set_codimension_probe(model, "cproj", pts)
    assert rep["ok"] and rep["expected_codimension"] == 2


def test_codimension_probe_hproj():
    model = get_model("hproj:2")
    pts = [ProjPoint(model.tag, [quat(1), quat(0), quat(0, 1, 1, 0)])]
    rep = fixed_set_codimension_probe(model, "hproj", pts)
    assert rep["ok"] and rep["expected_codimension"] == 4


def test_codimension_probe_cr():
    central = get_model("cr:1,1")
    pts = [ProjPoint(central.tag, [1, qi(0, 1), 1, 0])]
    assert nullcone_contains(central, pts[0])
    rep = fixed_set_codimension_probe(central, "cr-central", pts)
    assert rep["ok"] and rep["expected_codimension"] == 2

    noncentral = get_model("cr:2,1")
    pts2 = [ProjPoint(noncentral.tag, [1, 0, qi(1), qi(0, 1), 0])]
    assert nullcone_contains(noncentral, pts2[0])
    rep2 = fixed_set_codimension_probe(noncentral, "cr-noncentral", pts2)
    assert rep2["ok"] and rep2["expected_codimension"] == 4
