import random
from fractions import Fraction

import pytest

from cartanlab.matrices import DimensionMismatch
from cartanlab.projective import ProjPoint, chordal_gap, proj_equal
from cartanlab.scalars import J, qi, quat


def test_scalar_multiple_equal():
    p = ProjPoint("cproj:2", [qi(2), qi(0), qi(0)])
    q = ProjPoint("cproj:2", [qi(1), qi(0), qi(0)])
    assert proj_equal(p, q)


def test_quaternionic_right_normalization():
    # [j; j] right-divided by j is [1; 1]
    p = ProjPoint("hproj:1", [J, J])
    q = ProjPoint("hproj:1", [quat(1), quat(1)])
    assert proj_equal(p, q)
    canon = p.canonical()
    assert canon.coords[0] == quat(1) and canon.coords[1] == quat(1)


def test_distinct_points():
    p = ProjPoint("cproj:2", [qi(1), qi(1), qi(0)])
    q = ProjPoint("cproj:2", [qi(1), qi(0), qi(0)])
    assert not proj_equal(p, q)


def test_dimension_mismatch():
    p = ProjPoint("cproj:2", [qi(1), qi(0), qi(0)])
    q = ProjPoint("cproj:2", [qi(1), qi(0)])
    with pytest.raises(DimensionMismatch):
        proj_equal(p, q)


def test_right_scaling_invariance_of_gap():
    rng = random.Random(5)
    for _ in range(20):
        coords = [qi(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                     Fraction(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(3)]
        if all(c.is_zero() for c in coords):
            continue
        p = ProjPoint("cproj:2", coords)
        s = qi(Fraction(3, 2), Fraction(-1, 2))
        assert chordal_gap(p, p.scaled_right(s)) < 1e-12


def test_equivalence_relation_on_samples():
    rng = random.Random(9)
    pts = []
    for _ in range(8):
        coords = [quat(*(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(4)))
                  for _ in range(2)]
        if all(c.is_zero() for c in coords):
            coords[0] = quat(1)
        pts.append(ProjPoint("hproj:1", coords))
    for p in pts:
        assert proj_equal(p, p)
    for p in pts:
        for q in pts:
            assert proj_equal(p, q) == proj_equal(q, p)
            for r in pts:
                if proj_equal(p, q) and proj_equal(q, r):
                    assert proj_equal(p, r)
