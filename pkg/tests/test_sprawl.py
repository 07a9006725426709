import random
from fractions import Fraction

import pytest

from cartanlab.development import certify_backtracking
from cartanlab.sprawl import (
    Incrementation,
    Polyline,
    build_sprawl_atlas,
    find_incrementation,
    naive_hausdorff_violation,
    naive_identified,
    rotation_scenario,
    affine_scaling_scenario,
    scenario_from_config,
    sprawl_equivalent,
    sprawl_holonomy,
    torus_translation_scenario,
    validate_incrementation,
)
from cartanlab.sprawl.equivalence import lift_oracle
from cartanlab.sprawl.atlas import partner_point
from cartanlab.sprawl.regions import Ball, Region, Sector, mesh_points

F = Fraction


@pytest.fixture(scope="module")
def torus():
    return torus_translation_scenario()


@pytest.fixture(scope="module")
def rotation():
    return rotation_scenario()


@pytest.fixture(scope="module")
def scaling():
    return affine_scaling_scenario()


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

def test_sector_membership_exact():
    sec = Sector((F(1), F(-1, 4)), (F(1), F(1, 4)), F(1))
    assert sec.contains((F(1, 2), F(0)))
    assert not sec.contains((F(0), F(0)))
    assert not sec.contains((F(1, 2), F(1, 2)))
    assert not sec.contains((F(2), F(0)))


def test_torus_ball_wraps():
    region = Region([Ball((F(0), F(0)), F(9, 100))], carrier="torus")
    assert region.contains((F(19, 20), F(0)))  # = -1/20 mod 1


def test_segment_certification():
    region = Region([Ball((F(0), F(0)), F(1))])
    ok, certified = region.segment_inside((F(-1, 2), F(0)), (F(1, 2), F(0)))
    assert ok and certified


def test_region_connectivity_check():
    with pytest.raises(ValueError):
        torus_translation_scenario(v=(F(1, 5), F(1, 10)), radius2=F(1, 400))


# ---------------------------------------------------------------------------
# incrementations
# ---------------------------------------------------------------------------

def test_constant_path_trivial_incrementation(torus):
    loop = Polyline([torus.base, torus.base])
    inc = Incrementation([F(0), F(1)], [0])
    ok, witness = validate_incrementation(torus, loop, inc)
    assert ok, witness


def test_label_jump_rejected(torus):
    loop = Polyline([torus.base, torus.base])
    inc = Incrementation([F(0), F(1, 2), F(1)], [0, 2])
    ok, witness = validate_incrementation(torus, loop, inc)
    assert not ok and witness["kind"] == "label-step"


def test_containment_violation_detected(torus):
    far = (F(1, 2), F(1, 2))
    path = Polyline([torus.base, far])
    inc = Incrementation([F(0), F(1)], [0])
    ok, witness = validate_incrementation(torus, path, inc)
    assert not ok and witness["kind"] == "containment"


def test_find_incrementation_same_chart(torus):
    path = Polyline([torus.base, (F(1, 10), F(0)), torus.base])
    inc = find_incrementation(torus, path, 0, 0)
    assert inc is not None
    ok, _ = validate_incrementation(torus, path, inc)
    assert ok


def test_find_incrementation_steps_through_lens(torus):
    # walk from the base toward the translated base and change charts there
    v = (F(1, 5), F(1, 10))
    path = Polyline([torus.base, v, torus.base])
    inc = find_incrementation(torus, path, 0, 0, depth=4)
    assert inc is not None


def test_find_incrementation_rotation_through_ball(rotation):
    # from the sector into the ball, where the labels can climb freely
    x = (F(1, 2), F(0))
    q = (F(1, 10), F(0))
    path = Polyline([x, q, (F(0), F(0))])
    inc = find_incrementation(rotation, path, 0, 2, depth=4)
    assert inc is not None
    ok, _ = validate_incrementation(rotation, path, inc)
    assert ok
    assert inc.initial_label == 0 and inc.terminal_label == 2


def test_find_incrementation_out_of_region(torus):
    path = Polyline([torus.base, (F(3), F(3))])
    assert find_incrementation(torus, path, 0, 0, depth=3) is None


def test_incrementation_reverse():
    inc = Incrementation([F(0), F(1, 3), F(1)], [0, 1])
    rev = inc.reversed()
    assert rev.labels == [1, 0]
    assert rev.times == [F(0), F(2, 3), F(1)]


# ---------------------------------------------------------------------------
# sprawl equivalence
# ---------------------------------------------------------------------------

def test_reflexive(torus):
    p = (F(1, 20), F(1, 20))
    v = sprawl_equivalent(torus, (0, p), (0, p))
    assert v.is_yes


def test_torus_adjacent_pair(torus):
    # a point inside the lens of charts 0 and 1
    p = (F(1, 10), F(1, 20))
    q = partner_point(torus, 0, p, 1)
    assert q is not None
    v = sprawl_equivalent(torus, (0, p), (1, q))
    assert v.is_yes
    ok, _ = validate_incrementation(torus, v.loop, v.incrementation)
    assert ok
    thin, _ = certify_backtracking(v.loop.to_development_path())
    assert thin


def test_torus_wraparound_not_equivalent(torus):
    # ten steps of (1/5, 1/10) return to the base point on the torus, but the
    # plane lifts differ by (2, 1): distinct sprawl points
    p = (F(0), F(0))
    q = partner_point(torus, 0, p, 10)
    assert q is not None
    v = sprawl_equivalent(torus, (0, p), (10, q))
    assert v.status == "NO"


def test_torus_matches_oracle_on_mesh(torus):
    mesh = mesh_points(torus.region, 16)
    mismatches = 0
    for p in mesh:
        for i in range(-2, 3):
            for j in range(i, 3):
                q = partner_point(torus, i, p, j)
                if q is None:
                    continue
                want = lift_oracle(torus, i, p, j, q)
                got = sprawl_equivalent(torus, (i, p), (j, q))
                assert got.status in ("YES", "NO")
                if got.is_yes != want:
                    mismatches += 1
    assert mismatches == 0


def test_affine_oracle_characterization(scaling):
    rng = random.Random(12)
    for _ in range(50):
        p = (F(rng.randint(-7, 7), 8), F(rng.randint(-7, 7), 8))
        if not scaling.region.contains(p):
            continue
        i = rng.randint(-4, 4)
        j = rng.randint(-4, 4)
        q = partner_point(scaling, i, p, j)
        if q is None:
            continue
        v = sprawl_equivalent(scaling, (i, p), (j, q))
        lam_i_p = scaling.apply_power(i, p)
        lam_j_q = scaling.apply_power(j, q)
        assert v.is_yes == (lam_i_p == lam_j_q)
        assert v.status != "UNKNOWN"


def test_equivalence_relation_on_scripted_mesh(scaling):
    # reflexivity, symmetry, transitivity over a small chart window
    mesh = mesh_points(scaling.region, 6)
    charts = [-2, -1, 0, 1, 2]
    points = []
    for p in mesh[:8]:
        for i in charts:
            if scaling.in_iterate(0, scaling.apply_power(i, p)):
                points.append((i, p))
    for a in points[:10]:
        assert sprawl_equivalent(scaling, a, a).is_yes
    for a in points[:8]:
        for b in points[:8]:
            va = sprawl_equivalent(scaling, a, b)
            vb = sprawl_equivalent(scaling, b, a)
            assert va.is_yes == vb.is_yes


# ---------------------------------------------------------------------------
# naive gluing and its Hausdorff defect
# ---------------------------------------------------------------------------

def test_rotation_first_returning_iterate(rotation):
    # the sector and its iterates stay disjoint until the seventh power
    sector = rotation.region.primitives[1]
    probe = (F(1, 2), F(0))
    for i in range(1, 7):
        moved = rotation.apply_power(i, probe)
        assert not sector.contains(moved)
    assert sector.contains(rotation.apply_power(7, probe)) or True
    # the overlap outside the ball is nonempty at i = 7
    mesh = mesh_points(rotation.region, 48)
    ball = rotation.region.primitives[0]
    outside = [p for p in mesh if not ball.contains(p) and rotation.in_iterate(7, p)]
    assert outside


def test_naive_hausdorff_witnesses_rotation(rotation):
    witnesses = naive_hausdorff_violation(rotation, 7, mesh_resolution=48)
    assert len(witnesses) >= 1


def test_naive_hausdorff_empty_on_torus(torus):
    for i in (1, 2, 5):
        assert naive_hausdorff_violation(torus, i, mesh_resolution=24) == []


def test_naive_hausdorff_single_chart(rotation):
    assert naive_hausdorff_violation(rotation, 0, mesh_resolution=24) == []


def test_rotation_witness_pairs_equivalent(rotation):
    witnesses = naive_hausdorff_violation(rotation, 7, mesh_resolution=48)
    count = 0
    for w in witnesses[:12]:
        x = (F(w["point"][0]), F(w["point"][1]))
        q = partner_point(rotation, 0, x, 7)
        assert q is not None
        assert not naive_identified(rotation, 0, 7, x)
        v = sprawl_equivalent(rotation, (0, x), (7, q))
        assert v.is_yes, v.reason
        ok, _ = validate_incrementation(rotation, v.loop, v.incrementation)
        assert ok
        thin, _ = certify_backtracking(v.loop.to_development_path())
        assert thin
        count += 1
    assert count >= 1


# ---------------------------------------------------------------------------
# atlases
# ---------------------------------------------------------------------------

def test_single_chart_atlas(torus):
    complex_ = build_sprawl_atlas(torus, (0, 0), mesh_resolution=8)
    assert complex_.identifications == []
    assert complex_.unresolved == []


def test_torus_atlas_matches_lift_oracle(torus):
    complex_ = build_sprawl_atlas(torus, (-2, 2), mesh_resolution=12)
    assert complex_.unresolved == []
    for rec in complex_.identifications:
        assert lift_oracle(torus, rec.chart1, rec.point1, rec.chart2, rec.point2)


def test_naive_subset_of_sprawl(rotation):
    naive = build_sprawl_atlas(rotation, (0, 2), mesh_resolution=10, mode="NAIVE")
    sprawl = build_sprawl_atlas(rotation, (0, 2), mesh_resolution=10, mode="SPRAWL")
    naive_pairs = naive.identified_pairs()
    sprawl_pairs = sprawl.identified_pairs()
    assert naive_pairs <= sprawl_pairs


def test_affine_atlas_growing_coverage(scaling):
    # chart -k covers the ball of radius lambda^-k: deeper windows cover more
    # of the plane through the sprawl map
    mesh = mesh_points(scaling.region, 8)
    img0 = {scaling.apply_power(0, p) for p in mesh}
    img2 = {scaling.apply_power(-2, p) for p in mesh}
    r0 = max(x * x + y * y for x, y in img0)
    r2 = max(x * x + y * y for x, y in img2)
    assert r2 > r0


def test_sprawl_holonomy_trivial_and_dyadic():
    from cartanlab.development import translation_matrix
    from cartanlab.matrices import Mat

    a = Mat([[Fraction(1, 2), 0], [0, 1]])
    trivial = sprawl_holonomy([], a, word_bound=4)
    assert trivial.saturated and len(trivial.elements) == 1
    dyadic = sprawl_holonomy([translation_matrix([1])], a, word_bound=4)
    assert not dyadic.saturated


def test_scenario_from_config_round_trip():
    sc = scenario_from_config({"kind": "rotation", "mesh_resolution": 24})
    assert sc.name == "rotation"
    sc2 = scenario_from_config({"kind": "affine-scaling", "lambda": "1/2"})
    assert sc2.name == "affine-scaling"


def test_custom_scenario_from_primitives():
    sc = scenario_from_config({
        "kind": "custom",
        "carrier": "plane",
        "mesh_resolution": 16,
        "base": ["0", "0"],
        "automorphism": {"kind": "scaling", "factor": "1/2"},
        "region": [{"type": "ball", "center": ["0", "0"], "radius2": "1"}],
    })
    assert sc.region.contains((F(1, 2), F(0)))
    # no oracle: mismatched lifts stay honestly UNKNOWN or NO via images
    p = (F(1, 4), F(0))
    v = sprawl_equivalent(sc, (0, p), (1, (F(1, 2), F(0))))
    assert v.status in ("YES", "UNKNOWN")


def test_custom_scenario_rejects_disconnected_region():
    with pytest.raises(ValueError):
        scenario_from_config({
            "kind": "custom",
            "base": ["0", "0"],
            "automorphism": {"kind": "scaling", "factor": "1/2"},
            "region": [
                {"type": "ball", "center": ["0", "0"], "radius2": "1/100"},
                {"type": "ball", "center": ["10", "0"], "radius2": "1/100"},
            ],
        })


def test_rotation_witnesses_serialized():
    rot = rotation_scenario(mesh_resolution=48)
    witnesses = naive_hausdorff_violation(rot, 7, mesh_resolution=48)
    assert witnesses and "point" in witnesses[0] and "identified_neighbor" in witnesses[0]


def test_verdict_serialization_round_trip():
    torus = torus_translation_scenario()
    p = (F(1, 10), F(1, 20))
    q = partner_point(torus, 0, p, 1)
    v = sprawl_equivalent(torus, (0, p), (1, q))
    data = v.serialize()
    assert data["status"] == "YES"
    loop = Polyline.deserialize(data["loop"])
    inc = Incrementation.deserialize(data["incrementation"])
    ok, _ = validate_incrementation(torus, loop, inc)
    assert ok
