"""The verification suites and the suite runner."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Dict, List

from .. import __version__
from ..curvature import CurvatureTensorValue, algebra_basis, curvature_rep_action, regularity_check
from ..development import certify_backtracking, develop_path, holonomy_closure, loop_holonomy, polyline_path, translation_matrix
from ..dynamics import (
    ballast_projective,
    cr_shrinking_paths,
    divergence_test,
    fixed_set_codimension_probe,
    flamboyance_check,
    isotropy_power,
    line_family,
    orbit_converges,
    shrinking_arclength,
    standard_isotropy,
    verify_characteristic_polynomial,
    verify_eigenstructure_projective,
    verify_factorization_identity,
)
from ..dynamics.flamboyance import FamilyConditionViolated
from ..dynamics.shrinking import SingularZ, closed_form_bound, graded_quadrature, metric_integrand
from ..matrices import Mat, mat_exp_general, mat_exp_nilpotent, parallel_map
from ..models import (
    IsotropyParams,
    base_point,
    build_isotropy,
    canonicalize_algebra,
    commutator_grades_ok,
    get_model,
    grading_project,
    group_equal,
    hermitian_form_value,
    in_P_plus,
    isotropy_log_params,
    nullcone_contains,
)
from ..projective import ProjPoint, proj_equal
from ..reporting import assemble_report, check_record
from ..scalars import Scalar, ZERO, ONE, I as IMAG, qi
from ..sprawl import (
    build_sprawl_atlas,
    klein_embedding_image,
    naive_hausdorff_violation,
    rotation_scenario,
    affine_scaling_scenario,
    sprawl_equivalent,
    sprawl_holonomy,
    torus_translation_scenario,
    validate_incrementation,
)
from ..sprawl.atlas import naive_identified, partner_point
from ..sprawl.equivalence import lift_oracle
from ..sprawl.regions import mesh_points
from . import samplers


class ConfigInvalid(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


SUITE_NAMES = ["verify-models", "verify-ballast", "dynamics", "shrinking", "sprawl", "holonomy"]


def default_config() -> dict:
    return {
        "suite": "all",
        "seed": 0,
        "exact": False,
        "mesh": None,
        "params": {
            "models": ["cproj:2", "hproj:2", "cr:1,1", "cr:2,1"],
            "m_values": [1, 2, 3],
            "complex_draws": 100,
            "quaternion_draws": 50,
            "eigen_draws": 20,
            "cr_draws": 20,
            "char_lambdas": ["0", "1", "2", "-1"],
            "k_list": [10, 100, 1000, 10000],
            "orbit_points": 200,
            "fixed_points": 50,
            "orbit_k_max": 10000,
            "orbit_tol": 1e-6,
            "flamboyance_points": 1000,
            "family_elements": 8,
            "torus_mesh": 64,
            "torus_window": 4,
            "affine_mesh": 32,
            "affine_window": 8,
            "rotation_mesh": 48,
            "witness_pairs": 10,
            "hol_word_bound": 6,
            "element_cap": 100000,
            "divergence_k_list": [1, 2, 4, 8, 16, 32],
        },
    }


def _merge_config(cfg: dict | None) -> dict:
    base = default_config()
    cfg = cfg or {}
    out = dict(base)
    out.update({k: v for k, v in cfg.items() if k != "params"})
    params = dict(base["params"])
    params.update(cfg.get("params") or {})
    out["params"] = params
    return out


def _validate(cfg: dict) -> dict:
    p = cfg["params"]
    if cfg["suite"] not in SUITE_NAMES + ["all"]:
        raise ConfigInvalid("suite", f"unknown suite {cfg['suite']!r}")
    if not isinstance(cfg["seed"], int) or cfg["seed"] < 0:
        raise ConfigInvalid("seed", "seed must be a nonnegative integer")
    if not p["k_list"]:
        raise ConfigInvalid("params.k_list", "k-list must not be empty")
    if any(int(k) <= 0 for k in p["k_list"]):
        raise ConfigInvalid("params.k_list", "k values must be positive")
    if p["orbit_points"] < 1 or p["fixed_points"] < 0:
        raise ConfigInvalid("params.orbit_points", "point counts must be positive")
    if p["torus_mesh"] < 4 or p["affine_mesh"] < 4 or p["rotation_mesh"] < 4:
        raise ConfigInvalid("params.torus_mesh", "mesh resolutions must be at least 4")
    return cfg


def _rng(cfg: dict, suite: str) -> random.Random:
    return random.Random(f"{cfg['seed']}:{suite}")


# ---------------------------------------------------------------------------
# verify-models
# ---------------------------------------------------------------------------

def suite_verify_models(cfg: dict) -> List[dict]:
    rng = _rng(cfg, "verify-models")
    checks = []

    # exponentials
    e21 = Mat.zeros(3).with_entry(1, 0, 1)
    ok = mat_exp_nilpotent(e21, 3) == Mat.identity(3) + e21
    ok = ok and mat_exp_nilpotent(Mat.zeros(3), 3) == Mat.identity(3)
    gen = Mat.zeros(3).to_float().with_entry(0, 1, -math.pi).with_entry(1, 0, math.pi)
    rot = mat_exp_general(gen, 1e-9)
    ok = ok and rot.close_to(Mat([[-1.0, 0, 0], [0, -1.0, 0], [0, 0, 1.0]], "R"), 1e-12)
    x = Mat.zeros(3).with_entry(1, 0, qi(1, 1)).with_entry(2, 0, qi(-2))
    ok = ok and mat_exp_general(x.to_float(), 1e-9).close_to(mat_exp_nilpotent(x, 3).to_float(), 1e-12)
    checks.append(check_record("exp-finite-series", "matrix-exponential", ok))

    # projective equality
    ok = proj_equal(ProjPoint("cproj:2", [2, 0, 0]), ProjPoint("cproj:2", [1, 0, 0]))
    from ..scalars import J

    ok = ok and proj_equal(ProjPoint("hproj:1", [J, J]), ProjPoint("hproj:1", [1, 1]))
    ok = ok and not proj_equal(ProjPoint("cproj:2", [1, 1, 0]), ProjPoint("cproj:2", [1, 0, 0]))
    checks.append(check_record("coset-equality", "projective-equality", ok))

    for tag in cfg["params"]["models"]:
        model = get_model(tag)
        ok = True
        for _ in range(4):
            xel = _random_algebra_element(rng, model)
            total = Mat.zeros(model.matrix_dim, ring=xel.ring)
            for g in model.grades:
                total = total + grading_project(model, xel, g)
            ok = ok and total == canonicalize_algebra(model, xel)
        checks.append(check_record(f"grading-resolution-{tag}", "model-grading-projectors", ok,
                                   inputs={"model": tag}))
        ok2 = commutator_grades_ok(model, rng, draws=3)
        checks.append(check_record(f"bracket-grading-{tag}", "model-bracket-grading", ok2,
                                   inputs={"model": tag}))

    # isotropy constructions
    cp = get_model("cproj:2")
    a_cp = build_isotropy(cp, IsotropyParams(p_row=[1, 0]))
    ok = a_cp == Mat([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    cr10 = get_model("cr:1,0")
    a_central, info = build_isotropy(cr10, IsotropyParams(beta=[0], s=1))
    ok = ok and a_central == Mat([[1, 0, IMAG], [0, 1, 0], [0, 0, 1]]) and info.non_null
    cr11 = get_model("cr:1,1")
    _, info_t = build_isotropy(cr11, IsotropyParams(beta=[1, 0], s=0))
    ok = ok and info_t.non_null and info_t.classification == "timelike"
    _, info_s = build_isotropy(cr11, IsotropyParams(beta=[0, 1], s=0))
    ok = ok and info_s.classification == "spacelike"
    _, info_n = build_isotropy(cr11, IsotropyParams(beta=[1, 1], s=0))
    ok = ok and not info_n.non_null
    checks.append(check_record("isotropy-construction", "isotropy-construction", ok))

    # P_+ closure and log round trip
    cr21 = get_model("cr:2,1")
    ok = True
    for _ in range(5):
        b1 = [samplers.rand_qi(rng) for _ in range(3)]
        b2 = [samplers.rand_qi(rng) for _ in range(3)]
        g1, _ = build_isotropy(cr21, IsotropyParams(beta=b1, s=Fraction(rng.randint(-2, 2), 2)))
        g2, _ = build_isotropy(cr21, IsotropyParams(beta=b2, s=Fraction(rng.randint(-2, 2), 2)))
        ok = ok and in_P_plus(cr21, g1 * g2)
    checks.append(check_record("cr-pplus-closure", "cr-pplus-closure", ok))

    beta = [samplers.rand_qi(rng), samplers.rand_qi(rng)]
    g, _ = build_isotropy(cr11, IsotropyParams(beta=beta, s=Fraction(3, 4)))
    back = isotropy_log_params(cr11, g)
    ok = list(back.beta) == beta and back.s == Scalar(Fraction(3, 4))
    checks.append(check_record("pplus-log-round-trip", "pplus-log-round-trip", ok))

    # hermitian form examples
    ok = hermitian_form_value(cr10, base_point(cr10)).is_zero()
    ok = ok and nullcone_contains(cr10, ProjPoint(cr10.tag, [qi(Fraction(-1, 2)), 1, 1]))
    val = hermitian_form_value(cr10, ProjPoint(cr10.tag, [1, 1, 1]))
    ok = ok and val == qi(3)
    checks.append(check_record("hermitian-form", "hermitian-form", ok))

    # curvature action and regularity
    e12 = Mat.zeros(3).with_entry(0, 1, 1)
    e13 = Mat.zeros(3).with_entry(0, 2, 1)
    w = CurvatureTensorValue.from_triples(cp, [(e12, e13, e12, Fraction(1))])
    ok = curvature_rep_action(cp, Mat.identity(3), w) == w
    b = Mat([[2, 1, 0], [0, Fraction(1, 2), 0], [0, 0, 1]])
    moved = curvature_rep_action(cp, b, w)
    ok = ok and moved.terms == {k: c * 32 for k, c in w.terms.items()}
    checks.append(check_record("curvature-action", "curvature-isotropy-action", ok))

    basis = algebra_basis(cr11)
    plus1 = [bb for bb in basis if bb.grade == 1]
    gm2 = next(bb for bb in basis if bb.grade == -2)
    g0b = next(bb for bb in basis if bb.grade == 0)
    bad = CurvatureTensorValue(cr11, {(plus1[0].index, plus1[1].index, gm2.index): Fraction(1)})
    good = CurvatureTensorValue(cr11, {(plus1[0].index, plus1[1].index, g0b.index): Fraction(1)})
    ok = regularity_check(cr11, CurvatureTensorValue(cr11)) and not regularity_check(cr11, bad)
    ok = ok and regularity_check(cr11, good)
    checks.append(check_record("regularity-slots", "curvature-regularity", ok))
    return checks


def _random_algebra_element(rng: random.Random, model) -> Mat:
    from ..curvature import algebra_basis as basis_of

    try:
        basis = basis_of(model)
    except Exception:
        # quaternionic model: any matrix is an algebra representative
        from .samplers import rand_quat

        n = model.matrix_dim
        return Mat([[rand_quat(rng) for _ in range(n)] for _ in range(n)], "H")
    x = Mat.zeros(model.matrix_dim, ring=basis[0].mat.ring)
    for b in basis:
        c = Fraction(rng.randint(-2, 2), rng.randint(1, 2))
        if c:
            x = x + b.mat.scale_left(Scalar(c))
    return x


# ---------------------------------------------------------------------------
# verify-ballast
# ---------------------------------------------------------------------------

def suite_verify_ballast(cfg: dict) -> List[dict]:
    rng = _rng(cfg, "verify-ballast")
    p = cfg["params"]
    checks = []

    total = 0
    passed = 0
    m_values = [int(m) for m in p["m_values"]]
    per_m = max(1, int(p["complex_draws"]) // len(m_values))
    for m in m_values:
        model = get_model(f"cproj:{m}")
        done = 0
        while done < per_m:
            x = samplers.rand_qi(rng, span=4, den=3)
            if x.is_zero():
                continue
            y = [samplers.rand_qi(rng, span=4, den=3) for _ in range(m - 1)]
            t = Fraction(rng.randint(0, 8), 8)
            k = rng.randint(-10, 10)
            if (ONE + Scalar(k) * Scalar(t) * x).is_zero():
                continue
            total += 1
            passed += bool(verify_factorization_identity(model, x, y, t, k))
            done += 1
    checks.append(check_record(
        "factorization-complex", "projective-factorization-identity",
        passed == total, inputs={"draws": total, "m_values": m_values},
        outputs={"passed": passed}))

    total_h = 0
    passed_h = 0
    done = 0
    while done < int(p["quaternion_draws"]):
        m = 1 + (done % 2)
        model = get_model(f"hproj:{m}")
        x = samplers.rand_quat(rng, span=3)
        if x.is_zero():
            continue
        y = [samplers.rand_quat(rng, span=3) for _ in range(m - 1)]
        t = Fraction(rng.randint(0, 6), 6)
        k = rng.randint(-10, 10)
        if (ONE + Scalar(k) * Scalar(t) * x).is_zero():
            continue
        total_h += 1
        passed_h += bool(verify_factorization_identity(model, x, y, t, k))
        done += 1
    checks.append(check_record(
        "factorization-quaternionic", "projective-factorization-identity",
        passed_h == total_h, inputs={"draws": total_h}, outputs={"passed": passed_h}))

    model2 = get_model("cproj:2")
    b, _ = ballast_projective(model2, 1, [0], 1)
    ok = b == Mat([[2, 1, 0], [0, Fraction(1, 2), 0], [0, 0, 1]])
    b0, _ = ballast_projective(model2, qi(2, 1), [qi(1)], 0)
    ok = ok and b0 == Mat.identity(3)
    try:
        ballast_projective(model2, -1, [0], 1)
        ok = False
    except Exception:
        pass
    _, advisory = ballast_projective(model2, qi(Fraction(-1, 2)), [0], 1)
    ok = ok and advisory is not None
    checks.append(check_record("ballast-matrix", "ballast-matrix-display", ok))

    def draws(count):
        return [tuple(samplers.rand_qi(rng) for _ in range(count)) for _ in range(4)]

    eig_total = 0
    eig_failures = 0
    done = 0
    while done < int(p["eigen_draws"]):
        x = samplers.rand_qi(rng, span=3)
        if x.is_zero():
            continue
        y = [samplers.rand_qi(rng, span=3)]
        k = rng.randint(-6, 6)
        if (ONE + Scalar(k) * x).is_zero() or (Scalar(2) + Scalar(k) * x).is_zero():
            continue
        rep = verify_eigenstructure_projective(model2, x, y, k, draws)
        eig_total += sum(f["checked"] for f in rep["families"])
        eig_failures += sum(f["failures"] for f in rep["families"])
        done += 1
    checks.append(check_record(
        "ballast-eigenstructure", "ballast-eigenstructure",
        eig_failures == 0 and eig_total > 0,
        inputs={"draws": done}, outputs={"member_checks": eig_total},
        residual=eig_failures))

    e12 = Mat.zeros(3).with_entry(0, 1, 1)
    e13 = Mat.zeros(3).with_entry(0, 2, 1)
    w = CurvatureTensorValue.from_triples(model2, [(e12, e13, e12, Fraction(1))])

    def gen(k):
        bk, _ = ballast_projective(model2, 1, [0], k)
        return bk

    verdict = divergence_test(model2, gen, w, [int(k) for k in p["divergence_k_list"]])
    ok = verdict["verdict"] == "DIVERGES"
    cr11 = get_model("cr:1,1")
    basis = algebra_basis(cr11)
    plus1 = [bb for bb in basis if bb.grade == 1]
    gm2 = next(bb for bb in basis if bb.grade == -2)
    w_ex = CurvatureTensorValue(cr11, {(plus1[0].index, plus1[1].index, gm2.index): Fraction(1)})
    verdict2 = divergence_test(
        cr11, lambda k: cr_shrinking_paths(cr11, 0, [0], 1, k, Fraction(1, 2)).beta, w_ex, [2, 4])
    ok = ok and verdict2["verdict"] == "EXEMPT"
    checks.append(check_record(
        "curvature-divergence", "ballast-curvature-divergence", ok,
        outputs={"norms": verdict["norms"], "exempt": verdict2["verdict"]}))
    return checks


# ---------------------------------------------------------------------------
# dynamics
# ---------------------------------------------------------------------------

ORBIT_SCENARIOS = [
    ("cproj:2", "cproj", "default"),
    ("hproj:2", "hproj", "default"),
    ("cr:1,1", "cr-central", "central"),
    ("cr:2,1", "cr-noncentral", "timelike"),
]


def suite_dynamics(cfg: dict) -> List[dict]:
    rng = _rng(cfg, "dynamics")
    p = cfg["params"]
    checks = []
    per_model = max(1, int(p["orbit_points"]) // 1)
    for tag, scenario, kind in ORBIT_SCENARIOS:
        model = get_model(tag)
        a = standard_isotropy(model, kind)
        pts = samplers.orbit_samples(model, scenario, rng, per_model)
        reports = parallel_map(
            lambda pt: orbit_converges(model, a, pt, int(p["orbit_k_max"]),
                                       float(p["orbit_tol"])),
            pts,
        )
        converged = 0
        worst_gap = 0.0
        worst_k = 0
        for rep in reports:
            if rep.converged and not rep.is_fixed:
                converged += 1
                final_gap = rep.iterates[-1][2]
                if final_gap > worst_gap:
                    worst_gap = final_gap
                    worst_k = rep.iterates[-1][0]
        exact_cross = None
        if cfg.get("exact"):
            # recompute a few final iterates in exact arithmetic and compare
            # the resulting gaps against the float sweep
            exact_cross = 0
            for pt, rep in list(zip(pts, reports))[:10]:
                if not rep.iterates:
                    continue
                k_last = rep.iterates[-1][0]
                ak = isotropy_power(model, a, k_last)
                from ..dynamics.orbits import act_on_flag
                from ..projective import chordal_gap

                moved = act_on_flag(model, ak, pt)
                gap = chordal_gap(moved, base_point(model))
                if abs(gap - rep.iterates[-1][2]) < 1e-9:
                    exact_cross += 1
        checks.append(check_record(
            f"orbit-convergence-{scenario}", "orbit-attraction",
            converged == len(pts) and (exact_cross is None or exact_cross > 0),
            inputs={"model": tag, "points": len(pts), "k_max": p["orbit_k_max"],
                    "tol": p["orbit_tol"], "exact_cross_check": bool(cfg.get("exact"))},
            outputs={"converged": converged, "worst_final_gap": worst_gap,
                     "worst_final_k": worst_k,
                     "exact_confirmations": exact_cross}))

        fixed_pts = samplers.fixed_samples(model, scenario, rng, int(p["fixed_points"]))
        fixed_ok = 0
        for pt in fixed_pts:
            rep = orbit_converges(model, a, pt, 8, float(p["orbit_tol"]))
            fixed_ok += rep.is_fixed
        checks.append(check_record(
            f"fixed-points-{scenario}", "fixed-set-membership",
            fixed_ok == len(fixed_pts),
            inputs={"model": tag, "points": len(fixed_pts)},
            outputs={"exactly_fixed": fixed_ok}))

    probes = [
        ("cproj:2", "cproj", [ProjPoint("cproj:2", [1, 0, qi(r)]) for r in (0, 1, -2)]),
        ("hproj:2", "hproj", [ProjPoint("hproj:2", samplers.PYTHAGOREAN_PHASES[:1] + [ZERO, ONE])]),
        ("cr:1,1", "cr-central", [ProjPoint("cr:1,1", [1, qi(0, 1), 1, 0])]),
        ("cr:2,1", "cr-noncentral", [ProjPoint("cr:2,1", [1, 0, qi(1), qi(0, 1), 0])]),
    ]
    for tag, scenario, pts in probes:
        rep = fixed_set_codimension_probe(get_model(tag), scenario, pts)
        checks.append(check_record(
            f"codimension-{scenario}", "fixed-set-codimension", rep["ok"],
            inputs={"model": tag},
            outputs={"expected": rep["expected_codimension"]}))

    flam_scenarios = [
        ("cproj:2", "cproj", "default"),
        ("hproj:2", "hproj", "default"),
        ("cr:1,1", "cr-central", "central"),
        ("cr:2,1", "cr-noncentral", "timelike"),
    ]
    for tag, scenario, kind in flam_scenarios:
        model = get_model(tag)
        a = standard_isotropy(model, kind)
        elements = _family_elements(model, scenario, rng, int(p["family_elements"]))
        carrier = samplers.carrier_samples(model, rng, int(p["flamboyance_points"]))
        rep = flamboyance_check(model, a, scenario, elements, carrier, rng)
        checks.append(check_record(
            f"flamboyance-{scenario}", "flamboyance-family", rep["ok"],
            inputs={"model": tag, "elements": len(elements), "carrier_points": len(carrier)},
            outputs={k: rep[k] for k in (
                "invariant", "fix_meets_base_only", "pairwise_locus",
                "pairwise_path_connected", "covered", "uncovered",
                "null_direction_excluded")}))
    return checks


def _family_elements(model, scenario, rng, count):
    elements = []
    guard = 0
    while len(elements) < count and guard < 200:
        guard += 1
        if scenario in ("cproj", "hproj"):
            draw = samplers.rand_quat if scenario == "hproj" else samplers.rand_qi
            d = [draw(rng) for _ in range(model.matrix_dim - 1)]
            if d[0].is_zero():
                continue
        elif scenario == "cr-central":
            d = [samplers.rand_qi(rng) for _ in range(model.matrix_dim - 2)]
        else:
            d = [samplers.rand_qi(rng) for _ in range(model.matrix_dim - 3)]
        try:
            elements.extend(line_family(model, scenario, [d]))
        except FamilyConditionViolated:
            continue
    return elements


# ---------------------------------------------------------------------------
# shrinking
# ---------------------------------------------------------------------------

def suite_shrinking(cfg: dict) -> List[dict]:
    rng = _rng(cfg, "shrinking")
    p = cfg["params"]
    checks = []

    trap_total = 0
    trap_ok = 0
    display_ok = 0
    for tag in ("cr:1,0", "cr:1,1"):
        model = get_model(tag)
        mid = model.middle
        done = 0
        while done < int(p["cr_draws"]) // 2:
            x = samplers.rand_qi(rng)
            y = [samplers.rand_qi(rng) for _ in range(mid - 1)]
            tau = Fraction(rng.randint(1, 4), rng.randint(1, 2)) * rng.choice([1, -1])
            k = rng.randint(1, 6)
            t = Fraction(rng.randint(0, 8), 8)
            try:
                step = cr_shrinking_paths(model, x, y, tau, k, t)
            except SingularZ:
                continue
            trap_total += 1
            trap_ok += step.trapped
            display_ok += bool(step.matches_display)
            done += 1
    checks.append(check_record(
        "cr-trapping", "cr-horospherical-trapping", trap_ok == trap_total,
        inputs={"draws": trap_total}, outputs={"trapped": trap_ok}))
    checks.append(check_record(
        "cr-velocity-display", "cr-body-velocity-display", display_ok == trap_total,
        inputs={"draws": trap_total}, outputs={"matched": display_ok}))

    model11 = get_model("cr:1,1")
    a_t = standard_isotropy(model11, "timelike")
    basepoint_ok = all(
        cr_shrinking_paths(model11, qi(1, -1), [qi(2)], Fraction(1, 2), k, 0).beta
        == isotropy_power(model11, a_t, k)
        for k in (1, 3, 5)
    )
    checks.append(check_record(
        "shrinking-path-basepoint", "shrinking-path-basepoint", basepoint_ok))

    spacelike_total = 0
    spacelike_ok = 0
    done = 0
    while done < 6:
        x = samplers.rand_qi(rng)
        y = [samplers.rand_qi(rng)]
        tau = Fraction(rng.randint(1, 3))
        k, t = rng.randint(1, 5), Fraction(rng.randint(0, 5), 5)
        try:
            step = cr_shrinking_paths(model11, x, y, tau, k, t, kind="spacelike")
        except SingularZ:
            continue
        spacelike_total += 1
        spacelike_ok += step.trapped
        done += 1
    checks.append(check_record(
        "cr-spacelike-trapping", "cr-spacelike-trapping",
        spacelike_ok == spacelike_total, inputs={"draws": spacelike_total}))

    lambdas = [Fraction(s) for s in p["char_lambdas"]]
    char_total = 0
    char_ok = 0
    for tag in ("cr:1,1", "cr:2,0"):
        model = get_model(tag)
        done = 0
        while done < int(p["cr_draws"]) // 2:
            x = samplers.rand_qi(rng)
            y = [samplers.rand_qi(rng) for _ in range(model.middle - 1)]
            tau = Fraction(rng.randint(1, 4), rng.randint(1, 2))
            k, t = rng.randint(1, 6), Fraction(rng.randint(1, 8), 8)
            try:
                good = verify_characteristic_polynomial(model, x, y, tau, k, t, lambdas)
            except SingularZ:
                continue
            char_total += 1
            char_ok += bool(good)
            done += 1
    checks.append(check_record(
        "cr-characteristic-polynomial", "cr-characteristic-polynomial",
        char_ok == char_total,
        inputs={"draws": char_total, "lambdas": [str(l) for l in lambdas]}))

    k_list = [int(k) for k in p["k_list"]]
    model10 = get_model("cr:1,0")
    rep = shrinking_arclength(model10, 0, [], 1, k_list)
    expected10 = math.sqrt(101.0) * (2.0 / 100.0) * math.atan(50.0)
    first_val = rep.arclengths[0] if rep.arclengths else float("nan")
    value_ok = abs(first_val - expected10) < 1e-6 if k_list and k_list[0] == 10 else True
    decreasing = all(b < a for a, b in zip(rep.arclengths, rep.arclengths[1:]))
    below = rep.arclengths[min(2, len(rep.arclengths) - 1)] < 0.01 if len(rep.arclengths) >= 3 else True
    checks.append(check_record(
        "shrinking-arclength", "shrinking-arclength-series",
        value_ok and decreasing and below and rep.verdict == "SHRINKS",
        inputs={"x": "0", "y": [], "tau": "1", "k_list": k_list},
        outputs={"arclengths": rep.arclengths, "closed_form_k10": expected10,
                 "verdict": rep.verdict},
        residual=abs(first_val - expected10)))
    checks.append(check_record(
        "shrinking-bound", "shrinking-arclength-bound", rep.bound_satisfied,
        outputs={"bounds": [b if b is not None else -1.0 for b in rep.bounds]}))

    rep2 = shrinking_arclength(model11, qi(1, -1), [qi(1, 1)], Fraction(3, 2), [10, 100, 1000])
    checks.append(check_record(
        "shrinking-general-params", "shrinking-arclength-series",
        rep2.verdict == "SHRINKS" and rep2.bound_satisfied,
        outputs={"arclengths": rep2.arclengths}))

    try:
        shrinking_arclength(model10, 1, [], 0, [10])
        tau_guard = False
    except ValueError:
        tau_guard = True
    checks.append(check_record(
        "shrinking-precondition", "shrinking-tau-precondition", tau_guard))
    return checks


# ---------------------------------------------------------------------------
# sprawl
# ---------------------------------------------------------------------------

def suite_sprawl(cfg: dict) -> List[dict]:
    p = cfg["params"]
    checks = []
    mesh_override = cfg.get("mesh")

    torus = torus_translation_scenario(mesh_resolution=int(mesh_override or p["torus_mesh"]))
    window = int(p["torus_window"])
    agree = 0
    total = 0
    yes_count = 0
    unresolved = 0
    mesh = mesh_points(torus.region, torus.mesh_resolution)
    for pt in mesh:
        for i in range(-window, window + 1):
            for j in range(i + 1, window + 1):
                q = partner_point(torus, i, pt, j)
                if q is None:
                    continue
                want = lift_oracle(torus, i, pt, j, q)
                got = sprawl_equivalent(torus, (i, pt), (j, q))
                total += 1
                if got.status == "UNKNOWN":
                    unresolved += 1
                elif got.is_yes == want:
                    agree += 1
                    yes_count += got.is_yes
    reflexive_ok = all(
        sprawl_equivalent(torus, (i, pt), (i, pt)).is_yes
        for pt in mesh[:20] for i in (-1, 0, 2)
    )
    sample_certs = []
    for pt in mesh:
        if len(sample_certs) >= 2:
            break
        q = partner_point(torus, 0, pt, 1)
        if q is None:
            continue
        v = sprawl_equivalent(torus, (0, pt), (1, q))
        if v.is_yes:
            sample_certs.append(v.serialize())
    checks.append(check_record(
        "sprawl-torus-oracle", "sprawl-torus-lift-oracle",
        total > 0 and agree == total and unresolved == 0 and reflexive_ok,
        inputs={"mesh": torus.mesh_resolution, "window": window, "pairs": total},
        outputs={"agreements": agree, "identifications": yes_count,
                 "unresolved": unresolved,
                 "agreement_rate": agree / total if total else 0.0,
                 "sample_certificates": sample_certs}))

    rotation = rotation_scenario(mesh_resolution=int(p["rotation_mesh"]))
    witnesses = naive_hausdorff_violation(rotation, 7, mesh_resolution=int(p["rotation_mesh"]))
    checks.append(check_record(
        "naive-hausdorff-violation", "naive-gluing-hausdorff-defect",
        len(witnesses) >= 1,
        inputs={"iterate": 7, "mesh": p["rotation_mesh"]},
        outputs={"witnesses": len(witnesses), "witness_points": witnesses[:3]}))

    # pairs across charts 0 and 7 in the wedge where the naive gluing fails:
    # the witnesses sit on the wedge's ball boundary, the wedge is their
    # adjacent violation locus
    pair_goal = int(p["witness_pairs"])
    rmesh = mesh_points(rotation.region, int(p["rotation_mesh"]))
    wedge = [x for x in rmesh
             if rotation.in_iterate(0, x) and rotation.in_iterate(7, x)
             and not naive_identified(rotation, 0, 7, x)]
    certified = 0
    attempted = 0
    for x in wedge:
        if certified >= pair_goal:
            break
        q = partner_point(rotation, 0, x, 7)
        if q is None:
            continue
        attempted += 1
        v = sprawl_equivalent(rotation, (0, x), (7, q))
        if not v.is_yes:
            continue
        ok1, _ = validate_incrementation(rotation, v.loop, v.incrementation)
        ok2 = v.loop.is_constant() or certify_backtracking(v.loop.to_development_path())[0]
        if ok1 and ok2:
            certified += 1
    checks.append(check_record(
        "sprawl-rotation-witness-pairs", "sprawl-salvages-naive-defect",
        certified >= pair_goal,
        inputs={"requested": pair_goal, "wedge_points": len(wedge)},
        outputs={"certified_pairs": certified, "attempted": attempted}))

    scaling = affine_scaling_scenario(mesh_resolution=int(p["affine_mesh"]))
    awin = int(p["affine_window"])
    amesh = mesh_points(scaling.region, scaling.mesh_resolution)
    a_total = 0
    a_agree = 0
    a_unknown = 0
    for pt in amesh:
        for i in range(-awin, awin + 1):
            for j in range(i, awin + 1):
                q = partner_point(scaling, i, pt, j)
                if q is None:
                    continue
                a_total += 1
                want = scaling.apply_power(i, pt) == scaling.apply_power(j, q)
                got = sprawl_equivalent(scaling, (i, pt), (j, q))
                if got.status == "UNKNOWN":
                    a_unknown += 1
                elif got.is_yes == want:
                    a_agree += 1
    unknown_rate = a_unknown / a_total if a_total else 0.0
    checks.append(check_record(
        "sprawl-affine-characterization", "sprawl-affine-scaling-characterization",
        a_total > 0 and a_agree + a_unknown == a_total and a_agree > 0 and unknown_rate < 0.05,
        inputs={"mesh": scaling.mesh_resolution, "window": awin, "pairs": a_total},
        outputs={"agreements": a_agree, "unknown": a_unknown, "unknown_rate": unknown_rate}))

    naive_atlas = build_sprawl_atlas(rotation, (0, 2), mesh_resolution=10, mode="NAIVE")
    sprawl_atlas = build_sprawl_atlas(rotation, (0, 2), mesh_resolution=10, mode="SPRAWL")
    subset = naive_atlas.identified_pairs() <= sprawl_atlas.identified_pairs()
    checks.append(check_record(
        "naive-refines", "naive-subset-of-sprawl", subset,
        outputs={"naive": len(naive_atlas.identifications),
                 "sprawl": len(sprawl_atlas.identifications)}))

    rng = _rng(cfg, "sprawl-embedding")
    for tag, scenario, kind in ORBIT_SCENARIOS:
        model = get_model(tag)
        a = standard_isotropy(model, kind)
        pts = samplers.orbit_samples(model, scenario, rng, 20)
        pts += samplers.fixed_samples(model, scenario, rng, 5)
        rep = klein_embedding_image(model, a, pts, window=1024)
        checks.append(check_record(
            f"klein-embedding-{scenario}", "klein-embedding-density", rep["ok"],
            inputs={"model": tag, "points": len(pts)},
            outputs={"covered": rep["covered"], "complement": rep["complement"],
                     "max_level": rep["max_level"]}))
    return checks


# ---------------------------------------------------------------------------
# holonomy
# ---------------------------------------------------------------------------

def suite_holonomy(cfg: dict) -> List[dict]:
    rng = _rng(cfg, "holonomy")
    p = cfg["params"]
    checks = []

    lattice_ok = True
    worst = 0.0
    for k1, k2 in ((1, 0), (0, 1), (2, 3), (-1, 2)):
        path = polyline_path([(Fraction(0), Fraction(0)), (Fraction(k1), Fraction(0)),
                              (Fraction(k1), Fraction(k2))])
        hol = loop_holonomy(path, 3, h_gamma=Mat.identity(3))
        resid = (hol - translation_matrix([k1, k2])).norm()
        worst = max(worst, resid)
        lattice_ok = lattice_ok and resid < 1e-8
    checks.append(check_record(
        "torus-lattice-development", "torus-lattice-development", lattice_ok,
        residual=worst))

    from ..development import PLPath, Segment

    back_ok = True
    for _ in range(12):
        segs = []
        for i in range(3):
            x = Mat.zeros(3).with_entry(1, 0, qi(rng.randint(-3, 3), rng.randint(-3, 3)))
            x = x.with_entry(2, 0, qi(rng.randint(-2, 2)))
            segs.append(Segment((i,), (i + 1,), x, Fraction(rng.randint(1, 3), 2)))
        fwd = PLPath(segs)
        loop = fwd.concat(fwd.reversed())
        ok, _ = certify_backtracking(loop)
        back_ok = back_ok and ok and loop_holonomy(loop, 3) == Mat.identity(3)
    checks.append(check_record(
        "backtracking-trivial-holonomy", "backtracking-loops-develop-trivially", back_ok))

    d1 = develop_path(polyline_path([(Fraction(0), Fraction(0)), (Fraction(1), Fraction(2))]), 3)
    d2 = develop_path(polyline_path([(Fraction(1), Fraction(2)), (Fraction(2), Fraction(2))]), 3)
    joint = develop_path(polyline_path(
        [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(2)), (Fraction(2), Fraction(2))]), 3)
    checks.append(check_record(
        "development-concatenation", "development-multiplicative",
        joint.endpoint == d1.endpoint * d2.endpoint))

    a = Mat([[Fraction(1, 2), 0], [0, 1]])
    bound = int(p["hol_word_bound"])
    closure = sprawl_holonomy([translation_matrix([1])], a, word_bound=bound,
                              element_cap=int(p["element_cap"]))
    offsets = {Fraction(0), Fraction(1), Fraction(-1)}
    letters = (Fraction(1), Fraction(-1))
    for _ in range(bound):
        new = set(offsets)
        for c in offsets:
            new.update({-c, c / 2, c * 2})
            for d in letters:
                new.add(c + d)
        offsets = new
    got = {g[0, 1].a for g in closure.elements}
    dyadic_ok = got == offsets and not closure.saturated
    dyadic_ok = dyadic_ok and {Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)} <= got
    checks.append(check_record(
        "aff1-dyadic-closure", "dyadic-translation-closure", dyadic_ok,
        inputs={"word_bound": bound},
        outputs={"elements": len(closure.elements), "saturated": closure.saturated}))

    trivial = sprawl_holonomy([], a, word_bound=4)
    checks.append(check_record(
        "closure-trivial", "trivial-holonomy-closure",
        trivial.saturated and len(trivial.elements) == 1))
    return checks


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

SUITES: Dict[str, Callable[[dict], List[dict]]] = {
    "verify-models": suite_verify_models,
    "verify-ballast": suite_verify_ballast,
    "dynamics": suite_dynamics,
    "shrinking": suite_shrinking,
    "sprawl": suite_sprawl,
    "holonomy": suite_holonomy,
}


def run_suite(cfg: dict | None) -> dict:
    cfg = _validate(_merge_config(cfg))
    name = cfg["suite"]
    checks: List[dict] = []
    if name == "all":
        for suite_name in SUITE_NAMES:
            checks.extend(SUITES[suite_name](cfg))
    else:
        checks = SUITES[name](cfg)
    return assemble_report(name, __version__, cfg, checks)
