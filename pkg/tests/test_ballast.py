import random
from fractions import Fraction

import pytest

from cartanlab.curvature import CurvatureTensorValue
from cartanlab.dynamics import (
    SingularParameter,
    ballast_projective,
    divergence_test,
    verify_eigenstructure_projective,
    verify_factorization_identity,
)
from cartanlab.matrices import Mat
from cartanlab.models import get_model
from cartanlab.scalars import Scalar, qi, quat


def rand_qi(rng, span=4):
    return qi(Fraction(rng.randint(-span, span), rng.randint(1, 3)),
              Fraction(rng.randint(-span, span), rng.randint(1, 3)))


def rand_quat(rng, span=3):
    return quat(*(Fraction(rng.randint(-span, span), rng.randint(1, 2)) for _ in range(4)))


def test_ballast_matrix_instantiated():
    model = get_model("cproj:2")
    b, advisory = ballast_projective(model, 1, [0], 1)
    assert b == Mat([[2, 1, 0], [0, Fraction(1, 2), 0], [0, 0, 1]])
    assert advisory is None


def test_ballast_identity_at_k0():
    model = get_model("cproj:2")
    b, _ = ballast_projective(model, qi(2, 1), [qi(1)], 0)
    assert b == Mat.identity(3)


def test_ballast_singular_parameter():
    model = get_model("cproj:2")
    with pytest.raises(SingularParameter):
        ballast_projective(model, -1, [0], 1)


def test_ballast_negative_real_advisory():
    model = get_model("cproj:2")
    _, advisory = ballast_projective(model, qi(Fraction(-1, 2)), [0], 1)
    assert advisory is not None and "-infinity" in advisory


def test_factorization_identity_worked_example():
    model = get_model("cproj:2")
    assert verify_factorization_identity(model, 1, [0], 1, 1)


def test_factorization_identity_singular_parameter():
    model = get_model("cproj:2")
    with pytest.raises(SingularParameter):
        verify_factorization_identity(model, -1, [0], 1, 1)


def test_factorization_identity_t0():
    model = get_model("cproj:2")
    assert verify_factorization_identity(model, qi(2, -1), [qi(1, 1)], 0, 3)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_factorization_identity_random_complex(m):
    rng = random.Random(100 + m)
    model = get_model(f"cproj:{m}")
    done = 0
    while done < 25:
        x = rand_qi(rng)
        if x.is_zero():
            continue
        y = [rand_qi(rng) for _ in range(m - 1)]
        t = Fraction(rng.randint(0, 8), 8)
        k = rng.randint(-10, 10)
        if (Scalar(1) + Scalar(k) * Scalar(t) * x).is_zero():
            continue
        assert verify_factorization_identity(model, x, y, t, k)
        done += 1


@pytest.mark.parametrize("m", [1, 2])
def test_factorization_identity_random_quaternionic(m):
    rng = random.Random(55 + m)
    model = get_model(f"hproj:{m}")
    done = 0
    while done < 25:
        x = rand_quat(rng)
        if x.is_zero():
            continue
        y = [rand_quat(rng) for _ in range(m - 1)]
        t = Fraction(rng.randint(0, 6), 6)
        k = rng.randint(-10, 10)
        if (Scalar(1) + Scalar(k) * Scalar(t) * x).is_zero():
            continue
        assert verify_factorization_identity(model, x, y, t, k)
        done += 1


def _draws(rng):
    def gen(count):
        return [tuple(rand_qi(rng, 3) for _ in range(count)) for _ in range(4)]

    return gen


def test_eigenstructure_worked_values():
    model = get_model("cproj:2")
    rng = random.Random(4)
    report = verify_eigenstructure_projective(model, 1, [0], 1, _draws(rng))
    assert report["ok"]
    by_name = {f["name"]: f for f in report["families"]}
    # E12 eigenvalue (1+kx)^2 = 4 at x = 1, k = 1
    assert by_name["p_plus_top"]["failures"] == 0


def test_eigenstructure_random_draws():
    rng = random.Random(17)
    model = get_model("cproj:2")
    done = 0
    while done < 20:
        x = rand_qi(rng, 3)
        if x.is_zero():
            continue
        y = [rand_qi(rng, 3)]
        k = rng.randint(-6, 6)
        w = Scalar(1) + Scalar(k) * x
        u = Scalar(2) + Scalar(k) * x
        if w.is_zero() or u.is_zero():
            continue
        report = verify_eigenstructure_projective(model, x, y, k, _draws(rng))
        assert report["ok"], report
        done += 1


def test_eigenvalue_one_third_example():
    # the g_-1-type family at x = 1, k = 2 carries eigenvalue 1/3
    from cartanlab.dynamics.ballast import eigenvector_families

    model = get_model("cproj:2")
    fams = {f.name: f for f in eigenvector_families(model, qi(1), [qi(0)])}
    lam = fams["g_mixed_lower"].eigenvalue(qi(1), 2)
    assert lam == qi(Fraction(1, 3))


def test_divergence_of_positive_weight_value():
    model = get_model("cproj:2")
    e12 = Mat.zeros(3).with_entry(0, 1, 1)
    e13 = Mat.zeros(3).with_entry(0, 2, 1)
    w = CurvatureTensorValue.from_triples(model, [(e12, e13, e12, Fraction(1))])

    def gen(k):
        b, _ = ballast_projective(model, 1, [0], k)
        return b

    verdict = divergence_test(model, gen, w, [1, 2, 4, 8, 16, 32])
    assert verdict["verdict"] == "DIVERGES"


def test_divergence_zero_value():
    model = get_model("cproj:2")
    w = CurvatureTensorValue(model)

    def gen(k):
        b, _ = ballast_projective(model, 1, [0], k)
        return b

    verdict = divergence_test(model, gen, w, [1, 2])
    assert verdict["verdict"] == "INCONCLUSIVE"


def test_divergence_exempt_cr_slot():
    from cartanlab.curvature import algebra_basis
    from cartanlab.dynamics import cr_shrinking_paths

    model = get_model("cr:1,1")
    basis = algebra_basis(model)
    plus1 = [b for b in basis if b.grade == 1]
    gm2 = next(b for b in basis if b.grade == -2)
    w = CurvatureTensorValue(model, {(plus1[0].index, plus1[1].index, gm2.index): Fraction(1)})

    def gen(k):
        return cr_shrinking_paths(model, 0, [0], 1, k, Fraction(1, 2)).beta

    verdict = divergence_test(model, gen, w, [2, 4])
    assert verdict["verdict"] == "EXEMPT"
