"""Angle classification, exact 2x2 order test, step bound, normal criterion."""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction as F

import pytest

from conftest import diag_model, sierpinski_model, twin_dragon_model
from fractalhull.errors import FractalHullError
from fractalhull.linalg import RATIONAL, ToleranceConfig, make_matrix
from fractalhull.spectral import (
    classify_angle,
    compute_step_bound,
    distinct_eigenvalues,
    exact_angle_order_2x2,
    facet_normal_criterion,
    validate_spectrum,
)

TOL = ToleranceConfig()


def test_positive_real():
    cls = classify_angle(complex(2.0, 0.0), TOL)
    assert cls.modulus == 2.0
    assert cls.rational_angle == (0, 1)


def test_negative_real():
    cls = classify_angle(complex(-3.0, 0.0), TOL)
    assert cls.rational_angle == (1, 1)
    # and the same for the conjugate representation with negative zero
    cls = classify_angle(complex(-3.0, -0.0), TOL)
    assert cls.rational_angle == (1, 1)


def test_quarter_turn():
    cls = classify_angle(complex(1.0, 1.0), TOL)
    assert abs(cls.modulus - math.sqrt(2)) < 1e-12
    assert cls.rational_angle == (1, 4)


def test_irrational_angle_rejected_and_best_candidate():
    lam = 2.0 * cmath.exp(1j)
    cls = classify_angle(lam, TOL)
    assert cls.rational_angle is None
    # with a loose tolerance the continued-fraction scan surfaces 7/22,
    # which misses the angle of 1 radian by about 4e-4
    loose = ToleranceConfig(angle_tol=1e-3)
    cls = classify_angle(lam, loose)
    assert cls.rational_angle == (7, 22)
    assert 3.5e-4 < abs(1.0 - math.pi * 7 / 22) < 4.5e-4


def test_conjugate_symmetry():
    rng = random.Random(2)
    for _ in range(200):
        lam = cmath.rect(rng.uniform(0.1, 3.0), rng.uniform(-math.pi, math.pi))
        a = classify_angle(lam, TOL)
        b = classify_angle(lam.conjugate(), TOL)
        if a.rational_angle is None:
            assert b.rational_angle is None
        else:
            p, n = a.rational_angle
            if abs(p) == n or p == 0:  # real axis: conjugation is the identity
                assert b.rational_angle == (p, n)
            else:
                assert b.rational_angle == (-p, n)


def test_exact_angle_order_quarter_turn():
    T_inv = make_matrix([[1, -1], [1, 1]], RATIONAL)  # eigenvalues 1 +- i
    res = exact_angle_order_2x2(T_inv, 64)
    assert res.found and res.k == 4
    assert res.power_value == F(-4)


def test_exact_angle_order_half_turn():
    T_inv = make_matrix([[0, -2], [2, 0]], RATIONAL)  # eigenvalues +-2i
    res = exact_angle_order_2x2(T_inv, 64)
    assert res.found and res.k == 2
    assert res.power_value == F(-4)


def test_exact_angle_order_irrational():
    T_inv = make_matrix([[1, -2], [1, 1]], RATIONAL)
    res = exact_angle_order_2x2(T_inv, 64)
    assert not res.found


def test_exact_angle_order_preconditions():
    with pytest.raises(FractalHullError):
        exact_angle_order_2x2(make_matrix([[2, 0], [0, 3]], RATIONAL), 64)


def test_exact_agrees_with_float_classification():
    """Presence of a rational angle matches whenever the float residual is
    clearly inside or clearly outside the tolerance band."""
    rng = random.Random(17)
    checked = 0
    while checked < 100:
        T_inv = make_matrix(
            [[F(rng.randint(-8, 8), rng.randint(1, 8)) for _ in range(2)] for _ in range(2)],
            RATIONAL,
        )
        tr = T_inv[0][0] + T_inv[1][1]
        d = T_inv[0][0] * T_inv[1][1] - T_inv[0][1] * T_inv[1][0]
        if tr * tr - 4 * d >= 0:
            continue
        checked += 1
        exact = exact_angle_order_2x2(T_inv, TOL.denom_max)
        re = float(tr) / 2.0
        im = math.sqrt(float(4 * d - tr * tr)) / 2.0
        cls = classify_angle(complex(re, im), TOL)
        if cls.rational_angle is not None:
            residual = abs(cls.angle - math.pi * cls.rational_angle[0] / cls.rational_angle[1])
        else:
            residual = math.inf
        clearly_in = residual < TOL.angle_tol / 10
        clearly_out = residual > 10 * TOL.angle_tol
        if clearly_in:
            assert exact.found and exact.k <= TOL.denom_max
        elif clearly_out:
            assert not (exact.found and exact.k <= TOL.denom_max)


def test_step_bound_scalar_half():
    model = sierpinski_model()
    classes = [classify_angle(complex(2.0, 0.0), TOL)]
    bound = compute_step_bound(classes)
    assert bound.k == 2 and len(bound.classes) == 1
    assert model.dim == 2


def test_step_bound_twin_dragon():
    classes = [classify_angle(z, TOL) for z in (complex(1, -1), complex(1, 1))]
    product = compute_step_bound(classes, "product")
    assert product.k == 32
    lcm = compute_step_bound(classes, "lcm")
    assert lcm.k == 8
    for bound in (product, lcm):
        for cls in bound.classes:
            assert bound.k % (2 * cls.rational_angle[1]) == 0


def test_step_bound_empty():
    lam = 2.0 * cmath.exp(1j)
    classes = [classify_angle(lam, TOL), classify_angle(lam.conjugate(), TOL)]
    assert compute_step_bound(classes) is None


def test_u_members_have_real_positive_power():
    classes = [classify_angle(z, TOL) for z in (complex(1, -1), complex(1, 1), complex(3, 0))]
    bound = compute_step_bound(classes)
    for cls in bound.classes:
        power = cls.value**bound.k
        assert abs(power.imag) <= 1e-6 * abs(cls.value) ** bound.k
        assert power.real > 0


def test_distinct_eigenvalues_collapse():
    vals = [complex(2, 0), complex(2, 0), complex(1, 1)]
    assert distinct_eigenvalues(vals) == [complex(1, 1), complex(2, 0)]


def test_validate_spectrum():
    ok = validate_spectrum(make_matrix([[F(1, 2), 0], [0, F(1, 2)]], RATIONAL))
    assert ok.ok and ok.violation is None
    bad = validate_spectrum(make_matrix([[1, 0], [0, 1]], RATIONAL))
    assert bad.violation == "not_contracting"
    sing = validate_spectrum(make_matrix([[F(1, 2), 0], [F(1, 2), 0]], RATIONAL))
    assert sing.violation == "nonsingularity_failed"


def test_validate_spectrum_near_contraction_warning():
    check = validate_spectrum(
        make_matrix([[1.0 - 1e-10, 0.0], [0.0, 0.5]], "float"), mode="float"
    )
    assert check.ok
    assert any("within 1e-9" in w for w in check.warnings)


def test_normal_criterion_scalar_matrix():
    model = sierpinski_model()
    res = facet_normal_criterion(model.matrix, model.digits, 2)
    assert res.verdict == "polytope"
    assert all(check.k_found == 1 for check in res.checks)
    assert len(res.checks) == 3


def test_normal_criterion_diagonal_fails_on_hypotenuse():
    model = diag_model()
    res = facet_normal_criterion(model.matrix, model.digits, 64)
    assert res.verdict == "not_polytope"
    failing = [check for check in res.checks if check.k_found is None]
    assert len(failing) == 1
    normal = failing[0].normal
    assert normal[0] == normal[1] and normal[0] > 0  # hypotenuse direction (1, 1)


def test_normal_criterion_degenerate_digit_hull():
    model = twin_dragon_model()
    res = facet_normal_criterion(model.matrix, model.digits, 32)
    assert res.verdict == "inapplicable"


def test_normal_criterion_digit_scaling_invariance():
    model = diag_model()
    res = facet_normal_criterion(model.matrix, model.digits, 8)
    for scale in (F(1, 3), F(2), F(7, 5)):
        scaled = tuple(tuple(scale * c for c in d) for d in model.digits)
        res2 = facet_normal_criterion(model.matrix, scaled, 8)
        assert res2.verdict == res.verdict
        assert [c.k_found for c in res2.checks] == [c.k_found for c in res.checks]
