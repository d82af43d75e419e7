from fractions import Fraction

import pytest

from affinelink import charge
from affinelink.level import KappaLaurent, Level
from affinelink.rootsys import Weight, root_system

A1 = root_system("A1")


def test_casimir_examples():
    assert charge.casimir_eigenvalue(A1, A1.rho) == 0
    assert charge.casimir_eigenvalue(A1, Weight([2])) == Fraction(3, 2)
    assert charge.casimir_eigenvalue(A1, Weight([0])) == Fraction(-1, 2)


def test_phi_examples():
    assert charge.phi(A1, Level.rational(-2), Weight([2])) == Fraction(-3, 4)
    assert charge.phi(A1, Level.generic(), Weight([0])) == KappaLaurent({-1: Fraction(-1, 2)})
    for code in ("A2", "B2", "G2"):
        rs = root_system(code)
        assert charge.phi(rs, Level.rational(Fraction(-5, 3)), rs.rho) == 0


def test_affine_highest_weight_examples():
    zero = charge.affine_highest_weight(A1, Level.rational(1), Weight([0]))
    assert zero.level_coeff == -1 and zero.delta_coeff == 0
    omega = charge.affine_highest_weight(A1, Level.rational(1), Weight([1]))
    assert omega.delta_coeff == Fraction(-3, 4)
    alpha = charge.affine_highest_weight(A1, Level.generic(), Weight([2]))
    assert alpha.to_json() == {"finite": ["2"], "level": "κ-2", "delta": "-2/κ"}


def test_delta_coefficient_identity():
    rs = root_system("B2")
    k = Level.rational(Fraction(-3, 2))
    for lam in (Weight([0, 0]), Weight([1, 3]), Weight([Fraction(1, 2), -2])):
        aw = charge.affine_highest_weight(rs, k, lam)
        assert aw.delta_coeff == -charge.casimir_eigenvalue(rs, lam + rs.rho) / (2 * k.value)


def test_phi_weyl_invariant():
    rs = root_system("G2")
    lam = Weight([2, -1])
    k = Level.rational(3)
    values = {charge.phi(rs, k, mu) for mu in rs.weyl_orbit(lam)}
    assert len(values) == 1


def test_l0_prediction():
    assert charge.l0_eigenvalue_prediction(A1, Level.rational(-2), A1.rho, 0) == 0
    ph = charge.l0_eigenvalue_prediction(A1, Level.rational(-2), Weight([2]), 3, "ph")
    assert ph == Fraction(9, 4)
    aw = charge.l0_eigenvalue_prediction(A1, Level.rational(-2), Weight([2]), 3)
    assert aw == Fraction(21, 8)
    a = charge.l0_eigenvalue_prediction(A1, Level.rational(5), Weight([3]), 4)
    b = charge.l0_eigenvalue_prediction(A1, Level.rational(5), Weight([3]), 5)
    assert b - a == 1
    with pytest.raises(ValueError):
        charge.l0_eigenvalue_prediction(A1, Level.rational(5), Weight([3]), 0, "xx")


def test_phi_is_twice_the_conformal_weight_after_shift():
    rs = root_system("A2")
    k = Level.rational(7)
    lam = Weight([2, 1])
    assert charge.phi(rs, k, lam + rs.rho) == 2 * charge.conformal_weight(rs, k, lam)
