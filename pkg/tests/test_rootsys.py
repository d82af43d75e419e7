from fractions import Fraction

import pytest

from affinelink.rootsys import RootSystemError, Weight, WeylGroupTooLarge, build_root_system, root_system

# (number of roots, |W|, dual Coxeter number) from the standard classification tables
TABLE = {
    "A1": (2, 2, 2), "A2": (6, 6, 3), "A3": (12, 24, 4),
    "B2": (8, 8, 3), "B3": (18, 48, 5), "C3": (18, 48, 4),
    "G2": (12, 12, 4), "D4": (24, 192, 6), "F4": (48, 1152, 9),
}


@pytest.mark.parametrize("code", sorted(TABLE))
def test_classification_data(code):
    rs = root_system(code)
    n_roots, order, hv = TABLE[code]
    assert len(rs.roots) == n_roots
    assert rs.weyl_order == order
    assert rs.dual_coxeter == hv


def test_cartan_matrices():
    assert root_system("A2").cartan_matrix == ((2, -1), (-1, 2))
    assert root_system("B2").cartan_matrix == ((2, -1), (-2, 2))
    assert root_system("G2").cartan_matrix == ((2, -3), (-1, 2))  # alpha_1 short


def test_long_roots_have_norm_two():
    for code in ("B3", "C3", "G2", "F4"):
        rs = root_system(code)
        assert max(rs.norm2(b) for b in rs.roots) == 2


def test_rho_pairs_to_one_with_simple_coroots():
    for code in TABLE:
        rs = root_system(code)
        assert rs.rho == Weight([1] * rs.rank)
        assert all(rs.pairing(rs.rho, a) == 1 for a in rs.simple_roots)


def test_highest_root_a2():
    rs = root_system("A2")
    assert rs.highest_root == Weight([1, 1])
    assert rs.height(rs.highest_root) == 2


def test_a1_basics():
    rs = root_system("A1")
    alpha = rs.simple_roots[0]
    assert alpha == Weight([2])
    assert rs.inner(Weight([1]), Weight([1])) == Fraction(1, 2)
    assert rs.reflect(Weight([3]), alpha) == Weight([-3])
    assert rs.weyl_orbit(Weight([3])) == {Weight([3]), Weight([-3])}


def test_lattice_membership():
    rs = root_system("A1")
    assert rs.in_root_lattice(Weight([2]))
    assert not rs.in_root_lattice(Weight([1]))
    assert rs.in_coroot_lattice(Weight([4]), 2)
    assert not rs.in_coroot_lattice(Weight([2]), 2)
    b2 = root_system("B2")
    short = b2.simple_roots[1]
    assert b2.in_coroot_lattice(short * 2)
    assert not b2.in_coroot_lattice(short)


def test_weight_parse_and_json():
    w = Weight.parse("3/1, -1/2")
    assert w.coords == (Fraction(3), Fraction(-1, 2))
    assert w.to_json() == ["3", "-1/2"]
    assert Weight.from_json(w.to_json()) == w
    with pytest.raises(ValueError):
        Weight.parse("1/0")
    with pytest.raises(ValueError):
        Weight.parse("")


def test_bad_codes_and_caps():
    with pytest.raises(RootSystemError):
        root_system("X3")
    with pytest.raises(RootSystemError):
        root_system("B1")
    with pytest.raises(RootSystemError):
        root_system("A7")
    with pytest.raises(WeylGroupTooLarge):
        build_root_system("D", 4, weyl_cap=100)


def test_dimension_mismatch():
    rs = root_system("A2")
    with pytest.raises(ValueError):
        rs.inner(Weight([1]), Weight([1, 1]))
