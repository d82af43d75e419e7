import itertools
from fractions import Fraction

import pytest

from affinelink.rootsys import root_system
from affinelink.shapovalov.chevalley import K, UnsupportedRank, build_truncated_affine, realize

from suites import jacobi_defect


def idx(rs, beta):
    return rs.root_index(beta)


def test_a1_brackets():
    t = build_truncated_affine(root_system("A1"), 2)
    rs = t.rs
    e, f = idx(rs, rs.roots[0]), idx(rs, -rs.roots[0])
    h = t.real.n_roots
    assert t.bracket((e, 0), (f, 0)) == {(h, 0): 1}
    assert t.bracket((e, 1), (f, -1)) == {(h, 0): 1, K: 1}
    assert t.bracket(K, (e, 1)) == {} and t.bracket((f, -2), K) == {}
    assert t.real.form[e][f] == 1 and t.real.form[h][h] == 2


@pytest.mark.parametrize("code,expected", [
    ("A2", {1}), ("B2", {1, 2}), ("G2", {1, 2, 3}), ("B3", {1, 2}), ("C3", {1, 2}),
])
def test_integer_structure_constants(code, expected):
    rs = root_system(code)
    real = realize(rs)
    seen = set()
    for a, b in itertools.product(range(real.n_roots), repeat=2):
        if rs.is_root(rs.roots[a] + rs.roots[b]):
            n = real.structure_constant(a, b)
            assert n.denominator == 1 and n != 0
            seen.add(abs(int(n)))
    assert seen == expected


@pytest.mark.parametrize("code", ["A1", "A2", "B2", "G2"])
def test_coroot_normalisation(code):
    rs = root_system(code)
    real = realize(rs)
    for a, beta in enumerate(rs.positive_roots):
        b = idx(rs, -beta)
        coroot = rs.simple_coords(rs.coroot(beta))
        expect = {real.n_roots + i: c * rs.simple_norms[i] / 2
                  for i, c in enumerate(coroot) if c}
        assert real.bracket[idx(rs, beta)][b] == expect


@pytest.mark.parametrize("code", ["A1", "A2", "B2", "G2"])
def test_form_is_invariant(code):
    real = realize(root_system(code))
    n = real.dim

    def br(x, y):
        return real.bracket[x][y]

    for x, y, z in itertools.product(range(n), repeat=3):
        lhs = sum((c * real.form[k][z] for k, c in br(x, y).items()), Fraction(0))
        rhs = sum((c * real.form[x][k] for k, c in br(y, z).items()), Fraction(0))
        assert lhs == rhs


def test_antisymmetry_exhaustive_a1():
    t = build_truncated_affine(root_system("A1"), 3)
    gens = t.generators()
    for x, y in itertools.product(gens, repeat=2):
        bxy, byx = t.bracket(x, y), t.bracket(y, x)
        assert set(bxy) == set(byx)
        assert all(bxy[g] == -byx[g] for g in bxy)


def test_jacobi_exhaustive_a1_depth3():
    t = build_truncated_affine(root_system("A1"), 3)
    gens = [g for g in t.generators() if g != K]
    for x, y, z in itertools.combinations_with_replacement(gens, 3):
        assert not jacobi_defect(t, x, y, z)


def test_sigma_is_an_anti_involution():
    t = build_truncated_affine(root_system("B2"), 2)
    for x in t.generators():
        assert t.sigma(t.sigma(x)) == x
    for x, y in itertools.product(t.generators()[:30], repeat=2):
        lhs = {t.sigma(g): c for g, c in t.bracket(x, y).items()}
        rhs = t.bracket(t.sigma(y), t.sigma(x))
        assert lhs == rhs


def test_rank_limit():
    with pytest.raises(UnsupportedRank):
        realize(root_system("A4"))
