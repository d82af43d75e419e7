from fractions import Fraction

from affinelink.level import Level
from affinelink.linkage import BlockQuery
from affinelink.rootsys import Weight, root_system
from affinelink.shapovalov import oracle

A1 = root_system("A1")
GEN = Level.generic()
M2 = Level.rational(-2)


def keys(report):
    return [(s.depth, s.weight) for s in report.singular]


def test_finite_slice_single_reflection():
    rep = oracle.verify_kk(A1, GEN, Weight([2]), 1)
    assert rep.ok
    assert keys(rep) == [(0, Weight([-4]))]
    assert [len(c) for _, _, c in rep.predicted] == [1]


def test_minus_rho_is_empty():
    rep = oracle.verify_kk(A1, M2, Weight([-1]), 2)
    assert rep.ok and rep.singular == () and rep.predicted == ()


def test_loop_singular_vector_matches_chain():
    rep = oracle.verify_kk(A1, M2, Weight([4]), 2, casimir_filter=False)
    assert rep.ok
    assert (2, Weight([2])) in keys(rep)
    chain = next(c for d, w, c in rep.predicted if (d, w) == (2, Weight([2])))
    assert [(s.beta, s.m) for s in chain.steps] == [(A1.roots[0], 2)]


def test_literal_orientation_disagrees_with_oracle():
    q = BlockQuery(A1, M2, max_chain_len=6, max_m=2, convention="literal")
    rep = oracle.verify_kk(A1, M2, Weight([4]), 2, query=q, height_cap=6,
                           casimir_filter=False)
    assert not rep.ok and rep.missing and rep.extra


def test_casimir_filter_loses_nothing():
    for level in (M2, Level.rational(Fraction(-3, 2)), GEN):
        for lam in (Weight([4]), Weight([1]), Weight([Fraction(3, 2)])):
            a = oracle.verify_kk(A1, level, lam, 3, casimir_filter=True)
            b = oracle.verify_kk(A1, level, lam, 3, casimir_filter=False)
            assert keys(a) == keys(b) and a.ok and b.ok


def test_rank_two_cell():
    rs = root_system("A2")
    rep = oracle.verify_kk(rs, Level.rational(-1), Weight([1, 0]), 1, casimir_filter=False)
    assert rep.ok


def test_report_json_shape():
    rep = oracle.verify_kk(A1, M2, Weight([4]), 2)
    doc = rep.to_json()
    assert set(doc) == {"singular", "predicted", "missing", "extra", "horizon", "l0_convention"}
    assert doc["l0_convention"] == "aw"
    assert doc["horizon"]["depth"] == 2


def test_l0_arbitration():
    levels = [Level.rational(k) for k in (-1, -2, 3)]
    weights = [Weight([0]), Weight([1]), Weight([2])]
    arb = oracle.arbitrate_l0(A1, levels, weights)
    assert arb.convention == "aw"
    assert all(cell.matches == ("aw",) for cell in arb.cells)
