import itertools
import random
from fractions import Fraction

import pytest

from affinelink import charge
from affinelink.level import KappaLaurent, Level
from affinelink.rootsys import Weight, root_system
from affinelink.shapovalov import oracle
from affinelink.shapovalov.verma import AffineVerma

A1 = root_system("A1")
M2 = Level.rational(-2)


def brute_force_dimension(rs, d, gamma):
    """Count PBW monomials of depth ``d`` and root-lattice weight ``-gamma`` by enumeration.

    Independent of the module code: the lowering alphabet is rebuilt from the
    root list, and multisets are enumerated blindly then filtered.
    """
    alphabet = []
    for n in range(1, d + 1):
        alphabet += [(tuple(rs.simple_coords(r)), n) for r in rs.roots]
        alphabet += [((0,) * rs.rank, n)] * rs.rank
    alphabet += [(tuple(rs.simple_coords(r)), 0) for r in rs.roots
                 if not rs.is_positive_root(r)]
    labelled = list(enumerate(alphabet))
    height = sum(gamma)
    max_len = d + height + d * int(rs.height(rs.highest_root))
    target = tuple(-c for c in gamma)
    count = 0
    for length in range(max_len + 1):
        for combo in itertools.combinations_with_replacement(labelled, length):
            if sum(n for _, (_, n) in combo) != d:
                continue
            wt = tuple(sum(w[i] for _, (w, _) in combo) for i in range(rs.rank))
            if wt == target:
                count += 1
    return count


class TestWeightSpace:
    def test_top(self):
        basis = oracle.verma_weight_space(A1, M2, Weight([3]), 0, Weight([3]))
        assert len(basis) == 1 and basis[0].generators == ()

    def test_one_finite_lowering(self):
        basis = oracle.verma_weight_space(A1, M2, Weight([3]), 0, Weight([1]))
        assert len(basis) == 1 and len(basis[0].generators) == 1
        assert basis[0].weight == Weight([1])

    def test_depth_one_top_weight(self):
        verma = AffineVerma(A1, M2, Weight([3]), 1)
        basis = verma.weight_space(1, Weight([3]))
        assert len(basis) == 2
        gens = sorted(tuple(verma.lowering[i] for i in m) for m in basis)
        e = A1.root_index(A1.roots[0])
        f = A1.root_index(-A1.roots[0])
        h = verma.real.n_roots
        assert gens == sorted([((h, -1),), ((e, -1), (f, 0))]) or gens == sorted(
            [((h, -1),), ((f, 0), (e, -1))])

    @pytest.mark.parametrize("code,d,gamma", [
        ("A1", 1, (0,)), ("A1", 2, (0,)), ("A1", 2, (1,)), ("A1", 3, (-1,)), ("A1", 2, (3,)),
        ("A2", 1, (0, 0)), ("A2", 1, (1, 1)), ("A2", 2, (1, 0)), ("B2", 1, (1, 1)),
    ])
    def test_matches_independent_enumeration(self, code, d, gamma):
        rs = root_system(code)
        lam = Weight([Fraction(1, 3)] * rs.rank)
        verma = AffineVerma(rs, Level.generic(), lam, d)
        nu = lam - rs.from_simple_coords(gamma)
        assert len(verma.weight_space(d, nu)) == brute_force_dimension(rs, d, gamma)

    def test_depth_cap(self):
        verma = AffineVerma(A1, M2, Weight([0]), 1)
        from affinelink.shapovalov.verma import DepthExceeded
        with pytest.raises(DepthExceeded):
            verma.pieces(2, 0)


class TestShapovalov:
    @pytest.mark.parametrize("lam", [Fraction(3), Fraction(-1, 2), Fraction(7, 3)])
    def test_single_lowering(self, lam):
        mat = oracle.shapovalov_matrix(A1, M2, Weight([lam]), 0, Weight([lam - 2]))
        assert mat == [[lam]]

    def test_top_line(self):
        assert oracle.shapovalov_matrix(A1, M2, Weight([5]), 0, Weight([5])) == [[1]]

    def test_zero_entry_has_kernel(self):
        rep = oracle.shapovalov_report(A1, M2, Weight([0]), 0, 1)
        piece = rep.piece(0, Weight([-2]))
        assert piece.matrix == ((0,),) and piece.kernel_dim == 1

    def test_empty_piece_rejected(self):
        with pytest.raises(ValueError):
            oracle.shapovalov_matrix(A1, M2, Weight([0]), 0, Weight([2]))

    def test_generic_entries_are_polynomials(self):
        mat = oracle.shapovalov_matrix(A1, Level.generic(), Weight([1]), 1, Weight([1]))
        kappa = KappaLaurent.kappa()
        # <h t^-1 v, h t^-1 v> = (h, h) K = 2 (kappa - 2)
        assert mat == [[2 * kappa - 4, 2], [2, kappa - 1]]

    def test_symmetric_and_determinant(self):
        rep = oracle.shapovalov_report(root_system("A2"), Level.rational(Fraction(-3, 2)),
                                       Weight([1, 0]), 1, 2)
        for piece in rep.pieces:
            assert piece.symmetric
            assert (piece.determinant == 0) == (piece.kernel_dim > 0)


class TestSingularVectors:
    def test_f_squared(self):
        found = oracle.singular_vectors(A1, M2, Weight([1]), 0, 3)
        assert [(d, nu) for d, nu, _ in found] == [(0, Weight([-3]))]
        (_, _, ker), = found
        verma = AffineVerma(A1, M2, Weight([1]), 0)
        f = verma.low_id[(A1.root_index(-A1.roots[0]), 0)]
        assert len(ker) == 1 and list(ker[0]) == [(f, f)]

    @pytest.mark.parametrize("lam", [Fraction(-2), Fraction(1, 2), Fraction(-5, 3)])
    def test_no_finite_singular_vectors_off_dominant(self, lam):
        found = oracle.singular_vectors(A1, M2, Weight([lam]), 0, 6)
        assert found == []

    def test_generic_level_has_no_loop_singular_vectors(self):
        found = oracle.singular_vectors(A1, Level.generic(), Weight([2]), 2, 4)
        assert [(d, nu) for d, nu, _ in found] == [(0, Weight([-4]))]

    def test_every_kernel_vector_is_singular(self):
        verma = AffineVerma(A1, M2, Weight([4]), 2)
        for d, _, ker in oracle.singular_vectors(A1, M2, Weight([4]), 2, 6, verma=verma):
            assert all(verma.is_singular(v, d) for v in ker)


class TestSugawara:
    def test_trivial_module(self):
        for k in (-1, 3):
            assert oracle.highest_weight_l0(A1, Level.rational(k), Weight([0])) == 0

    def test_alpha(self):
        assert oracle.highest_weight_l0(A1, Level.rational(3), Weight([2])) == Fraction(2, 3)
        generic = oracle.highest_weight_l0(A1, Level.generic(), Weight([2]))
        assert generic == KappaLaurent({-1: Fraction(2)})

    @pytest.mark.parametrize("code,level,lam", [
        ("A1", Fraction(-2), (3,)), ("A1", Fraction(5, 2), (Fraction(1, 2),)),
        ("A2", Fraction(-3, 2), (1, 0)), ("B2", Fraction(4), (0, 1)),
    ])
    def test_depth_shift(self, code, level, lam):
        rs = root_system(code)
        k = Level.rational(level)
        lam = Weight(lam)
        verma = AffineVerma(rs, k, lam, 2)
        for (d, _), basis in verma.pieces(2, 1).items():
            vec = {m: verma.one for m in basis}
            expect = charge.l0_eigenvalue_prediction(rs, k, lam + rs.rho, d)
            assert verma.sugawara_l0(vec, d) == expect

    def test_not_an_eigenvector(self):
        verma = AffineVerma(A1, M2, Weight([1]), 1)
        top, = verma.weight_space(0, Weight([1]))
        low, = [m for m in verma.weight_space(1, Weight([-1])) if len(m) == 1]
        with pytest.raises(ValueError):
            verma.sugawara_l0({top: verma.one, low: verma.one})


def test_weight_bookkeeping_random_states():
    rng = random.Random(11)
    rs = root_system("A2")
    verma = AffineVerma(rs, Level.rational(Fraction(-5, 3)), Weight([1, 2]), 3)
    pieces = verma.pieces(2, 2)
    keys = sorted(pieces)
    for _ in range(60):
        d, gamma = rng.choice(keys)
        vec = {m: verma.one * rng.randint(1, 5) for m in pieces[(d, gamma)]}
        a = rng.randrange(verma.real.dim)
        n = rng.randint(0, 3 - d) if d < 3 else 0
        image = verma.apply((a, -n), vec)
        shift = rs.simple_coords(verma.real.weights[a])
        for mono in image:
            assert verma.mono_depth(mono) == d + n
            expect = tuple(g - s for g, s in zip(gamma, shift))
            assert tuple(rs.simple_coords(-verma.mono_weight(mono))) == expect
