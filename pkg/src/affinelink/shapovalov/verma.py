"""Truncated Verma modules over the affine algebra, in a PBW basis.

A vector is a dict from monomials to scalars.  A monomial is a
nondecreasing tuple of lowering-generator ids, so it stands for
``y_1 y_2 ... y_k v`` with the ids in PBW order: loop degree first (most
negative leftmost), then root height, then basis index.  Lowering generators
are ``x t^n`` with ``n < 0`` and ``f_alpha t^0``.  The central element acts
by ``kappa - h^vee``.

Scalars live in a sympy domain: ``QQ`` at a rational level and ``QQ[kappa]``
at a generic one, so the same code computes values and formal expressions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from sympy import QQ, Symbol
from sympy.polys.matrices import DomainMatrix

from ..level import KappaLaurent, Level, Scalar
from ..rootsys import RootSystem, Weight
from .chevalley import K, AffineGen, AffineTable, build_truncated_affine

Vector = dict


class DepthExceeded(ValueError):
    pass


class EmptyWeightSpace(ValueError):
    pass


_KAPPA_RING = QQ[Symbol("kappa")]


def scalar_domain(level: Level):
    """(domain, kappa as a domain element)."""
    if level.is_generic:
        return _KAPPA_RING, _KAPPA_RING.gens[0]
    return QQ, QQ(level.value.numerator, level.value.denominator)


def to_scalar(x, level: Level) -> Scalar:
    """Convert a domain element back to a Fraction or a :class:`KappaLaurent`."""
    if level.is_generic:
        terms = {}
        for (p,), c in x.terms():
            terms[p] = Fraction(int(c.numerator), int(c.denominator))
        return KappaLaurent(terms)
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class PBWMonomial:
    generators: tuple[tuple[int, int], ...]  # (basis index of g, loop degree)
    depth: int
    weight: Weight  # finite h-weight of the vector (highest weight included)

    def __str__(self) -> str:
        return "·".join(f"x{a}t^{n}" for a, n in self.generators) or "1"


class AffineVerma:
    """The Verma module of highest weight ``lam_hw`` at the given level."""

    def __init__(self, rs: RootSystem, level: Level, lam_hw: Weight, depth_cap: int,
                 table: Optional[AffineTable] = None):
        rs._check(lam_hw)
        self.rs = rs
        self.level = level
        self.lam = lam_hw
        self.depth_cap = depth_cap
        self.table = table if table is not None else build_truncated_affine(rs, depth_cap)
        self.real = self.table.real
        self.dom, self.kappa = scalar_domain(level)
        self.one = self.dom.one
        self.zero = self.dom.zero
        self._frac_cache: dict[Fraction, object] = {}
        self.central = self.kappa - self._lift(rs.dual_coxeter)
        self._memo: dict = {}
        self._build_generators()

    # -- scalars -------------------------------------------------------------------

    def _lift(self, x) -> object:
        x = Fraction(x)
        c = self._frac_cache.get(x)
        if c is None:
            c = self._frac_cache[x] = self.dom.convert(QQ(x.numerator, x.denominator))
        return c

    # -- generators ------------------------------------------------------------------

    def _build_generators(self) -> None:
        rs, real = self.rs, self.real
        low = []
        for n in range(-self.depth_cap, 1):
            for a in range(real.dim):
                if n == 0 and (real.is_cartan(a) or rs.is_positive_root(real.weights[a])):
                    continue
                low.append((n, rs.height(real.weights[a]), a))
        low.sort()
        self.lowering: tuple[tuple[int, int], ...] = tuple((a, n) for n, _, a in low)
        self.low_id = {g: i for i, g in enumerate(self.lowering)}
        self.gen_weight = tuple(real.weights[a] for a, _ in self.lowering)
        self.gen_depth = tuple(-n for _, n in self.lowering)
        self._mono_weight: dict[tuple, Weight] = {(): Weight.zero(rs.rank)}

    def raising(self, depth: int) -> list[tuple[int, int]]:
        """All raising generators that can act nontrivially below ``depth``."""
        rs, real = self.rs, self.real
        gens = [(a, 0) for a in range(real.n_roots) if rs.is_positive_root(real.weights[a])]
        gens += [(a, n) for n in range(1, depth + 1) for a in range(real.dim)]
        return gens

    def simple_raising(self) -> list[tuple[int, int]]:
        """e_i t^0 and f_theta t^1, which generate the raising subalgebra."""
        rs = self.rs
        gens = [(rs.root_index(a), 0) for a in rs.simple_roots]
        gens.append((rs.root_index(-rs.highest_root), 1))
        return gens

    # -- monomial bookkeeping --------------------------------------------------------------

    def mono_weight(self, mono: tuple) -> Weight:
        """Finite weight of the monomial's product (without the highest weight)."""
        w = self._mono_weight.get(mono)
        if w is None:
            w = self.mono_weight(mono[1:]) + self.gen_weight[mono[0]]
            self._mono_weight[mono] = w
        return w

    def mono_depth(self, mono: tuple) -> int:
        return sum(self.gen_depth[i] for i in mono)

    def describe(self, mono: tuple) -> PBWMonomial:
        return PBWMonomial(tuple(self.lowering[i] for i in mono), self.mono_depth(mono),
                           self.lam + self.mono_weight(mono))

    # -- the action ---------------------------------------------------------------------

    def act(self, g: AffineGen, mono: tuple) -> Vector:
        key = (g, mono)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._act(g, mono)
            self._memo[key] = hit
        return hit

    def _act(self, g: AffineGen, mono: tuple) -> Vector:
        if g == K:
            return {mono: self.central}
        a, n = g
        gid = self.low_id.get(g)
        if gid is not None:
            if not mono or gid <= mono[0]:
                return {(gid,) + mono: self.one}
        elif n == 0 and self.real.is_cartan(a):
            i = a - self.real.n_roots
            v = (self.lam + self.mono_weight(mono)).coords[i]
            return {mono: self._lift(v)} if v else {}
        elif not mono or n > self.mono_depth(mono):
            return {}
        y = mono[0]
        rest = mono[1:]
        out: Vector = {}
        for m2, c in self.act(g, rest).items():
            for m3, c2 in self.act(self.lowering[y], m2).items():
                out[m3] = out.get(m3, self.zero) + c * c2
        for h, c in self.table.bracket(g, self.lowering[y]).items():
            cc = self._lift(c)
            for m3, c2 in self.act(h, rest).items():
                out[m3] = out.get(m3, self.zero) + cc * c2
        return {m: c for m, c in out.items() if c}

    def apply(self, g: AffineGen, vec: Vector) -> Vector:
        out: Vector = {}
        for mono, c in vec.items():
            for m2, c2 in self.act(g, mono).items():
                out[m2] = out.get(m2, self.zero) + c * c2
        return {m: c for m, c in out.items() if c}

    def apply_combination(self, comb: dict, vec: Vector) -> Vector:
        out: Vector = {}
        for g, k in comb.items():
            kk = self._lift(k)
            for m, c in self.apply(g, vec).items():
                out[m] = out.get(m, self.zero) + kk * c
        return {m: c for m, c in out.items() if c}

    # -- graded pieces ---------------------------------------------------------------

    def _gamma(self, mono: tuple) -> tuple[Fraction, ...]:
        return self.rs.simple_coords(-self.mono_weight(mono))

    def pieces(self, max_depth: int, max_height) -> dict[tuple[int, tuple], list[tuple]]:
        """All monomials of depth <= max_depth whose weight drop has height <= max_height.

        Keys are ``(d, gamma)`` with ``gamma`` the simple-root coordinates of
        ``lam_hw - weight``.  Each list is complete for its key.
        """
        if max_depth > self.depth_cap:
            raise DepthExceeded(f"depth {max_depth} exceeds cap {self.depth_cap}")
        rs = self.rs
        loop_ids = [i for i, (a, n) in enumerate(self.lowering) if n < 0]
        zero_ids = [i for i, (a, n) in enumerate(self.lowering) if n == 0]
        zero_heights = {i: -rs.height(self.gen_weight[i]) for i in zero_ids}
        out: dict[tuple[int, tuple], list[tuple]] = {}

        def finite_part(start: int, budget, prefix: tuple):
            yield prefix
            for k in range(start, len(zero_ids)):
                i = zero_ids[k]
                h = zero_heights[i]
                if h <= budget:
                    yield from finite_part(k, budget - h, prefix + (i,))

        def loop_part(start: int, budget: int, prefix: tuple):
            yield prefix
            for k in range(start, len(loop_ids)):
                i = loop_ids[k]
                if self.gen_depth[i] <= budget:
                    yield from loop_part(k, budget - self.gen_depth[i], prefix + (i,))

        for lp in loop_part(0, max_depth, ()):
            d = self.mono_depth(lp)
            budget = max_height - rs.height(-self.mono_weight(lp))
            if budget < 0:
                continue
            for mono in finite_part(0, budget, lp):
                out.setdefault((d, self._gamma(mono)), []).append(mono)
        for key in out:
            out[key].sort()
        return out

    def weight_space(self, d: int, nu: Weight) -> list[tuple]:
        gamma = self.rs.simple_coords(self.lam - nu)
        if any(c.denominator != 1 for c in gamma):
            return []
        return self.pieces(d, sum(gamma)).get((d, gamma), [])

    # -- forms and kernels -----------------------------------------------------------------

    def pairing(self, left: tuple, right: Vector) -> object:
        """<left v, right> via the anti-involution, projected to the top line."""
        vec = right
        for y in left:
            vec = self.apply(self.table.sigma(self.lowering[y]), vec)
            if not vec:
                return self.zero
        return vec.get((), self.zero)

    def shapovalov(self, basis: list[tuple]) -> DomainMatrix:
        rows = [[self.pairing(bi, {bj: self.one}) for bj in basis] for bi in basis]
        return DomainMatrix(rows, (len(basis), len(basis)), self.dom)

    def raising_matrix(self, basis: list[tuple], gens: list) -> DomainMatrix:
        images = [[self.act(g, b) for g in gens] for b in basis]
        index: dict[tuple, int] = {}
        for per_b in images:
            for gi, img in enumerate(per_b):
                for m in img:
                    index.setdefault((gi, m), len(index))
        rows = [[self.zero] * len(basis) for _ in range(len(index))]
        for j, per_b in enumerate(images):
            for gi, img in enumerate(per_b):
                for m, c in img.items():
                    rows[index[(gi, m)]][j] = c
        return DomainMatrix(rows, (len(index), len(basis)), self.dom)

    def kernel(self, basis: list[tuple]) -> list[Vector]:
        if not basis:
            return []
        mat = self.raising_matrix(basis, self.simple_raising())
        if mat.shape[0] == 0:
            return [{b: self.one} for b in basis]
        ns = mat.nullspace().to_list()
        return [{b: c for b, c in zip(basis, row) if c} for row in ns]

    def is_singular(self, vec: Vector, depth: int) -> bool:
        return all(not self.apply(g, vec) for g in self.raising(depth))

    # -- Sugawara ------------------------------------------------------------------------

    def casimir_part(self, vec: Vector, depth: int) -> Vector:
        """Sum_p x_p x^p + 2 sum_{j >= 1} (x_p t^-j)(x^p t^j), before dividing by 2 kappa."""
        real = self.real
        out: Vector = {}

        def add(v: Vector, k):
            for m, c in v.items():
                out[m] = out.get(m, self.zero) + k * c

        for j in range(0, depth + 1):
            weight = self.one if j == 0 else self._lift(2)
            for p in range(real.dim):
                upper = {(q, j): c for q, c in real.dual[p].items()}
                inner = self.apply_combination(upper, vec)
                if inner:
                    add(self.apply((p, -j), inner), weight)
        return {m: c for m, c in out.items() if c}

    def sugawara_l0(self, vec: Vector, depth: Optional[int] = None) -> Scalar:
        """L_0 eigenvalue of ``vec``; raises if ``vec`` is not an eigenvector."""
        if not vec:
            raise ValueError("zero vector")
        if depth is None:
            depth = max(self.mono_depth(m) for m in vec)
        image = self.casimir_part(vec, depth)
        pivot = next(iter(vec))
        cp = vec[pivot]
        ratio = image.get(pivot, self.zero)
        for m in set(vec) | set(image):
            if image.get(m, self.zero) * cp != vec.get(m, self.zero) * ratio:
                raise ValueError("vector is not an L_0 eigenvector")
        if self.level.is_generic:
            eigen, rem = divmod(ratio, cp)
            if rem:
                raise ValueError("eigenvalue is not polynomial in kappa")
            return to_scalar(eigen, self.level) / (KappaLaurent.kappa() * 2)
        return to_scalar(ratio, self.level) / (2 * self.level.value * to_scalar(cp, self.level))
