"""A Chevalley basis of g and the loop algebra bracket built on it.

The basis is obtained from a faithful irreducible representation L(w) with w
the fundamental weight of smallest dimension.  L(w) is constructed weight by
weight: a vector below the top is determined by its images under the simple
raising operators, so each new weight space is the span of ``f_i b`` cut
down to an independent set.  Root vectors are then nested commutators of
the simple ones, rescaled so that ``[E_a, E_-a] = H_a`` with
``E_-a = sigma(E_a)``, sigma being the transpose for the contravariant form
on L(w).  With that normalisation every structure constant is an integer,
which :func:`realize` asserts.

Basis indexing of g: ``0 .. len(rs.roots) - 1`` are root vectors in the
order of ``rs.roots``; the last ``rank`` indices are the simple coroots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from ..rootsys import RootSystem, Weight

MAX_RANK = 3

Matrix = list[list[Fraction]]


class UnsupportedRank(ValueError):
    pass


# -- tiny exact matrix helpers (dimensions here are below 30) ---------------------

def _zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def _mul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def _sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in r] for r in a]


def _comm(a: Matrix, b: Matrix) -> Matrix:
    return _sub(_mul(a, b), _mul(b, a))


def _transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def _is_zero(a: Matrix) -> bool:
    return all(x == 0 for r in a for x in r)


def _solve(columns: list[list[Fraction]], target: list[Fraction]) -> Optional[list[Fraction]]:
    """Coefficients c with sum c_j columns[j] == target, or None."""
    n = len(columns)
    rows = len(target)
    aug = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][n] != 0 for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = aug[i][n]
    return sol


def _independent(vectors: list[list[Fraction]]) -> list[int]:
    """Indices of a maximal independent subset, greedy in input order."""
    basis: list[list[Fraction]] = []
    pivcols: list[int] = []
    keep = []
    for idx, v in enumerate(vectors):
        w = list(v)
        for b, pc in zip(basis, pivcols):
            if w[pc] != 0:
                f = w[pc]
                w = [x - f * y for x, y in zip(w, b)]
        pc = next((i for i, x in enumerate(w) if x != 0), None)
        if pc is None:
            continue
        inv = 1 / w[pc]
        w = [x * inv for x in w]
        for k, b in enumerate(basis):
            if b[pc] != 0:
                f = b[pc]
                basis[k] = [x - f * y for x, y in zip(b, w)]
        basis.append(w)
        pivcols.append(pc)
        keep.append(idx)
    return keep


# -- the irreducible module -----------------------------------------------------------

@dataclass(frozen=True)
class Module:
    """Matrices of the Chevalley generators on a finite-dimensional L(w)."""
    weights: tuple[Weight, ...]  # weight of each basis vector
    e: tuple[Matrix, ...]
    f: tuple[Matrix, ...]
    h: tuple[Matrix, ...]
    gram: Matrix  # contravariant form, <v, v> = 1 on the top vector

    @property
    def dim(self) -> int:
        return len(self.weights)


def build_module(rs: RootSystem, top: Weight, max_dim: int = 512) -> Module:
    r = rs.rank
    simple = rs.simple_roots
    # spaces[w] = list of basis ids; e_img[id][i] = coordinates of e_i b in spaces[w + a_i]
    spaces: dict[Weight, list[int]] = {top: [0]}
    weights: list[Weight] = [top]
    e_img: list[list[Optional[list[Fraction]]]] = [[None] * r]
    f_img: dict[tuple[int, int], list[Fraction]] = {}  # (id, i) -> coords in spaces[w - a_i]
    layer = [top]
    while layer:
        candidates: dict[Weight, list[tuple[int, int]]] = {}
        for w in layer:
            for i in range(r):
                nw = w - simple[i]
                for b in spaces[w]:
                    candidates.setdefault(nw, []).append((b, i))
        next_layer = []
        for nw in sorted(candidates):
            if nw in spaces:
                continue
            cand = candidates[nw]
            # images under each e_j, concatenated
            imgs = []
            for b, i in cand:
                imgs.append(_e_of_f(rs, spaces, weights, e_img, f_img, nw, b, i))
            vecs = [sum((img for img in row), []) for row in imgs]
            keep = _independent(vecs)
            if not keep:
                continue
            ids = []
            for k in keep:
                ids.append(len(weights))
                weights.append(nw)
                e_img.append(imgs[k])
            spaces[nw] = ids
            if len(weights) > max_dim:
                raise UnsupportedRank("representation too large")
            # express every candidate f_i b in the chosen basis
            cols = [vecs[k] for k in keep]
            for (b, i), v in zip(cand, vecs):
                coeffs = _solve(cols, v)
                assert coeffs is not None
                f_img[(b, i)] = coeffs
            next_layer.append(nw)
        # candidates that vanished (f_i b = 0) still need an f image
        for nw, cand in candidates.items():
            if nw not in spaces:
                for b, i in cand:
                    f_img[(b, i)] = []
        layer = next_layer

    n = len(weights)
    e_m = [_zeros(n, n) for _ in range(r)]
    f_m = [_zeros(n, n) for _ in range(r)]
    h_m = [_zeros(n, n) for _ in range(r)]
    for b in range(n):
        w = weights[b]
        for i in range(r):
            h_m[i][b][b] = w.coords[i]
            img = e_img[b][i]
            if img:
                for c, x in zip(spaces[w + simple[i]], img):
                    e_m[i][c][b] = x
            fi = f_img.get((b, i), [])
            if fi:
                for c, x in zip(spaces[w - simple[i]], fi):
                    f_m[i][c][b] = x
    gram = _contravariant_gram(rs, weights, e_m, f_m)
    return Module(tuple(weights), tuple(e_m), tuple(f_m), tuple(h_m), gram)


def _e_of_f(rs, spaces, weights, e_img, f_img, nw, b, i) -> list[list[Fraction]]:
    """Coordinates of e_j f_i b for every j, each in spaces[nw + a_j]."""
    simple = rs.simple_roots
    w = weights[b]
    out = []
    for j in range(rs.rank):
        tw = nw + simple[j]
        target = spaces.get(tw, [])
        vec = [Fraction(0)] * len(target)
        # f_i e_j b
        eb = e_img[b][j]
        if eb:
            src = spaces[w + simple[j]]
            for c, x in zip(src, eb):
                if x == 0:
                    continue
                fc = f_img.get((c, i), [])
                for k, y in enumerate(fc):
                    vec[k] += x * y
        if i == j:
            pos = target.index(b)
            vec[pos] += w.coords[i]
        out.append(vec)
    return out


def _contravariant_gram(rs: RootSystem, weights, e_m, f_m) -> Matrix:
    """Gram matrix of the form with <top, top> = 1 and f_i adjoint to e_i.

    Filled weight space by weight space going down: each basis vector y is
    written as a combination of f_i u with u higher, then
    <x, f_i u> = <e_i x, u>.
    """
    n = len(weights)
    g = _zeros(n, n)
    g[0][0] = Fraction(1)
    by_weight: dict[Weight, list[int]] = {}
    for b, w in enumerate(weights):
        by_weight.setdefault(w, []).append(b)
    top = weights[0]
    done = {top}
    for w in sorted(by_weight, key=lambda w: rs.height(top - w)):
        if w in done:
            continue
        ids = by_weight[w]
        # columns of f_i restricted to ids from each higher weight space
        spans = []  # (i, u, coefficient vector over ids)
        for i, fm in enumerate(f_m):
            for u in range(n):
                col = [fm[y][u] for y in ids]
                if any(col):
                    spans.append((i, u, col))
        # express each basis vector y as sum of f_i u
        for a, y in enumerate(ids):
            unit = [Fraction(int(k == a)) for k in range(len(ids))]
            coeffs = _solve([s[2] for s in spans], unit)
            assert coeffs is not None
            for x in ids:
                val = Fraction(0)
                for (i, u, _), c in zip(spans, coeffs):
                    if c == 0:
                        continue
                    ex = [e_m[i][z][x] for z in range(n)]
                    val += c * sum((ex[z] * g[z][u] for z in range(n) if ex[z] != 0), Fraction(0))
                g[x][y] = val
        done.add(w)
    return g


def _inverse(m: Matrix) -> Matrix:
    n = len(m)
    out = []
    cols = [[m[i][j] for i in range(n)] for j in range(n)]
    for k in range(n):
        unit = [Fraction(int(i == k)) for i in range(n)]
        out.append(_solve(cols, unit))
    return _transpose(out)


# -- the realization of g -------------------------------------------------------------

@dataclass(frozen=True)
class Realization:
    rs: RootSystem
    module: Module
    matrices: tuple[Matrix, ...]  # basis of g acting on the module
    weights: tuple[Weight, ...]  # weight of each basis element (zero for Cartan)
    bracket: tuple[tuple[dict[int, Fraction], ...], ...]  # bracket[a][b] = {c: coeff}
    form: tuple[tuple[Fraction, ...], ...]
    sigma: tuple[int, ...]  # index of the image under the anti-involution
    dual: tuple[dict[int, Fraction], ...]  # dual basis under the form

    @property
    def dim(self) -> int:
        return len(self.matrices)

    @property
    def n_roots(self) -> int:
        return len(self.rs.roots)

    def is_cartan(self, a: int) -> bool:
        return a >= self.n_roots

    def root_of(self, a: int) -> Optional[Weight]:
        return None if self.is_cartan(a) else self.rs.roots[a]

    def structure_constant(self, a: int, b: int) -> Fraction:
        """N_{alpha,beta} for root vectors with alpha + beta a root."""
        rs = self.rs
        target = rs.root_index(rs.roots[a] + rs.roots[b])
        return self.bracket[a][b].get(target, Fraction(0))


def _smallest_fundamental(rs: RootSystem) -> Weight:
    best = None
    for i in range(rs.rank):
        w = Weight([int(j == i) for j in range(rs.rank)])
        d = _weyl_dimension(rs, w)
        if best is None or d < best[0]:
            best = (d, i, w)
    return best[2]


def _weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    num = Fraction(1)
    for beta in rs.positive_roots:
        num *= rs.inner(lam + rs.rho, beta) / rs.inner(rs.rho, beta)
    return int(num)


def _decompose(rs, mats, weights, x: Matrix, wt: Weight, n_roots: int) -> dict[int, Fraction]:
    if _is_zero(x):
        return {}
    flat = [v for row in x for v in row]
    if wt.is_zero():
        ids = list(range(n_roots, len(mats)))
    else:
        ids = [rs.root_index(wt)]
    cols = [[v for row in mats[c] for v in row] for c in ids]
    coeffs = _solve(cols, flat)
    if coeffs is None:
        raise AssertionError("bracket left the span of the basis")
    return {c: k for c, k in zip(ids, coeffs) if k != 0}


@lru_cache(maxsize=None)
def realize(rs: RootSystem) -> Realization:
    if rs.rank > MAX_RANK:
        raise UnsupportedRank(f"Chevalley realization supports rank <= {MAX_RANK}, got {rs.code}")
    mod = build_module(rs, _smallest_fundamental(rs))
    s = mod.gram
    s_inv = _inverse(s)

    def sig(x: Matrix) -> Matrix:
        return _mul(_mul(s_inv, _transpose(x)), s)

    r = rs.rank
    pos = rs.positive_roots
    root_mat: dict[Weight, Matrix] = {}
    for i in range(r):
        root_mat[rs.simple_roots[i]] = [list(row) for row in mod.e[i]]
    for alpha in pos:
        if alpha in root_mat:
            continue
        i = next(i for i in range(r) if rs.is_positive_root(alpha - rs.simple_roots[i]))
        raw = _comm(root_mat[rs.simple_roots[i]], root_mat[alpha - rs.simple_roots[i]])
        hc = _comm(raw, sig(raw))
        coroot = _coroot_matrix(rs, mod, alpha)
        c = _ratio(hc, coroot)
        root_n = math.isqrt(c.numerator)
        if c.denominator != 1 or root_n * root_n != c.numerator:
            raise AssertionError(f"normalisation constant {c} is not a square")
        root_mat[alpha] = _scale(raw, Fraction(1, root_n))
    for alpha in pos:
        root_mat[-alpha] = sig(root_mat[alpha])
    mats = [root_mat[beta] for beta in rs.roots] + [list(map(list, h)) for h in mod.h]
    n_roots = len(rs.roots)
    weights = tuple(rs.roots) + tuple(Weight.zero(r) for _ in range(r))

    bracket = []
    for a in range(len(mats)):
        row = []
        for b in range(len(mats)):
            wt = weights[a] + weights[b]
            if not wt.is_zero() and not rs.is_root(wt):
                row.append({})
                continue
            row.append(_decompose(rs, mats, weights, _comm(mats[a], mats[b]), wt, n_roots))
        bracket.append(tuple(row))
    for a in range(n_roots):
        for b in range(n_roots):
            for v in bracket[a][b].values():
                if not rs.is_root(weights[a] + weights[b]):
                    continue
                if v.denominator != 1:
                    raise AssertionError("non-integral structure constant")

    coroot_gram = [[rs.inner(rs.coroot(rs.simple_roots[i]), rs.coroot(rs.simple_roots[j]))
                    for j in range(r)] for i in range(r)]
    dim = len(mats)
    form = [[Fraction(0)] * dim for _ in range(dim)]
    sigma = [0] * dim
    for a, beta in enumerate(rs.roots):
        b = rs.root_index(-beta)
        form[a][b] = 2 / rs.norm2(beta)
        sigma[a] = b
    for i in range(r):
        sigma[n_roots + i] = n_roots + i
        for j in range(r):
            form[n_roots + i][n_roots + j] = coroot_gram[i][j]
    gi = _inverse(coroot_gram)
    dual = []
    for a, beta in enumerate(rs.roots):
        dual.append({rs.root_index(-beta): rs.norm2(beta) / 2})
    for i in range(r):
        dual.append({n_roots + j: gi[i][j] for j in range(r) if gi[i][j] != 0})
    return Realization(rs, mod, tuple(mats), weights, tuple(bracket),
                       tuple(tuple(row) for row in form), tuple(sigma), tuple(dual))


def _coroot_matrix(rs: RootSystem, mod: Module, alpha: Weight) -> Matrix:
    c = rs.simple_coords(rs.coroot(alpha))
    # coroot of alpha in terms of simple coroots: alpha^vee = sum (c_i |a_i|^2 / 2) a_i^vee
    norms = rs.simple_norms
    n = mod.dim
    out = _zeros(n, n)
    for i in range(rs.rank):
        k = c[i] * norms[i] / 2
        if k:
            out = [[x + k * y for x, y in zip(r1, r2)] for r1, r2 in zip(out, mod.h[i])]
    return out


def _ratio(x: Matrix, y: Matrix) -> Fraction:
    ratio = None
    for rx, ry in zip(x, y):
        for a, b in zip(rx, ry):
            if b == 0:
                if a != 0:
                    raise AssertionError("matrices are not proportional")
                continue
            q = a / b
            if ratio is None:
                ratio = q
            elif q != ratio:
                raise AssertionError("matrices are not proportional")
    if ratio is None:
        raise AssertionError("zero coroot matrix")
    return ratio


# -- loop algebra ----------------------------------------------------------------------

K = "K"
AffineGen = Union[tuple[int, int], str]


@dataclass(frozen=True)
class AffineTable:
    """Bracket of the truncated loop algebra g[t, t^-1] + C K.

    Generators are ``(a, n)`` for basis index ``a`` of g and loop degree ``n``
    with ``|n| <= depth_cap``, plus the central ``K``.
    """
    real: Realization
    depth_cap: int

    @property
    def rs(self) -> RootSystem:
        return self.real.rs

    def generators(self) -> list[AffineGen]:
        gens: list[AffineGen] = [(a, n) for n in range(-self.depth_cap, self.depth_cap + 1)
                                 for a in range(self.real.dim)]
        gens.append(K)
        return gens

    def bracket(self, x: AffineGen, y: AffineGen) -> dict[AffineGen, Fraction]:
        if x == K or y == K:
            return {}
        (a, n), (b, m) = x, y
        out: dict[AffineGen, Fraction] = {(c, n + m): v for c, v in self.real.bracket[a][b].items()}
        if n == -m and n != 0:
            f = self.real.form[a][b]
            if f:
                out[K] = n * f
        return out

    def form(self, x: AffineGen, y: AffineGen) -> Fraction:
        """Invariant form on g, extended by pairing degrees n and -n (K is isotropic)."""
        if x == K or y == K:
            return Fraction(0)
        (a, n), (b, m) = x, y
        return self.real.form[a][b] if n == -m else Fraction(0)

    def sigma(self, x: AffineGen) -> AffineGen:
        if x == K:
            return K
        a, n = x
        return (self.real.sigma[a], -n)

    def degree(self, x: AffineGen) -> int:
        """Grading with deg(x t^n) = -n."""
        return 0 if x == K else -x[1]


def build_truncated_affine(rs: RootSystem, depth_cap: int) -> AffineTable:
    if depth_cap < 0:
        raise ValueError("depth_cap must be nonnegative")
    return AffineTable(realize(rs), depth_cap)


def bracket_combination(table: AffineTable, x: dict, y: dict) -> dict:
    """Bilinear extension of the bracket to linear combinations of generators."""
    out: dict = {}
    for gx, cx in x.items():
        for gy, cy in y.items():
            for g, v in table.bracket(gx, gy).items():
                out[g] = out.get(g, 0) + cx * cy * v
    return {g: v for g, v in out.items() if v != 0}
