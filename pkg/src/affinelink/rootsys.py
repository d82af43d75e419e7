"""Finite irreducible root systems with exact rational data.

Weights are stored in the fundamental-weight basis, so a weight is integral
exactly when its coordinates are integers.  The invariant form is normalized
so that long roots have squared length 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

DEFAULT_RANK_CAP = 6
DEFAULT_WEYL_CAP = 100_000


class RootSystemError(ValueError):
    """Invalid Dynkin type or a construction bound was exceeded."""


class WeylGroupTooLarge(RootSystemError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True, order=True)
class Weight:
    """A point of h* in fundamental-weight coordinates."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(_frac(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls([0] * rank)

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse ``"a/b,c/d,..."``; plain integers are accepted."""
        parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
        if not parts:
            raise ValueError(f"empty weight: {text!r}")
        try:
            return cls(parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed weight {text!r}: {exc}") from None

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Weight":
        return cls(data)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        _check_len(self, other)
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Weight") -> "Weight":
        _check_len(self, other)
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Weight":
        return Weight(-a for a in self.coords)

    def __mul__(self, scalar) -> "Weight":
        s = _frac(scalar)
        return Weight(s * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)


def _check_len(x: Weight, y: Weight) -> None:
    if len(x.coords) != len(y.coords):
        raise ValueError(f"dimension mismatch: {len(x.coords)} vs {len(y.coords)}")


# Dynkin data: squared lengths of simple roots and the edges of the diagram
# (Bourbaki numbering).  Adjacent simple roots have inner product
# -max(|a|^2, |b|^2)/2 for every bond type.

def _dynkin(series: str, rank: int) -> tuple[list[Fraction], list[tuple[int, int]]]:
    chain = [(i, i + 1) for i in range(rank - 1)]
    two, one = Fraction(2), Fraction(1)
    if series == "A" and rank >= 1:
        return [two] * rank, chain
    if series == "B" and rank >= 2:
        return [two] * (rank - 1) + [one], chain
    if series == "C" and rank >= 2:
        return [one] * (rank - 1) + [two], chain
    if series == "D" and rank >= 4:
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
        return [two] * rank, edges
    if series == "E" and rank in (6, 7, 8):
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, rank - 1)]
        return [two] * rank, edges
    if series == "F" and rank == 4:
        return [two, two, one, one], chain
    if series == "G" and rank == 2:
        return [Fraction(2, 3), two], chain
    raise RootSystemError(f"not an irreducible Dynkin type: {series}{rank}")


def _mat_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


Matrix = tuple[tuple[int, ...], ...]


def _apply(mat: Matrix, x: Sequence) -> tuple:
    return tuple(sum(r[j] * x[j] for j in range(len(x))) for r in mat)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


@dataclass(frozen=True, eq=False)
class RootSystem:
    series: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    simple_roots: tuple[Weight, ...]
    roots: tuple[Weight, ...] = field(repr=False)
    positive_roots: tuple[Weight, ...] = field(repr=False)
    form_gram: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    rho: Weight = field(repr=False)
    dual_coxeter: int = 0
    weyl_elements: tuple[Matrix, ...] = field(repr=False, default=())
    # Gram matrix of the form in the fundamental-weight basis.
    omega_gram: tuple[tuple[Fraction, ...], ...] = field(repr=False, default=())
    cartan_inverse: tuple[tuple[Fraction, ...], ...] = field(repr=False, default=())

    @property
    def code(self) -> str:
        return f"{self.series}{self.rank}"

    def __str__(self) -> str:
        return self.code

    # -- basic linear algebra -------------------------------------------------

    def _check(self, *ws: Weight) -> None:
        for w in ws:
            if len(w.coords) != self.rank:
                raise ValueError(
                    f"dimension mismatch: weight has {len(w.coords)} coords, rank is {self.rank}")

    def inner(self, x: Weight, y: Weight) -> Fraction:
        self._check(x, y)
        g = self.omega_gram
        return sum((x.coords[i] * g[i][j] * y.coords[j]
                    for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def norm2(self, x: Weight) -> Fraction:
        return self.inner(x, x)

    def simple_coords(self, x: Weight) -> tuple[Fraction, ...]:
        """Coordinates of ``x`` in the simple-root basis."""
        self._check(x)
        return _apply(self.cartan_inverse, x.coords)

    def from_simple_coords(self, c: Sequence) -> Weight:
        a = self.cartan_matrix
        return Weight(sum(a[i][j] * _frac(c[j]) for j in range(self.rank))
                      for i in range(self.rank))

    def height(self, x: Weight) -> Fraction:
        return sum(self.simple_coords(x), Fraction(0))

    @cached_property
    def _root_index(self) -> dict[Weight, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def _positive_set(self) -> frozenset[Weight]:
        return frozenset(self.positive_roots)

    def root_index(self, beta: Weight) -> int:
        try:
            return self._root_index[beta]
        except KeyError:
            raise ValueError(f"{beta} is not a root of {self.code}") from None

    def is_root(self, beta: Weight) -> bool:
        return beta in self._root_index

    def is_positive_root(self, beta: Weight) -> bool:
        return beta in self._positive_set

    @cached_property
    def highest_root(self) -> Weight:
        return max(self.positive_roots, key=self.height)

    def coroot(self, beta: Weight) -> Weight:
        self.root_index(beta)
        return beta * (Fraction(2) / self.norm2(beta))

    def pairing(self, lam: Weight, beta: Weight) -> Fraction:
        """(lam, beta^vee) for a root beta."""
        return 2 * self.inner(lam, beta) / self.norm2(beta)

    def reflect(self, lam: Weight, beta: Weight) -> Weight:
        self.root_index(beta)
        return lam - beta * self.pairing(lam, beta)

    # -- lattices -------------------------------------------------------------

    def in_root_lattice(self, x: Weight) -> bool:
        return all(c.denominator == 1 for c in self.simple_coords(x))

    def in_coroot_lattice(self, x: Weight, scale=1) -> bool:
        """Membership in ``scale * Q^vee`` (Q^vee spanned by 2a/(a,a), a simple)."""
        s = _frac(scale)
        if s == 0:
            return x.is_zero()
        norms = self.simple_norms
        return all((c * norms[i] / 2 / s).denominator == 1
                   for i, c in enumerate(self.simple_coords(x)))

    def is_integral(self, x: Weight) -> bool:
        self._check(x)
        return x.is_integral()

    @cached_property
    def simple_norms(self) -> tuple[Fraction, ...]:
        return tuple(self.form_gram[i][i] for i in range(self.rank))

    # -- Weyl group -----------------------------------------------------------

    def act(self, w: Matrix, lam: Weight) -> Weight:
        self._check(lam)
        return Weight(_apply(w, lam.coords))

    def weyl_orbit(self, lam: Weight) -> frozenset[Weight]:
        self._check(lam)
        return frozenset(Weight(_apply(w, lam.coords)) for w in self.weyl_elements)

    @property
    def weyl_order(self) -> int:
        return len(self.weyl_elements)


def _simple_reflection(cartan: Sequence[Sequence[int]], i: int) -> Matrix:
    # s_i(x) = x - x_i * alpha_i, alpha_i = column i of the Cartan matrix
    n = len(cartan)
    return tuple(tuple(int(r == c) - (cartan[r][i] if c == i else 0) for c in range(n))
                 for r in range(n))


def parse_code(code: str) -> tuple[str, int]:
    code = code.strip().upper()
    if len(code) < 2 or not code[0].isalpha() or not code[1:].isdigit():
        raise RootSystemError(f"bad root system code: {code!r}")
    return code[0], int(code[1:])


def root_system(code: str, **kwargs) -> RootSystem:
    """Build a root system from a code such as ``"A2"`` or ``"G2"``."""
    return build_root_system(*parse_code(code), **kwargs)


_CACHE: dict[tuple, RootSystem] = {}


def build_root_system(series: str, rank: int, *, rank_cap: int = DEFAULT_RANK_CAP,
                      weyl_cap: int = DEFAULT_WEYL_CAP) -> RootSystem:
    series = series.upper()
    if not isinstance(rank, int) or rank < 1:
        raise RootSystemError(f"rank must be a positive integer, got {rank!r}")
    if rank > rank_cap:
        raise RootSystemError(f"rank {rank} exceeds the configured cap {rank_cap}")
    key = (series, rank, weyl_cap)
    if key in _CACHE:
        return _CACHE[key]

    norms, edges = _dynkin(series, rank)
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = norms[i]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -max(norms[i], norms[j]) / 2
    cartan = [[int(2 * gram[i][j] / gram[i][i]) for j in range(rank)] for i in range(rank)]
    cinv = _mat_inverse([[Fraction(x) for x in row] for row in cartan])
    # (x, y) = c_x^T G c_y with c = A^{-1} x
    omega_gram = [[sum(cinv[k][i] * gram[k][l] * cinv[l][j]
                       for k in range(rank) for l in range(rank))
                   for j in range(rank)] for i in range(rank)]

    refl = [_simple_reflection(cartan, i) for i in range(rank)]
    simple = [tuple(cartan[r][i] for r in range(rank)) for i in range(rank)]

    roots: set[tuple] = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for s in refl:
                img = _apply(s, r)
                if img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt

    def scoords(r):
        return _apply(cinv, r)

    positive = [r for r in roots if all(c >= 0 for c in scoords(r))]
    positive.sort(key=lambda r: (sum(scoords(r)), tuple(scoords(r))))
    negative = [tuple(-c for c in r) for r in positive]

    ident: Matrix = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    elements = {ident}
    frontier_w = [ident]
    while frontier_w:
        nxt = []
        for w in frontier_w:
            for s in refl:
                g = _matmul(s, w)
                if g not in elements:
                    elements.add(g)
                    nxt.append(g)
                    if len(elements) > weyl_cap:
                        raise WeylGroupTooLarge(
                            f"Weyl group of {series}{rank} exceeds the cap {weyl_cap}")
        frontier_w = nxt

    rho = Weight([1] * rank)
    rs = RootSystem(
        series=series,
        rank=rank,
        cartan_matrix=tuple(tuple(r) for r in cartan),
        simple_roots=tuple(Weight(s) for s in simple),
        roots=tuple(Weight(r) for r in positive + negative),
        positive_roots=tuple(Weight(r) for r in positive),
        form_gram=tuple(tuple(r) for r in gram),
        rho=rho,
        weyl_elements=tuple(sorted(elements)),
        omega_gram=tuple(tuple(r) for r in omega_gram),
        cartan_inverse=tuple(tuple(r) for r in cinv),
    )
    theta = rs.highest_root
    hv = 1 + rs.inner(rho, rs.coroot(theta))
    assert hv.denominator == 1
    object.__setattr__(rs, "dual_coxeter", int(hv))
    _CACHE[key] = rs
    return rs
