"""Compare chain predictions with singular vectors computed from scratch."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from ..charge import L0_CONVENTION, conformal_weight, phi
from ..level import Level, Scalar
from ..linkage import BlockQuery, StarChain, subquotient_candidates
from ..rootsys import RootSystem, Weight
from .verma import AffineVerma, PBWMonomial, to_scalar

Key = tuple[int, Weight]  # (loop depth, finite weight)


def _key_json(key: Key) -> dict:
    return {"depth": key[0], "weight": key[1].to_json()}


def _sort(keys) -> list[Key]:
    return sorted(keys, key=lambda k: (k[0], k[1].coords))


@dataclass(frozen=True)
class SingularRecord:
    depth: int
    weight: Weight
    kernel_dim: int
    verified: bool  # every kernel vector killed by all raising generators up to the depth


@dataclass(frozen=True)
class KKReport:
    lam_hw: Weight
    level: Level
    singular: tuple[SingularRecord, ...]
    predicted: tuple[tuple[int, Weight, StarChain], ...]
    missing: tuple[Key, ...]
    extra: tuple[Key, ...]
    horizon: dict
    l0_convention: str = L0_CONVENTION

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra and all(s.verified for s in self.singular)

    def to_json(self) -> dict:
        return {
            "singular": [{"depth": s.depth, "weight": s.weight.to_json(),
                          "kernel_dim": s.kernel_dim, "verified": s.verified}
                         for s in self.singular],
            "predicted": [{"depth": d, "weight": w.to_json(), "chain": c.to_json()}
                          for d, w, c in self.predicted],
            "missing": [_key_json(k) for k in self.missing],
            "extra": [_key_json(k) for k in self.extra],
            "horizon": self.horizon,
            "l0_convention": self.l0_convention,
        }


def default_query(rs: RootSystem, level: Level, depth_cap: int) -> BlockQuery:
    """Bounds under which every chain of loop depth <= depth_cap is found.

    Each step with m > 0 adds at least 1 to the depth, and runs of m = 0 steps
    strictly descend inside a finite Weyl orbit.
    """
    return BlockQuery(rs, level, max_chain_len=(depth_cap + 1) * rs.weyl_order,
                      max_m=depth_cap, max_depth=depth_cap)


def casimir_allows(rs: RootSystem, level: Level, lam_hw: Weight, depth: int, nu: Weight) -> bool:
    """Necessary condition for a singular vector of weight ``nu`` at ``depth``.

    L_0 acts on the depth-d piece by h(lam) + d and on a singular vector of
    weight nu by h(nu), with h(x) = (x, x + 2 rho) / (2 kappa).  So
    (nu, nu + 2 rho) - (lam, lam + 2 rho) must equal 2 kappa d.
    """
    two_rho = rs.rho * 2
    diff = rs.inner(nu, nu + two_rho) - rs.inner(lam_hw, lam_hw + two_rho)
    if level.is_generic:
        return depth == 0 and diff == 0
    return diff == 2 * level.value * depth


def _scan(rs, level, lam_hw, verma: AffineVerma, depth_cap: int, height_cap: int,
          casimir_filter: bool):
    for (d, gamma), basis in sorted(verma.pieces(depth_cap, height_cap).items()):
        if d == 0 and not any(gamma):
            continue
        nu = lam_hw - rs.from_simple_coords(gamma)
        if casimir_filter and not casimir_allows(rs, level, lam_hw, d, nu):
            continue
        ker = verma.kernel(basis)
        if ker:
            yield d, nu, ker


def verify_kk(rs: RootSystem, level: Level, lam_hw: Weight, depth_cap: int,
              query: Optional[BlockQuery] = None, height_cap: Optional[int] = None,
              verma: Optional[AffineVerma] = None, casimir_filter: bool = True) -> KKReport:
    """Singular-vector weights of the Verma module against chain predictions.

    The comparison horizon is loop depth <= depth_cap and height of
    ``lam_hw - weight`` <= height_cap (default: two more than the largest
    predicted height).  Both sides are complete inside it.

    With ``casimir_filter`` only pieces passing :func:`casimir_allows` are
    searched; that skips no singular vector.  Pass ``False`` to take the
    kernel of every graded piece.
    """
    if query is None:
        query = default_query(rs, level, depth_cap)
    else:
        cap = depth_cap if query.max_depth is None else min(query.max_depth, depth_cap)
        query = replace(query, max_depth=cap)
    cands = subquotient_candidates(rs, level, lam_hw, query)
    predicted = {(c.depth, c.weight): c.chain for c in cands}
    heights = [rs.height(lam_hw - w) for _, w in predicted]
    if height_cap is None:
        height_cap = int(max(heights, default=0)) + 2
    predicted = {k: v for k, v in predicted.items() if rs.height(lam_hw - k[1]) <= height_cap}

    if verma is None:
        verma = AffineVerma(rs, level, lam_hw, depth_cap)
    singular = []
    for d, nu, ker in _scan(rs, level, lam_hw, verma, depth_cap, height_cap, casimir_filter):
        ok = all(verma.is_singular(v, d) for v in ker)
        singular.append(SingularRecord(d, nu, len(ker), ok))
    singular.sort(key=lambda s: (s.depth, s.weight.coords))
    found = {(s.depth, s.weight) for s in singular}
    missing = tuple(_sort(set(predicted) - found))
    extra = tuple(_sort(found - set(predicted)))
    pred = tuple((k[0], k[1], predicted[k]) for k in _sort(predicted))
    horizon = {"depth": depth_cap, "height": height_cap}
    return KKReport(lam_hw, level, tuple(singular), pred, missing, extra, horizon)


# -- per-piece Shapovalov data ----------------------------------------------------------

@dataclass(frozen=True)
class PieceReport:
    depth: int
    weight: Weight
    basis: tuple[PBWMonomial, ...]
    matrix: tuple[tuple[Scalar, ...], ...]
    determinant: Scalar
    kernel_dim: int
    kernel_basis: tuple[tuple[Scalar, ...], ...]
    l0: Scalar

    @property
    def symmetric(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class ShapovalovReport:
    lam_hw: Weight
    level: Level
    pieces: tuple[PieceReport, ...]
    singular_weights: tuple[Key, ...]

    def piece(self, depth: int, weight: Weight) -> PieceReport:
        for p in self.pieces:
            if p.depth == depth and p.weight == weight:
                return p
        raise KeyError((depth, weight))


def shapovalov_matrix(rs: RootSystem, level: Level, lam_hw: Weight, d: int, nu: Weight,
                      verma: Optional[AffineVerma] = None) -> list[list[Scalar]]:
    if verma is None:
        verma = AffineVerma(rs, level, lam_hw, d)
    basis = verma.weight_space(d, nu)
    if not basis:
        raise ValueError(f"empty weight space at depth {d}, weight {nu}")
    mat = verma.shapovalov(basis)
    return [[to_scalar(x, level) for x in row] for row in mat.to_list()]


def verma_weight_space(rs: RootSystem, level: Level, lam_hw: Weight, d: int, nu: Weight,
                       depth_cap: Optional[int] = None) -> list[PBWMonomial]:
    verma = AffineVerma(rs, level, lam_hw, d if depth_cap is None else depth_cap)
    return [verma.describe(m) for m in verma.weight_space(d, nu)]


def singular_vectors(rs: RootSystem, level: Level, lam_hw: Weight, depth_cap: int,
                     height_cap: int, verma: Optional[AffineVerma] = None,
                     casimir_filter: bool = False) -> list[tuple[int, Weight, list[dict]]]:
    """(depth, weight, kernel basis) for every piece below the top with singular vectors."""
    if verma is None:
        verma = AffineVerma(rs, level, lam_hw, depth_cap)
    return list(_scan(rs, level, lam_hw, verma, depth_cap, height_cap, casimir_filter))


def shapovalov_report(rs: RootSystem, level: Level, lam_hw: Weight, depth_cap: int,
                      height_cap: int) -> ShapovalovReport:
    verma = AffineVerma(rs, level, lam_hw, depth_cap)
    pieces = []
    sing = []
    for (d, gamma), basis in sorted(verma.pieces(depth_cap, height_cap).items()):
        nu = lam_hw - rs.from_simple_coords(gamma)
        gram = verma.shapovalov(basis)
        det = gram.det()
        ns = gram.nullspace().to_list() if det == verma.zero else []
        l0 = verma.sugawara_l0({basis[0]: verma.one}, d)
        pieces.append(PieceReport(
            d, nu, tuple(verma.describe(b) for b in basis),
            tuple(tuple(to_scalar(x, level) for x in row) for row in gram.to_list()),
            to_scalar(det, level), len(ns),
            tuple(tuple(to_scalar(x, level) for x in row) for row in ns), l0))
        if (d or any(gamma)) and verma.kernel(basis):
            sing.append((d, nu))
    return ShapovalovReport(lam_hw, level, tuple(pieces), tuple(_sort(sing)))


# -- normalisation of L_0 ------------------------------------------------------------------

@dataclass(frozen=True)
class L0Cell:
    level: Level
    lam_hw: Weight
    sugawara: Scalar
    aw: Scalar
    ph: Scalar

    @property
    def matches(self) -> tuple[str, ...]:
        return tuple(name for name, v in (("aw", self.aw), ("ph", self.ph)) if v == self.sugawara)


@dataclass(frozen=True)
class L0Arbitration:
    cells: tuple[L0Cell, ...]

    @property
    def convention(self) -> Optional[str]:
        """The single formula matched in every cell, if there is one."""
        first = self.cells[0].matches if self.cells else ()
        if len(first) != 1:
            return None
        if all(c.matches == first for c in self.cells):
            return first[0]
        return None


def highest_weight_l0(rs: RootSystem, level: Level, lam_hw: Weight) -> Scalar:
    verma = AffineVerma(rs, level, lam_hw, 0)
    return verma.sugawara_l0({(): verma.one}, 0)


def arbitrate_l0(rs: RootSystem, levels, weights) -> L0Arbitration:
    """Evaluate Sugawara L_0 on highest-weight vectors against both closed forms.

    ``ph`` is evaluated at the highest weight itself, as the formula is stated.
    """
    cells = []
    for level in levels:
        for lam in weights:
            cells.append(L0Cell(level, lam, highest_weight_l0(rs, level, lam),
                                conformal_weight(rs, level, lam), phi(rs, level, lam)))
    return L0Arbitration(tuple(cells))
