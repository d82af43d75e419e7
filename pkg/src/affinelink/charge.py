"""Casimir values, conformal weights and affine highest weights.

Two normalisations of the L_0 eigenvalue are in circulation:

* ``"aw"``: ``(lam, lam + 2 rho) / (2 kappa)`` on the highest-weight vector of
  highest weight ``lam``; this is ``-delta_coeff`` of the affine weight.
* ``"ph"``: ``phi(x) = (|x|^2 - |rho|^2) / kappa``, i.e. the Casimir over kappa
  without the factor 1/2.

The Sugawara operator computed in :mod:`affinelink.shapovalov` agrees with
``"aw"``, so that is :data:`L0_CONVENTION`.  ``phi`` stays available under its
own name, and :func:`l0_eigenvalue_prediction` accepts either convention.
Note that ``phi(lam + rho) == 2 * conformal_weight(lam)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .level import KappaLaurent, Level, Scalar, kappa_value
from .rootsys import RootSystem, Weight

L0_CONVENTION = "aw"
L0_CONVENTIONS = ("aw", "ph")


def casimir_eigenvalue(rs: RootSystem, lam: Weight) -> Fraction:
    """|lam|^2 - |rho|^2."""
    rs._check(lam)
    return rs.norm2(lam) - rs.norm2(rs.rho)


def _over_kappa(level: Level, x: Fraction) -> Scalar:
    k = kappa_value(level)
    if isinstance(k, KappaLaurent):
        return KappaLaurent({-1: x})
    return x / k


def phi(rs: RootSystem, level: Level, lam: Weight) -> Scalar:
    """(|lam|^2 - |rho|^2) / kappa."""
    return _over_kappa(level, casimir_eigenvalue(rs, lam))


def conformal_weight(rs: RootSystem, level: Level, lam: Weight) -> Scalar:
    """(lam, lam + 2 rho) / (2 kappa): L_0 on a highest-weight vector of weight lam."""
    rs._check(lam)
    return _over_kappa(level, rs.inner(lam, lam + rs.rho * 2) / 2)


@dataclass(frozen=True)
class AffineWeight:
    finite_part: Weight
    level_coeff: Scalar  # coefficient of Lambda_0
    delta_coeff: Scalar  # coefficient of delta

    def to_json(self) -> dict:
        return {"finite": self.finite_part.to_json(),
                "level": _expr(self.level_coeff),
                "delta": _expr(self.delta_coeff)}


def _expr(x: Scalar) -> str:
    return str(x)


def affine_highest_weight(rs: RootSystem, level: Level, lam: Weight) -> AffineWeight:
    """lam + (kappa - h^vee) Lambda_0 - ((lam, lam + 2 rho) / (2 kappa)) delta."""
    k = kappa_value(level)
    central = k - rs.dual_coxeter
    return AffineWeight(lam, central, -conformal_weight(rs, level, lam))


def l0_eigenvalue_prediction(rs: RootSystem, level: Level, chi_lam: Weight, depth: int,
                             convention: str = L0_CONVENTION) -> Scalar:
    """L_0 on the depth-``depth`` piece of a module with infinitesimal character chi_lam.

    ``chi_lam`` is the rho-shifted parameter (lam + rho for highest weight lam).
    Under ``"aw"`` the value is ``(|chi|^2 - |rho|^2) / (2 kappa) + depth``;
    under ``"ph"`` it is ``phi(chi) + depth``.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if convention == "aw":
        base = _over_kappa(level, casimir_eigenvalue(rs, chi_lam) / 2)
    elif convention == "ph":
        base = phi(rs, level, chi_lam)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return base + depth
