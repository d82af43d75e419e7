"""Exact oracle: truncated affine Verma modules, Shapovalov forms, Sugawara L_0."""
from .chevalley import AffineTable, Realization, UnsupportedRank, build_truncated_affine, realize
from .oracle import (KKReport, L0Arbitration, ShapovalovReport, arbitrate_l0, highest_weight_l0,
                     shapovalov_matrix, shapovalov_report, singular_vectors, verify_kk,
                     verma_weight_space)
from .verma import AffineVerma, PBWMonomial

__all__ = [
    "AffineTable", "AffineVerma", "KKReport", "L0Arbitration", "PBWMonomial", "Realization",
    "ShapovalovReport", "UnsupportedRank", "arbitrate_l0", "build_truncated_affine",
    "highest_weight_l0", "realize", "shapovalov_matrix", "shapovalov_report",
    "singular_vectors", "verify_kk", "verma_weight_space",
]
