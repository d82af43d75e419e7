"""Linkage, blocks and Kac-Kazhdan chains for affine Lie algebras at level kappa."""
from .level import CriticalLevelError, KappaLaurent, Level
from .rootsys import RootSystem, RootSystemError, Weight, WeylGroupTooLarge, build_root_system, root_system

__version__ = "0.1.0"

__all__ = [
    "CriticalLevelError", "KappaLaurent", "Level", "RootSystem", "RootSystemError", "Weight",
    "WeylGroupTooLarge", "build_root_system", "root_system",
]
