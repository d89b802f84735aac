"""Exact quantum K-theory Chevalley formula for minuscule weights via quantum Bruhat graph paths."""

from .chevalley import (
    cancellation_report,
    classical_terms,
    closed_formula,
    gamma_Q,
    oracle_expansion,
    setup,
)
from .rootsystem import LieType, RootSystem
from .weyl import ParabolicSubset, WeylElem, WeylGroup

__all__ = [
    "LieType",
    "RootSystem",
    "WeylGroup",
    "WeylElem",
    "ParabolicSubset",
    "setup",
    "gamma_Q",
    "classical_terms",
    "closed_formula",
    "oracle_expansion",
    "cancellation_report",
]
