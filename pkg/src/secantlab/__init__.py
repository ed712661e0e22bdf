"""Exact projections, secant loci, Hilbert data and Betti tables of projective varieties."""

from __future__ import annotations

from .betti import BettiTable, ResolutionPredicates, graded_betti, table_predicates
from .groebner import BudgetExceeded, Ideal, eliminate, groebner_basis, saturate
from .hilbert import HilbertData, hilbert_series, numerical_invariants
from .polyring import GF, QQ, Poly, PolynomialRing, elim, grevlex, lex
from .projsec import (
    classify_quadric,
    project,
    secant_locus_conductor,
    secant_locus_incidence,
    verify_projection_theorem,
)
from .stratify import stratification_survey, stratum_of
from .varieties import Variety, parse_variety

__version__ = "0.1.0"

__all__ = [
    "BettiTable", "ResolutionPredicates", "graded_betti", "table_predicates",
    "BudgetExceeded", "Ideal", "eliminate", "groebner_basis", "saturate",
    "HilbertData", "hilbert_series", "numerical_invariants",
    "GF", "QQ", "Poly", "PolynomialRing", "elim", "grevlex", "lex",
    "classify_quadric", "project", "secant_locus_conductor", "secant_locus_incidence",
    "verify_projection_theorem", "stratification_survey", "stratum_of",
    "Variety", "parse_variety",
]
