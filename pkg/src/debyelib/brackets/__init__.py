"""Miniature method-of-brackets engine."""

from .debye import build_debye_bracket_series, candidate_by_name, debye_candidates
from .engine import (
    BracketSeries,
    SeriesCandidate,
    TermDescriptor,
    candidate_factors,
    candidate_to_series_terms,
    enumerate_candidates,
    evaluate_candidate,
    term_descriptor,
)
from .forms import AffineForm, Factor, FactorKind, gamma_den, gamma_num, power, sign
from .linalg import bareiss_det, solve_exact

__all__ = [
    "AffineForm",
    "BracketSeries",
    "Factor",
    "FactorKind",
    "SeriesCandidate",
    "TermDescriptor",
    "bareiss_det",
    "build_debye_bracket_series",
    "candidate_by_name",
    "candidate_factors",
    "candidate_to_series_terms",
    "debye_candidates",
    "enumerate_candidates",
    "evaluate_candidate",
    "gamma_den",
    "gamma_num",
    "power",
    "sign",
    "solve_exact",
    "term_descriptor",
]
