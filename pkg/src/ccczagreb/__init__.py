"""Commuting conjugacy class graphs of finite groups and their Zagreb indices."""

from .ccc import CliqueDecomposition, SimpleGraph, ccc_graph, ccc_graph_all_pairs, detect_clique_union
from .families import AuxSpec, FamilySpec, build_aux, build_family, parse_aux, parse_family
from .group import FiniteGroup, center, commuting_probability, conjugacy_data, distinct_centralizer_count
from .predictions import (
    PredictedStructure,
    QuotientCase,
    VerificationRecord,
    closed_form_indices,
    predicted_decomposition,
    predictions_for,
    quotient_prediction,
    verify_group,
)
from .presentation import Presentation, coset_enumerate, parse_presentation
from .zagreb import Verdict, ZagrebReport, conjecture_verdict, zagreb_report

__version__ = "0.1.0"

__all__ = [
    "AuxSpec",
    "CliqueDecomposition",
    "FamilySpec",
    "FiniteGroup",
    "PredictedStructure",
    "Presentation",
    "QuotientCase",
    "SimpleGraph",
    "Verdict",
    "VerificationRecord",
    "ZagrebReport",
    "build_aux",
    "build_family",
    "ccc_graph",
    "ccc_graph_all_pairs",
    "center",
    "closed_form_indices",
    "commuting_probability",
    "conjecture_verdict",
    "conjugacy_data",
    "coset_enumerate",
    "detect_clique_union",
    "distinct_centralizer_count",
    "parse_aux",
    "parse_family",
    "parse_presentation",
    "predicted_decomposition",
    "predictions_for",
    "quotient_prediction",
    "verify_group",
    "zagreb_report",
]
