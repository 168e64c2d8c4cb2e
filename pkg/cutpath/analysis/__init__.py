"""Closed forms, bounds, exact oracles and trace analyzers."""

from .analyzers import (
    Analyzer,
    MinimaAnalyzer,
    minima_analysis,
    recovery_frequencies,
    reducible_chain_cut_times,
)
from .bounds import (
    ConductanceBound,
    chernoff_bound,
    conductance_bound,
    refined_conductance_bound,
    resistance_lower_bound,
    srw_bounds,
    visits_bound,
)
from .line import escape_prob, escape_prob_between, return_prob, unlinked_prob
from .oracle import (
    SrwOracle,
    absorption_probability,
    bound_sweep,
    conditioned_visit_expectation,
    exact_srw_oracle,
    fit_visits_constant,
)
from .resistance import resistance_profile

__all__ = [
    'Analyzer',
    'ConductanceBound',
    'MinimaAnalyzer',
    'SrwOracle',
    'absorption_probability',
    'bound_sweep',
    'chernoff_bound',
    'conditioned_visit_expectation',
    'conductance_bound',
    'escape_prob',
    'escape_prob_between',
    'exact_srw_oracle',
    'fit_visits_constant',
    'minima_analysis',
    'recovery_frequencies',
    'reducible_chain_cut_times',
    'refined_conductance_bound',
    'resistance_lower_bound',
    'resistance_profile',
    'return_prob',
    'srw_bounds',
    'unlinked_prob',
    'visits_bound',
]
