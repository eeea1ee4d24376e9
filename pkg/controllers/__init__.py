"""
Controllers module for the Plate Decay Lab

- decay_lab: regime classification, residual series, slope fits and checks
"""

from .decay_lab import (
    TheoremCase, Regime, threshold_regularity, matching_cases, classify_regime, case_study_map,
    LinearFit, fit_power_law, fit_exponential_rate,
    ResidualSeries, default_time_grid, residual_series, solution_norm_series,
    lemma41_series, lemma42_series,
    MID_RATE_CHECK_NAME, MidRate, default_mid_times, mid_region_rate, mid_rate_meets_floor,
    SlopeCheck, RegimeEvaluation, solution_tolerance, evaluate_regime
)

__all__ = [
    'TheoremCase',
    'Regime',
    'threshold_regularity',
    'matching_cases',
    'classify_regime',
    'case_study_map',
    'LinearFit',
    'fit_power_law',
    'fit_exponential_rate',
    'ResidualSeries',
    'default_time_grid',
    'residual_series',
    'solution_norm_series',
    'lemma41_series',
    'lemma42_series',
    'MID_RATE_CHECK_NAME',
    'MidRate',
    'default_mid_times',
    'mid_region_rate',
    'mid_rate_meets_floor',
    'SlopeCheck',
    'RegimeEvaluation',
    'solution_tolerance',
    'evaluate_regime',
]
