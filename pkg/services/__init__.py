"""
Services module for the Plate Decay Lab

This module provides:
- quadrature: region-restricted radial L2 norms with certified tails
- initial_data: analytic Fourier-side data, moments and Sobolev norms
- profiles: wave-like, heat-like and combined asymptotic profiles
- oracles: ODE agreement and pointwise inequality checks
"""

from .quadrature import (
    Zone, Region, TailTerm, TailBound, QuadratureResult, tail_cutoff, l2_region_norm
)
from .initial_data import (
    DataSpec, DataPair, gaussian_datum, sobolev_edge_datum, zero_datum,
    edge_sigma_for, ab_decomposition, h_norm, initial_norm,
    parse_data_label, datum_from_label, pair_from_label, pair_from_labels
)
from .profiles import (
    ProfileKind, wave_profile, heat_profile, combined_profile, zero_profile,
    profile_function, solution_tail, wave_tail, heat_tail, residual_tail
)
from .oracles import (
    OdeTrace, integrate_mode, closed_form_agreement,
    OdeAgreementReport, Lemma44Report, Lemma45Report, SincReport, LowFrequencyReport,
    lemma44_constant, lemma44_sup, lemma44_check, lemma46_47_check,
    lemma45_constants, lowfreq_structure_check, run_oracle_suite, ORACLE_CHOICES
)

__all__ = [
    'Zone',
    'Region',
    'TailTerm',
    'TailBound',
    'QuadratureResult',
    'tail_cutoff',
    'l2_region_norm',
    'DataSpec',
    'DataPair',
    'gaussian_datum',
    'sobolev_edge_datum',
    'zero_datum',
    'edge_sigma_for',
    'ab_decomposition',
    'h_norm',
    'initial_norm',
    'parse_data_label',
    'datum_from_label',
    'pair_from_label',
    'pair_from_labels',
    'ProfileKind',
    'wave_profile',
    'heat_profile',
    'combined_profile',
    'zero_profile',
    'profile_function',
    'solution_tail',
    'wave_tail',
    'heat_tail',
    'residual_tail',
    'OdeTrace',
    'integrate_mode',
    'closed_form_agreement',
    'OdeAgreementReport',
    'Lemma44Report',
    'Lemma45Report',
    'SincReport',
    'LowFrequencyReport',
    'lemma44_constant',
    'lemma44_sup',
    'lemma44_check',
    'lemma46_47_check',
    'lemma45_constants',
    'lowfreq_structure_check',
    'run_oracle_suite',
    'ORACLE_CHOICES',
]
