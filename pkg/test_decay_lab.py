#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the decay lab controller: regime tables, slope fits, residual
series and the slope checks of the acceptance scenarios.

The long scenarios are marked slow (run with: pytest -m slow).
"""

import sys
import os
import math

# Add current directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest

from controllers.decay_lab import (
    MID_RATE_CHECK_NAME,
    ProfileKind,
    SlopeCheck,
    TheoremCase,
    case_study_map,
    classify_regime,
    default_time_grid,
    evaluate_regime,
    fit_exponential_rate,
    fit_power_law,
    lemma41_series,
    lemma42_series,
    matching_cases,
    mid_rate_meets_floor,
    mid_region_rate,
    residual_series,
    solution_norm_series,
    solution_tolerance,
    threshold_regularity,
)
from core.constants import SCENARIO_MAX_EVALS
from core.logger import DataError, FitError
from core.symbol_core import uhat_solution
from core.utils import geometric_time_grid
from services.initial_data import edge_sigma_for, pair_from_label, pair_from_labels
from services.quadrature import Region


# ==================== تصنيف الأنظمة ====================

CASE_STUDY_N10 = {
    2.0: (TheoremCase.T31_REGULARITY_LOSS, ProfileKind.WAVE_LIKE, -2.5, -1.5),
    3.0: (TheoremCase.T31_WAVE_BAND, ProfileKind.WAVE_LIKE, -2.5, -2.0),
    3.5: (TheoremCase.T31_WAVE_BAND, ProfileKind.WAVE_LIKE, -2.5, -2.25),
    4.0: (TheoremCase.T33_THRESHOLD, ProfileKind.COMBINED, -3.0, -2.5),
    4.5: (TheoremCase.T32_EDGE_BAND, ProfileKind.HEAT_LIKE, -2.75, -2.5),
    5.0: (TheoremCase.T32_EDGE_BAND, ProfileKind.HEAT_LIKE, -3.0, -2.5),
    7.0: (TheoremCase.T32_HEAT_BAND, ProfileKind.HEAT_LIKE, -3.0, -2.5),
}


@pytest.mark.parametrize('l', sorted(CASE_STUDY_N10))
def test_case_study_n10(l):
    """The n = 10 map: wave for 2 <= l < 4, combined at l = 4, heat above"""
    theorem, profile, residual, solution = CASE_STUDY_N10[l]
    regime = classify_regime(10, l)
    assert regime.valid
    assert regime.theorem is theorem
    assert regime.profile is profile
    assert regime.residual_exponent == pytest.approx(residual)
    assert regime.solution_exponent == pytest.approx(solution)


def test_low_dimension_regimes():
    print("Testing low-dimension regimes...")
    regime = classify_regime(3, 2.0)
    assert regime.profile is ProfileKind.HEAT_LIKE
    assert regime.residual_exponent == pytest.approx(-1.25)
    assert regime.solution_exponent == pytest.approx(-0.75)
    assert classify_regime(4, 2.0).theorem is TheoremCase.T32_EDGE_BAND
    assert classify_regime(4, 3.0).theorem is TheoremCase.T32_HEAT_BAND
    assert classify_regime(4, 3.0).solution_exponent == pytest.approx(-1.0)
    assert classify_regime(5, 2.5).theorem is TheoremCase.T32_EDGE_BAND
    assert classify_regime(6, 2.0).theorem is TheoremCase.T33_THRESHOLD
    assert classify_regime(7, 2.0).theorem is TheoremCase.T31_WAVE_BAND
    assert classify_regime(7, 2.0).solution_exponent == pytest.approx(-1.5)
    assert classify_regime(7, 2.5).profile is ProfileKind.COMBINED
    print("✅ Low-dimension regimes correct")


def test_classification_exhaustive_and_exclusive():
    """Exactly one case fires for n in [1, 20], l in [2, 12] (steps of 1/2)"""
    for n in range(1, 21):
        for l in np.arange(2.0, 12.25, 0.5):
            cases = matching_cases(n, float(l))
            assert len(cases) == 1, (n, l, cases)
            regime = classify_regime(n, float(l))
            assert regime.valid
            assert regime.residual_exponent < 0 and regime.solution_exponent < 0


def test_classification_rejects_low_regularity():
    with pytest.raises(DataError):
        classify_regime(10, 1.5)
    with pytest.raises(DataError):
        classify_regime(0, 2.0)


def test_threshold_and_map():
    assert threshold_regularity(10) == 4.0
    regimes = case_study_map(10)
    assert [r.l for r in regimes] == pytest.approx(list(np.arange(2.0, 7.25, 0.5)))
    assert regimes[0].to_dict()['profile'] == 'WaveLike'


# ==================== الملاءمة ====================

def test_fit_exact_power_law():
    times = geometric_time_grid(1e3)
    fit = fit_power_law(times, 3.0 * times ** -2.0)
    assert fit.slope == pytest.approx(-2.0, abs=1e-12)
    assert fit.points == 11
    assert fit.r_squared == pytest.approx(1.0)
    assert fit.flags == ()


def test_fit_flags():
    times = geometric_time_grid(1e3)
    wobble = 1.0 + 0.01 * (-1.0) ** np.arange(times.size)
    assert 'plateau' in fit_power_law(times, wobble).flags

    short = geometric_time_grid(40.0)
    assert 'short' in fit_power_law(short, short ** -1.0).flags

    zeros = fit_power_law(times, np.zeros(times.size))
    assert zeros.degenerate and math.isnan(zeros.slope)

    with pytest.raises(FitError):
        fit_power_law([1.0, 2.0], [1.0, 0.5])
    with pytest.raises(FitError):
        fit_power_law([1.0, 3.0, 2.0], [1.0, 0.5, 0.2])


def test_fit_exponential_rate():
    times = np.linspace(20.0, 200.0, 37)
    fit = fit_exponential_rate(times, 2.0 * np.exp(-0.1 * times))
    assert fit.slope == pytest.approx(-0.1, rel=1e-10)


def test_default_time_grids():
    wave = default_time_grid(classify_regime(10, 2.0))
    heat = default_time_grid(classify_regime(3, 2.0))
    assert wave[0] == 10.0 and wave[-1] <= 1e3 and wave.size == 21
    assert heat[-1] <= 1e4 and heat.size == 31
    assert np.all(np.diff(heat) > 0)


# ==================== فحوص الميل ====================

def test_slope_check_policy():
    assert SlopeCheck.compare('r', -2.5, -3.0, 0.15, two_sided=False).passed
    assert SlopeCheck.compare('r', -2.5, -2.4, 0.15, two_sided=False).passed
    assert not SlopeCheck.compare('r', -2.5, -2.2, 0.15, two_sided=False).passed
    assert not SlopeCheck.compare('s', -1.5, -1.7, 0.15, two_sided=True).passed
    assert SlopeCheck.compare('s', -1.5, -1.4, 0.15, two_sided=True).passed
    assert not SlopeCheck.compare('s', -1.5, math.nan, 0.15, two_sided=True).passed
    assert solution_tolerance(classify_regime(3, 2.0)) == 0.1
    assert solution_tolerance(classify_regime(10, 2.0)) == 0.15


# ==================== السلاسل ====================

def test_exact_solution_profile_gives_zero_norms():
    """Subtracting the solution itself leaves nothing; the slope is flagged"""
    pair = pair_from_label('gaussian:a=1', 3, 2.0)

    def exact(t, r, p):
        return uhat_solution(t, r, p.u0(r), p.u1(r))

    series = residual_series(pair, exact, Region.full(), [10.0, 20.0, 40.0])
    assert np.all(series.norms == 0.0)
    assert math.isnan(series.fitted_slope)
    assert 'degenerate' in series.flags


def test_zero_data_gives_zero_norms():
    pair = pair_from_labels('zero', 'zero', 3, 2.0)
    series = solution_norm_series(pair, Region.full(), [10.0, 20.0, 40.0])
    assert np.all(series.norms == 0.0)


def test_series_rejects_bad_times():
    pair = pair_from_label('gaussian:a=1', 3, 2.0)
    for times in ([0.5, 2.0, 3.0], [10.0, 5.0, 20.0], []):
        with pytest.raises(FitError):
            residual_series(pair, None, Region.mid(), times)


def test_series_rows_and_workers():
    """Rows carry the CSV columns; the worker count does not change values"""
    pair = pair_from_label('gaussian:a=1', 3, 2.0)
    times = [20.0, 40.0, 60.0, 80.0]
    one = residual_series(pair, None, Region.mid(), times, workers=1)
    many = residual_series(pair, None, Region.mid(), times, workers=3)
    assert np.array_equal(one.norms, many.norms)
    rows = one.to_rows()
    assert len(rows) == 4
    assert set(rows[0]) == {'t', 'norm', 'region', 'profile', 'predicted_exponent', 'fitted_slope'}
    assert rows[0]['region'] == 'Mid' and rows[0]['profile'] == 'None'


def test_refinement_moves_norms_within_estimate():
    pair = pair_from_label('gaussian:a=1', 3, 2.0)
    times = [20.0, 40.0, 80.0]
    coarse = residual_series(pair, ProfileKind.HEAT_LIKE, Region.full(), times, rtol=1e-3)
    fine = residual_series(pair, ProfileKind.HEAT_LIKE, Region.full(), times, rtol=1e-6)
    assert np.all(np.abs(coarse.norms - fine.norms) <= coarse.errors + 1e-15 * fine.norms)


def test_mid_region_rate_gaussian():
    """η > 0.05 with a clean exponential fit for Gaussian data, n = 3"""
    print("Testing mid-region rate...")
    pair = pair_from_label('gaussian:a=1', 3, 2.0)
    rate = mid_region_rate(pair)
    assert 0.25 < rate.eta < 0.31
    # η is the rate of the squared norm: twice the log-norm decay
    assert rate.eta == pytest.approx(-2.0 * rate.fit.slope)
    assert 'squared norm' in MID_RATE_CHECK_NAME
    assert rate.relative_stderr < 0.05
    assert mid_rate_meets_floor(rate)
    print(f"✅ eta = {rate.eta:.4f}")


def test_mid_region_rate_rejects_late_times():
    pair = pair_from_label('gaussian:a=1', 3, 2.0)
    with pytest.raises(FitError):
        mid_region_rate(pair, times=[100.0, 300.0])


def test_lemma42_low_region_n1():
    """Low-region residual against the heat profile, n = 1, t in [10, 1e3]"""
    pair = pair_from_label('gaussian:a=1', 1, 2.0)
    series = lemma42_series(pair, geometric_time_grid(1e3))
    assert series.predicted_exponent == pytest.approx(-0.75)
    assert series.fitted_slope <= -0.75 + 0.15


def test_evaluate_regime_validates_data():
    rough = pair_from_label('edge:sigma=4', 3, 3.0)
    with pytest.raises(DataError):
        evaluate_regime(rough)


# ==================== سيناريوهات القبول (بطيئة) ====================

@pytest.mark.slow
def test_regularity_loss_high_region_n10():
    """Sobolev-edge data n = 10, l = 2: High residual vs wave decays like t^{-5/2}"""
    pair = pair_from_label(f'edge:sigma={edge_sigma_for(2.0, 10):g}', 10, 2.0)
    series = lemma41_series(pair, geometric_time_grid(1e3), max_evals=SCENARIO_MAX_EVALS, workers=4)
    assert series.fitted_slope <= -2.5 + 0.15


@pytest.mark.slow
@pytest.mark.parametrize('n', [1, 3])
def test_lemma42_low_region_to_1e4(n):
    pair = pair_from_label('gaussian:a=1', n, 2.0)
    series = lemma42_series(pair, geometric_time_grid(1e4), max_evals=SCENARIO_MAX_EVALS, workers=4)
    assert series.fitted_slope <= -(n + 2.0) / 4.0 + 0.1


@pytest.mark.slow
def test_optimal_wave_rate_n7():
    """Edge data n = 7, l = 2: Full solution norm slope -(l+1)/2 = -1.5"""
    pair = pair_from_label(f'edge:sigma={edge_sigma_for(2.0, 7):g}', 7, 2.0)
    series = solution_norm_series(pair, Region.full(), geometric_time_grid(1e3),
                                  max_evals=SCENARIO_MAX_EVALS, workers=4)
    assert abs(series.fitted_slope + 1.5) <= 0.15


@pytest.mark.slow
@pytest.mark.parametrize('n, l', [(3, 2.0), (4, 3.0)])
def test_optimal_heat_rate(n, l):
    """Gaussian data: Full solution norm slope -n/4"""
    pair = pair_from_label('gaussian:a=1', n, l)
    series = solution_norm_series(pair, Region.full(), geometric_time_grid(1e4),
                                  max_evals=SCENARIO_MAX_EVALS, workers=4)
    assert abs(series.fitted_slope + n / 4.0) <= 0.1


@pytest.mark.slow
def test_evaluate_regime_gaussian_n3():
    pair = pair_from_label('gaussian:a=1', 3, 2.0)
    evaluation = evaluate_regime(pair, max_evals=SCENARIO_MAX_EVALS, workers=4)
    assert evaluation.passed, [check.to_dict() for check in evaluation.failed_checks]
    assert len(evaluation.checks) == 3


def main():
    """Run the fast decay-lab tests without pytest"""
    print("=" * 60)
    print("Decay lab tests")
    print("=" * 60)
    tests = [
        test_low_dimension_regimes,
        test_classification_exhaustive_and_exclusive,
        test_fit_exact_power_law,
        test_fit_flags,
        test_slope_check_policy,
        test_exact_solution_profile_gives_zero_norms,
        test_series_rows_and_workers,
        test_mid_region_rate_gaussian,
    ]
    failed = 0
    for test in tests:
        try:
            test()
        except AssertionError as e:
            failed += 1
            print(f"❌ {test.__name__}: {e}")
    print(f"Test Results: {len(tests) - failed}/{len(tests)} passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
