#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the asymptotic profiles and their r >= 1 envelopes.
"""

import sys
import os
import math

# Add current directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest

from core.logger import DataError
from core.symbol_core import uhat_solution
from services.initial_data import pair_from_label, pair_from_labels
from services.profiles import (
    ProfileKind,
    combined_profile,
    heat_profile,
    heat_tail,
    profile_function,
    residual_tail,
    solution_tail,
    wave_profile,
    wave_tail,
    zero_profile,
)
from services.quadrature import TailBound


def _envelope(tail: TailBound, r: np.ndarray) -> np.ndarray:
    total = np.zeros_like(r)
    for term in tail.terms:
        total += term.coefficient * r ** (-term.power) * np.exp(-term.gauss * r * r)
    return total


PAIRS = {
    'gaussian': pair_from_label('gaussian:a=1', 3, 2.0),
    'edge': pair_from_label('edge:sigma=7.25', 10, 2.0),
    'mixed': pair_from_labels('edge:sigma=6', 'gaussian:a=0.5', 3, 2.0),
}


def test_wave_profile_values():
    print("Testing wave profile...")
    pair = PAIRS['gaussian']
    assert wave_profile(1.0, 0.0, pair) == 0.0
    r, t = 2.0, 3.0
    damp = math.exp(-t / (2 * r * r))
    expected = damp * (float(pair.u1(r)) * math.sin(t * r) / r + float(pair.u0(r)) * math.cos(t * r))
    assert wave_profile(t, r, pair) == pytest.approx(expected, rel=1e-14)
    # e^{-t/(2r²)} underflows to an exact zero
    assert wave_profile(1e4, 1e-3, pair) == 0.0
    with pytest.raises(DataError):
        wave_profile(0.0, 1.0, pair)
    print("✅ Wave profile correct")


def test_heat_profile_values():
    pair = PAIRS['gaussian']
    assert heat_profile(5.0, 0.0, pair) == pytest.approx(pair.moment_sum)
    assert heat_profile(0.0, 3.0, pair) == pytest.approx(pair.moment_sum)
    assert heat_profile(1e4, 1.0, pair) == 0.0
    r = np.array([0.1, 0.2])
    assert np.allclose(heat_profile(2.0, r, pair), pair.moment_sum * np.exp(-2.0 * r * r))
    with pytest.raises(DataError):
        heat_profile(-1.0, 1.0, pair)


def test_combined_and_lookup():
    pair = PAIRS['edge']
    r = np.linspace(0.0, 3.0, 31)
    assert np.allclose(combined_profile(4.0, r, pair), wave_profile(4.0, r, pair) + heat_profile(4.0, r, pair))
    assert profile_function(None) is zero_profile
    assert profile_function(ProfileKind.WAVE_LIKE) is wave_profile
    assert profile_function('HeatLike') is heat_profile
    assert np.all(zero_profile(1.0, r, pair) == 0.0)


def test_heat_profile_approximates_low_frequencies():
    """Near r = 0 and large t the solution follows (P0+P1)e^{-tr²}"""
    pair = PAIRS['gaussian']
    t = 400.0
    r = np.linspace(0.0, 0.1, 21)
    u = uhat_solution(t, r, pair.u0(r), pair.u1(r))
    scale = pair.moment_sum
    assert np.max(np.abs(u - heat_profile(t, r, pair))) < 0.05 * scale


def test_wave_profile_approximates_high_frequencies():
    """For r ≫ 1 the solution follows the wave profile"""
    pair = PAIRS['edge']
    t = 50.0
    r = np.linspace(20.0, 30.0, 101)
    u = uhat_solution(t, r, pair.u0(r), pair.u1(r))
    envelope = np.abs(pair.u0(r)) + np.abs(pair.u1(r))
    assert np.all(np.abs(u - wave_profile(t, r, pair)) <= 1e-2 * envelope)


@pytest.mark.parametrize('name', sorted(PAIRS))
@pytest.mark.parametrize('t', [0.5, 10.0, 300.0])
def test_envelopes_dominate_pointwise(name, t):
    """|û|², |wave|², |û - profile|² stay under their r >= 1 envelopes"""
    pair = PAIRS[name]
    r = np.concatenate([np.linspace(1.0, 5.0, 801), np.linspace(5.0, 200.0, 4001)])
    u = uhat_solution(t, r, pair.u0(r), pair.u1(r))
    slack = 1.0 + 1e-9
    assert np.all(np.abs(u) ** 2 <= _envelope(solution_tail(pair), r) * slack + 1e-300)
    wave = wave_profile(t, r, pair)
    assert np.all(np.abs(wave) ** 2 <= _envelope(wave_tail(pair), r) * slack + 1e-300)
    heat = heat_profile(t, r, pair)
    assert np.all(heat ** 2 <= _envelope(heat_tail(pair, t), r) * slack + 1e-300)
    for kind, profile in ((ProfileKind.WAVE_LIKE, wave), (ProfileKind.HEAT_LIKE, heat),
                          (ProfileKind.COMBINED, wave + heat)):
        envelope = _envelope(residual_tail(pair, kind, t), r)
        assert np.all(np.abs(u - profile) ** 2 <= envelope * slack + 1e-300), kind


def test_residual_tail_special_cases():
    pair = PAIRS['gaussian']
    assert residual_tail(pair, ProfileKind.HEAT_LIKE, 0.0) is None
    assert residual_tail(pair, ProfileKind.COMBINED, 0.0) is None
    assert residual_tail(pair, None, 0.0) == solution_tail(pair)
    assert not residual_tail(pair, ProfileKind.WAVE_LIKE, 0.0).is_zero
    zero = pair_from_labels('zero', 'zero', 3, 2.0)
    assert heat_tail(zero, 1.0).is_zero


def main():
    """Run profile tests without pytest"""
    print("=" * 60)
    print("Profile tests")
    print("=" * 60)
    tests = [
        test_wave_profile_values,
        test_heat_profile_values,
        test_combined_and_lookup,
        test_heat_profile_approximates_low_frequencies,
        test_wave_profile_approximates_high_frequencies,
        test_residual_tail_special_cases,
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
