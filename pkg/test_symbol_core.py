#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the Fourier-side symbol: branch constants, characteristic roots
and the E0/E1 kernels (including continuity across the branch radius).
"""

import sys
import os
import math

# Add current directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest

from core.logger import DataError
from core.symbol_core import (
    Branch,
    branch_residuals,
    characteristic_roots,
    classify_branch,
    delta_cutoff,
    discriminant,
    e0_kernel,
    e1_kernel,
    kernels,
    uhat_solution,
    uhat_time_derivative,
    zeta_root,
)


def test_branch_constants():
    """ζ and δ solve their defining equations to 1e-12"""
    print("Testing branch constants...")
    zeta, delta = zeta_root(), delta_cutoff()
    assert abs(zeta - 0.42385) < 1e-4
    assert abs(delta - 0.3206) < 1e-4
    zeta_residual, delta_residual = branch_residuals()
    assert zeta_residual < 1e-12
    assert delta_residual < 1e-12
    assert abs(discriminant(zeta)) < 1e-12
    assert abs(discriminant(delta) - 0.5) < 1e-12
    print(f"✅ zeta={zeta:.12f}, delta={delta:.12f}")


def test_roots_at_zero_and_one():
    """r = 0 gives (0, -1); r = 1 gives a conjugate pair with real part -1/4"""
    print("Testing characteristic roots...")
    state = characteristic_roots(0.0)
    assert state.lambda1 == 0
    assert state.lambda2 == -1
    assert state.branch is Branch.OVERDAMPED

    state = characteristic_roots(1.0)
    assert state.branch is Branch.OSCILLATORY
    assert state.lambda1.real == pytest.approx(-0.25, abs=1e-15)
    assert state.lambda1 == state.lambda2.conjugate()
    print("✅ Roots at r=0 and r=1 correct")


@pytest.mark.parametrize('r', [1e-4, 0.1, 0.3, 0.42, 0.5, 1.0, 7.0])
def test_vieta_relations(r):
    state = characteristic_roots(r)
    alpha = 1.0 + r * r
    assert (state.lambda1 + state.lambda2).real == pytest.approx(-1.0 / alpha, rel=1e-12)
    assert (state.lambda1 * state.lambda2).real == pytest.approx(r * r, rel=1e-10)


def test_small_radius_root_has_no_cancellation():
    """λ1 ≈ -r² for tiny r, computed without catastrophic cancellation"""
    r = 1e-6
    state = characteristic_roots(r)
    assert state.lambda1.real == pytest.approx(-r * r, rel=1e-9)


def test_branch_classification():
    assert classify_branch(0.0) is Branch.CRITICAL
    assert classify_branch(5e-7) is Branch.CRITICAL
    assert classify_branch(1e-3) is Branch.OVERDAMPED
    assert classify_branch(-1e-3) is Branch.OSCILLATORY
    assert characteristic_roots(zeta_root()).branch is Branch.CRITICAL


def test_negative_radius_rejected():
    with pytest.raises(DataError):
        characteristic_roots(-1.0)


def test_kernel_initial_values():
    """E0(0) = 1, E1(0) = 0, ∂tE1(0) = 1 on every branch"""
    print("Testing kernel initial values...")
    radii = np.array([0.0, 0.1, delta_cutoff(), zeta_root(), 0.6, 1.0, 10.0])
    e0, e1 = kernels(0.0, radii)
    assert np.allclose(e0, 1.0, atol=1e-15)
    assert np.allclose(e1, 0.0, atol=1e-15)
    # û_t(0) = û1
    assert np.allclose(uhat_time_derivative(0.0, radii, 1.0, 2.0), 2.0, atol=1e-14)
    print("✅ Kernel initial values correct")


def test_kernels_scalar_in_scalar_out():
    value = e0_kernel(1.0, 0.5)
    assert np.ndim(value) == 0
    assert isinstance(float(value), float)


def test_continuity_across_branch_radius():
    """E0, E1 continuous across ζ under ±1e-8 perturbation for t ≤ 50"""
    print("Testing continuity across zeta...")
    zeta = zeta_root()
    t = np.linspace(0.0, 50.0, 501)
    for a, b in ((zeta - 1e-8, zeta + 1e-8), (zeta - 1e-8, zeta), (zeta, zeta + 1e-8)):
        assert np.max(np.abs(e0_kernel(t, a) - e0_kernel(t, b))) < 1e-6
        assert np.max(np.abs(e1_kernel(t, a) - e1_kernel(t, b))) < 1e-6
    print("✅ Kernels continuous across the branch point")


def test_continuity_at_series_band_edges():
    """The direct formulas and the series agree where the band ends"""
    zeta = zeta_root()
    t = np.linspace(0.0, 50.0, 201)
    for sign in (-1.0, 1.0):
        inside = zeta + sign * 1.5e-7
        outside = zeta + sign * 2.5e-7
        assert np.max(np.abs(e0_kernel(t, inside) - e0_kernel(t, outside))) < 1e-6
        assert np.max(np.abs(e1_kernel(t, inside) - e1_kernel(t, outside))) < 1e-6


@pytest.mark.parametrize('r', [0.05, 0.3, 0.42385, 0.7, 3.0])
def test_time_derivative_matches_finite_difference(r):
    h = 1e-5
    for t in (0.5, 3.0, 20.0):
        fd = (uhat_solution(t + h, r, 1.0, 0.5) - uhat_solution(t - h, r, 1.0, 0.5)) / (2 * h)
        assert uhat_time_derivative(t, r, 1.0, 0.5) == pytest.approx(fd, abs=1e-7)


def test_solution_satisfies_mode_equation():
    """(1+r²)û_tt + û_t + r²(1+r²)û ≈ 0 by central differences"""
    h = 1e-4
    for r in (0.2, 0.8, 2.0):
        alpha = 1.0 + r * r
        for t in (1.0, 5.0):
            u_m = uhat_solution(t - h, r, 1.0, -0.3)
            u_0 = uhat_solution(t, r, 1.0, -0.3)
            u_p = uhat_solution(t + h, r, 1.0, -0.3)
            u_tt = (u_p - 2 * u_0 + u_m) / (h * h)
            u_t = (u_p - u_m) / (2 * h)
            assert abs(alpha * u_tt + u_t + r * r * alpha * u_0) < 1e-5


def test_closed_form_at_zero_radius():
    """r = 0: E0 = (1+e^{-t})/2, E1 = 1 − e^{-t}, û = û0 + û1(1 − e^{-t})"""
    print("Testing closed form at r = 0...")
    u0, u1 = 1.5, -0.75
    for t in (0.0, 0.3, 2.0, 20.0):
        decay = math.exp(-t)
        assert e0_kernel(t, 0.0) == pytest.approx((1.0 + decay) / 2.0, abs=1e-13)
        assert e1_kernel(t, 0.0) == pytest.approx(1.0 - decay, abs=1e-13)
        assert uhat_solution(t, 0.0, u0, u1) == pytest.approx(u0 + u1 * (1.0 - decay), abs=1e-13)
        assert uhat_time_derivative(t, 0.0, u0, u1) == pytest.approx(u1 * decay, abs=1e-13)
    print("✅ r = 0 closed form correct")


def test_long_time_bounded_by_initial_data():
    """|û(1000, r)| < |û(0, r)| + |û_t(0, r)| for r > 0"""
    print("Testing long-time bound on the mode amplitude...")
    radii = np.logspace(-3.0, 1.0, 41)
    u0, u1 = 1.0, 1.0
    late = np.abs(uhat_solution(1000.0, radii, u0, u1))
    start = np.abs(uhat_solution(0.0, radii, u0, u1)) + np.abs(uhat_time_derivative(0.0, radii, u0, u1))
    assert np.all(late < start)
    print(f"✅ max |û(1000, r)| = {late.max():.6f}")


def test_negative_time_rejected():
    with pytest.raises(DataError):
        e0_kernel(-1.0, 0.5)


def main():
    """Run symbol tests without pytest"""
    print("=" * 60)
    print("Symbol core tests")
    print("=" * 60)
    tests = [
        test_branch_constants,
        test_roots_at_zero_and_one,
        test_small_radius_root_has_no_cancellation,
        test_branch_classification,
        test_kernel_initial_values,
        test_closed_form_at_zero_radius,
        test_long_time_bounded_by_initial_data,
        test_continuity_across_branch_radius,
        test_continuity_at_series_band_edges,
        test_solution_satisfies_mode_equation,
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
