#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for region-restricted radial L2 norms: closed-form Gaussian norms,
region additivity, tail certificates and budget failures.
"""

import sys
import os
import math

# Add current directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest

from core.logger import NonConvergentError, NonIntegrableError, NoTailBoundError, QuadratureError
from core.symbol_core import delta_cutoff, uhat_solution, zeta_root
from core.utils import surface_measure
from services.initial_data import gaussian_datum, pair_from_label
from services.profiles import solution_tail
from services.quadrature import Region, TailBound, TailTerm, Zone, l2_region_norm, tail_cutoff


def _heat_norm(p, t, n, tol=1e-12):
    def f(r):
        return p * np.exp(-t * r * r)

    tail = TailBound((TailTerm(p * p, 0.0, 2.0 * t),))
    return l2_region_norm(f, Region.full(), n, 0.0, tol, tail=tail)


@pytest.mark.parametrize('n', [1, 2, 3, 5])
def test_gaussian_heat_norm_closed_form(n):
    """‖P e^{-t r²}‖ = |P| (π/(2t))^{n/4}"""
    print(f"Testing Gaussian heat norm n={n}...")
    p, t = 2.5, 10.0
    result = _heat_norm(p, t, n)
    expected = abs(p) * (math.pi / (2.0 * t)) ** (n / 4.0)
    assert result.value == pytest.approx(expected, rel=1e-8)
    assert result.est_error <= 1e-10
    print(f"✅ n={n}: {result.value:.12e} vs {expected:.12e}")


def test_surface_measure():
    assert surface_measure(1) == pytest.approx(2.0)
    assert surface_measure(2) == pytest.approx(2.0 * math.pi)
    assert surface_measure(3) == pytest.approx(4.0 * math.pi)


def test_region_bounds_and_labels():
    assert Region.low().upper == pytest.approx(delta_cutoff())
    assert Region.mid().lower == pytest.approx(delta_cutoff())
    assert Region.mid().upper == 1.0
    assert not Region.high().bounded
    assert Region.from_name('FULL').zone is Zone.FULL
    assert Region.from_name(' high ').label == 'High'
    with pytest.raises(QuadratureError):
        Region.from_name('everything')
    with pytest.raises(QuadratureError):
        Region(Zone.MID, 1.0, 0.5)


def test_head_segments_split_at_break_points():
    segments = Region.full().head_segments()
    edges = [a for a, _ in segments] + [segments[-1][1]]
    assert edges == pytest.approx([0.0, delta_cutoff(), zeta_root(), 1.0])


def test_region_additivity():
    """Full² = Low² + Mid² + High² for the solution norm"""
    print("Testing region additivity...")
    pair = pair_from_label('gaussian:a=1', 3, 2.0)
    t, tol = 5.0, 1e-10

    def solution(r):
        return uhat_solution(t, r, pair.u0(r), pair.u1(r))

    tail = solution_tail(pair)
    norms = {}
    for region in (Region.low(), Region.mid(), Region.high(), Region.full()):
        norms[region.label] = l2_region_norm(solution, region, 3, t, tol, tail=tail).value
    combined = math.sqrt(norms['Low'] ** 2 + norms['Mid'] ** 2 + norms['High'] ** 2)
    assert abs(norms['Full'] - combined) <= 2 * tol
    print(f"✅ Full={norms['Full']:.12e}, pieces={combined:.12e}")


def test_oscillatory_width_cap_matches_uncapped():
    """Oscillation cap only refines panels; the value does not move"""
    def f(r):
        return np.exp(-r * r) * np.cos(40.0 * r)

    tail = TailBound((TailTerm(1.0, 0.0, 2.0),))
    capped = l2_region_norm(f, Region.full(), 2, 40.0, 1e-11, tail=tail)
    plain = l2_region_norm(f, Region.full(), 2, 0.0, 1e-11, tail=tail)
    assert capped.value == pytest.approx(plain.value, abs=2e-11)


def test_tail_cutoff_meets_target():
    tail = TailBound((TailTerm(1.0, 8.0, 0.0),))
    cutoff = tail_cutoff(tail, 1e-6, 3)
    assert cutoff > 1.0
    assert tail.integral(cutoff, 3) < (1e-6) ** 2 / 4.0
    assert tail.integral(cutoff * 0.99, 3) >= (1e-6) ** 2 / 4.0


def test_tail_term_closed_forms():
    """Power and Gaussian envelopes integrate in closed form"""
    power = TailTerm(2.0, 6.0, 0.0)
    # ∫_2^∞ 2 r^{2-6} dr = 2·2^{-3}/3
    assert power.integral(2.0, 3) == pytest.approx(2.0 * 2.0 ** -3 / 3.0)
    gauss = TailTerm(1.0, 0.0, 1.0)
    # ∫_0^∞ e^{-r²} dr = √π/2 (n = 1)
    assert gauss.integral(0.0, 1) == pytest.approx(math.sqrt(math.pi) / 2.0)
    assert math.isinf(TailTerm(1.0, 3.0, 0.0).integral(1.0, 3))


def test_tail_errors():
    with pytest.raises(NoTailBoundError):
        tail_cutoff(None, 1e-6, 3)
    with pytest.raises(NonIntegrableError):
        tail_cutoff(TailBound((TailTerm(1.0, 2.0, 0.0),)), 1e-6, 3)
    assert tail_cutoff(TailBound.zero(), 1e-6, 3, floor=4.0) == 4.0


def test_non_integrable_without_tail():
    """|f|² ~ r^{-2} in n = 3 grows under cutoff extension"""
    def f(r):
        return 1.0 / (1.0 + r)

    with pytest.raises(NonIntegrableError):
        l2_region_norm(f, Region.full(), 3, 0.0, 1e-6, max_evals=10_000_000)


def test_budget_exhaustion_reports_partial_value():
    pair = pair_from_label('gaussian:a=1', 3, 2.0)

    def solution(r):
        return uhat_solution(500.0, r, pair.u0(r), pair.u1(r))

    with pytest.raises(NonConvergentError) as info:
        l2_region_norm(solution, Region.full(), 3, 500.0, 1e-12,
                       tail=solution_tail(pair), max_evals=2_000)
    assert info.value.partial_value >= 0.0


def test_gaussian_datum_norm_without_tail():
    """Fast-decaying integrands converge through the extension test alone"""
    d = gaussian_datum(1.0, 3)
    result = l2_region_norm(d, Region.full(), 3, 0.0, 1e-10)
    expected = d.moment * (2.0 * math.pi) ** 0.75
    assert result.value == pytest.approx(expected, rel=1e-8)


def test_unit_function_on_unit_interval():
    """f = 1 on [0, 1], n = 1: ‖f‖² = ω₀·1 = 2"""
    print("Testing unit function norm...")
    assert surface_measure(1) == pytest.approx(2.0)

    def f(r):
        return np.ones_like(r)

    result = l2_region_norm(f, Region.full(upper=1.0), 1, 0.0, 1e-11)
    assert result.value == pytest.approx(math.sqrt(2.0), abs=1e-11)
    print(f"✅ ‖1‖ = {result.value:.15f}")


def test_high_region_stable_under_panel_doubling():
    """Oscillatory High norm in n = 7 does not move when the panel count doubles"""
    print("Testing High region panel doubling...")

    def f(r):
        return np.sin(100.0 * r) / r * np.exp(-1.0 / (2.0 * r * r))

    region = Region.high(upper=5.0)
    single = l2_region_norm(f, region, 7, 100.0, 1e-9)
    doubled = l2_region_norm(f, region, 7, 100.0, 1e-9, panel_density=2)
    assert doubled.panels_used > 0
    assert abs(single.value - doubled.value) <= 1e-8
    print(f"✅ High n=7: {single.value:.12f} vs {doubled.value:.12f}")


@pytest.mark.parametrize('scale', [-3.5, 2.0 - 1.0j])
def test_norm_scales_with_modulus(scale):
    """‖c·f‖ = |c|·‖f‖"""
    def f(r):
        return np.cos(5.0 * r)

    def scaled(r):
        return scale * np.cos(5.0 * r)

    base = l2_region_norm(f, Region.mid(), 3, 0.0, 1e-11)
    result = l2_region_norm(scaled, Region.mid(), 3, 0.0, 1e-11)
    assert result.value == pytest.approx(abs(scale) * base.value, rel=1e-9)


def main():
    """Run quadrature tests without pytest"""
    print("=" * 60)
    print("Quadrature tests")
    print("=" * 60)
    tests = [
        lambda: test_gaussian_heat_norm_closed_form(3),
        test_region_bounds_and_labels,
        test_head_segments_split_at_break_points,
        test_region_additivity,
        test_tail_cutoff_meets_target,
        test_tail_term_closed_forms,
        test_tail_errors,
        test_unit_function_on_unit_interval,
        test_high_region_stable_under_panel_doubling,
        lambda: test_norm_scales_with_modulus(-3.5),
    ]
    failed = 0
    for test in tests:
        try:
            test()
        except AssertionError as e:
            failed += 1
            print(f"❌ {getattr(test, '__name__', 'test')}: {e}")
    print(f"Test Results: {len(tests) - failed}/{len(tests)} passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
