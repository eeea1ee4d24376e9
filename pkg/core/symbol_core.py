"""
النواة الطيفية - Fourier-space symbol core

Exact evaluation of the transformed problem

    (1 + r²) û_tt + û_t + r²(1 + r²) û = 0,      r = |ξ|,

through its characteristic roots and the kernels E₀, E₁:

    û(t, r) = û₀ E₀(t, r) + (û₁ + û₀ / (2(1 + r²))) E₁(t, r).

The discriminant 1 − 4r²(1 + r²)² vanishes at the branch radius ζ. Inside a
thin band around ζ both kernels are evaluated from a shared power series in
s = t²·disc / (4(1 + r²)²), so they stay continuous across the branch point.

All functions broadcast over numpy arrays of t and r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
from scipy.optimize import brentq, newton

from .constants import (
    CRITICAL_BAND_TOL,
    ROOT_RESIDUAL_TOL,
    ROOT_XTOL,
    SERIES_MAX_ARGUMENT,
    SERIES_TERMS,
)
from .logger import DataError, ErrorCodes, log_debug

ArrayLike = Union[float, np.ndarray]

# معاملات السلسلتين: cosh/cos ↔ 1/(2k)! و sinh(x)/x ↔ 1/(2k+1)!
_EVEN_COEFFS = np.array([1.0 / math.factorial(2 * k) for k in range(SERIES_TERMS)])
_ODD_COEFFS = np.array([1.0 / math.factorial(2 * k + 1) for k in range(SERIES_TERMS)])


class Branch(str, Enum):
    """تصنيف الجذرين المميزين."""
    OVERDAMPED = 'Overdamped'
    CRITICAL = 'Critical'
    OSCILLATORY = 'Oscillatory'


@dataclass(frozen=True)
class ModeState:
    """Root pair, discriminant and branch at one frequency radius."""
    r: float
    lambda1: complex
    lambda2: complex
    discriminant: float
    branch: Branch


@dataclass(frozen=True)
class BranchConstants:
    zeta: float
    delta: float
    critical_band_tol: float = CRITICAL_BAND_TOL


# ==================== الثوابت ζ و δ ====================

def _branch_polynomial(z: float, target: float) -> float:
    return 4.0 * z * z * (1.0 + z * z) ** 2 - target


def _branch_polynomial_prime(z: float, target: float) -> float:
    w = 1.0 + z * z
    return 8.0 * z * w * w + 16.0 * z ** 3 * w


def _solve_branch_equation(target: float) -> float:
    """
    حل 4z²(1+z²)² = target على [0, 1] بالتنصيف ثم تلميع نيوتن.

    المعاملات:
        target: الطرف الأيمن (1 لـ ζ و 1/2 لـ δ)

    العائد:
        الجذر الوحيد في (0, 1)
    """
    root = brentq(_branch_polynomial, 0.0, 1.0, args=(target,),
                  xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps, maxiter=200)
    try:
        polished = newton(_branch_polynomial, root, fprime=_branch_polynomial_prime,
                          args=(target,), tol=ROOT_XTOL, maxiter=20)
    except RuntimeError:
        polished = root
    if abs(_branch_polynomial(polished, target)) <= abs(_branch_polynomial(root, target)):
        root = polished
    residual = abs(_branch_polynomial(root, target))
    if residual >= ROOT_RESIDUAL_TOL:
        log_debug(f'[Symbol] branch equation residual {residual:.2e} for target {target}')
    return float(root)


@lru_cache(maxsize=None)
def zeta_root() -> float:
    """Branch radius ζ: the root of 4ζ²(1+ζ²)² = 1 in (0, 1)."""
    return _solve_branch_equation(1.0)


@lru_cache(maxsize=None)
def delta_cutoff() -> float:
    """Low-frequency cutoff δ: the largest radius with 1 − 4δ²(1+δ²)² ≥ 1/2."""
    return _solve_branch_equation(0.5)


def branch_constants() -> BranchConstants:
    return BranchConstants(zeta=zeta_root(), delta=delta_cutoff())


def branch_residuals() -> Tuple[float, float]:
    """
    بواقي المعادلتين عند ζ و δ.

    العائد:
        (|4ζ²(1+ζ²)² − 1|, |4δ²(1+δ²)² − 1/2|)
    """
    return (abs(_branch_polynomial(zeta_root(), 1.0)),
            abs(_branch_polynomial(delta_cutoff(), 0.5)))


# ==================== الجذور المميزة ====================

def _check_radius(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or r < 0.0:
        raise DataError(ErrorCodes.DATA_INVALID_PARAMETER,
                        details=f'frequency radius must be finite and >= 0, got {r}')
    return r


def discriminant(r: ArrayLike) -> ArrayLike:
    """1 − 4r²(1+r²)²."""
    r = np.asarray(r, dtype=float)
    alpha = 1.0 + r * r
    return 1.0 - 4.0 * r * r * alpha * alpha


def classify_branch(disc: float, tol: float = CRITICAL_BAND_TOL) -> Branch:
    if abs(disc) <= tol:
        return Branch.CRITICAL
    return Branch.OVERDAMPED if disc > 0 else Branch.OSCILLATORY


def characteristic_roots(r: float) -> ModeState:
    """
    جذرا المعادلة المميزة (1+r²)λ² + λ + r²(1+r²) = 0.

    الجذر الأكبر مقداراً يُحسب أولاً، والآخر من علاقة الضرب λ₁λ₂ = r²،
    فلا يحدث إلغاء عددي عند r الصغير.

    المعاملات:
        r: نصف القطر الترددي (r ≥ 0)

    العائد:
        ModeState
    """
    r = _check_radius(r)
    alpha = 1.0 + r * r
    disc = float(discriminant(r))
    if disc >= 0.0:
        sqrt_disc = math.sqrt(disc)
        lambda2 = (-1.0 - sqrt_disc) / (2.0 * alpha)
        lambda1 = r * r / lambda2 + 0.0
        roots = (complex(lambda1, 0.0), complex(lambda2, 0.0))
    else:
        real = -1.0 / (2.0 * alpha)
        imag = math.sqrt(-disc) / (2.0 * alpha)
        roots = (complex(real, imag), complex(real, -imag))
    return ModeState(r=r, lambda1=roots[0], lambda2=roots[1],
                     discriminant=disc, branch=classify_branch(disc))


# ==================== النواتان E₀ و E₁ ====================

def _horner(coeffs: np.ndarray, s: np.ndarray) -> np.ndarray:
    acc = np.full_like(s, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * s + c
    return acc


def _kernel_parts(t: ArrayLike, r: ArrayLike):
    """
    Evaluate E₀, E₁ and ∂_t E₁ on the broadcast grid of (t, r).

    Away from the critical band the overdamped branch uses the stable
    λ-form e^{λ₁t}(1 ± e^{−(λ₁−λ₂)t}), the oscillatory branch the damped
    cos/sin form. Inside the band all three come from the shared series.
    """
    t, r = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(r, dtype=float))
    if np.any(t < 0.0):
        raise DataError(ErrorCodes.DATA_INVALID_TIME, details='kernels need t >= 0')
    alpha = 1.0 + r * r
    disc = 1.0 - 4.0 * r * r * alpha * alpha
    mu = -1.0 / (2.0 * alpha)
    s = t * t * disc / (4.0 * alpha * alpha)

    series = (np.abs(disc) <= CRITICAL_BAND_TOL) & (np.abs(s) <= SERIES_MAX_ARGUMENT)
    over = (disc > 0.0) & ~series
    osc = ~(series | over)

    e0 = np.empty(t.shape)
    e1 = np.empty(t.shape)
    e1_dot = np.empty(t.shape)

    if np.any(series):
        ts, ss = t[series], s[series]
        damp = np.exp(mu[series] * ts)
        even = _horner(_EVEN_COEFFS, ss)
        odd = _horner(_ODD_COEFFS, ss)
        e0[series] = damp * even
        e1[series] = damp * ts * odd
        e1_dot[series] = damp * (even + mu[series] * ts * odd)

    if np.any(over):
        to, ro, ao = t[over], r[over], alpha[over]
        sqrt_disc = np.sqrt(disc[over])
        lam2 = (-1.0 - sqrt_disc) / (2.0 * ao)
        lam1 = ro * ro / lam2
        gap = sqrt_disc / ao
        x1 = np.exp(lam1 * to)
        tail = np.exp(-gap * to)
        e0[over] = 0.5 * x1 * (1.0 + tail)
        e1[over] = x1 * (-np.expm1(-gap * to)) / gap
        e1_dot[over] = x1 + lam2 * e1[over]

    if np.any(osc):
        tc, ac = t[osc], alpha[osc]
        omega = np.sqrt(-disc[osc]) / (2.0 * ac)
        damp = np.exp(mu[osc] * tc)
        cos_part = damp * np.cos(omega * tc)
        e0[osc] = cos_part
        e1[osc] = damp * np.sin(omega * tc) / omega
        e1_dot[osc] = cos_part + mu[osc] * e1[osc]

    return e0, e1, e1_dot, alpha


def _scalar_or_array(value: np.ndarray, *inputs) -> ArrayLike:
    if all(np.ndim(x) == 0 for x in inputs):
        return value[()]
    return value


def kernels(t: ArrayLike, r: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """(E₀, E₁) on the broadcast grid of (t, r)."""
    e0, e1, _, _ = _kernel_parts(t, r)
    return _scalar_or_array(e0, t, r), _scalar_or_array(e1, t, r)


def e0_kernel(t: ArrayLike, r: ArrayLike) -> ArrayLike:
    """
    E₀ = e^{−t/(2α)}·cosh or cos of t√|disc|/(2α), α = 1 + r².

    المعاملات:
        t: الزمن (t ≥ 0)
        r: نصف القطر الترددي
    """
    return kernels(t, r)[0]


def e1_kernel(t: ArrayLike, r: ArrayLike) -> ArrayLike:
    """
    E₁ = e^{−t/(2α)}·sinh or sin of t√|disc|/(2α), divided by √|disc|/(2α).

    At the double root the limit t·e^{−t/(2α)} is returned.
    """
    return kernels(t, r)[1]


# ==================== الحل وتفاضله الزمني ====================

def uhat_solution(t: ArrayLike, r: ArrayLike, u0hat, u1hat):
    """
    û(t, r) = û₀E₀ + (û₁ + û₀/(2α))E₁.

    المعاملات:
        t: الزمن (t ≥ 0)
        r: نصف القطر الترددي
        u0hat: تحويل فورييه للموضع الابتدائي عند r
        u1hat: تحويل فورييه للسرعة الابتدائية عند r

    العائد:
        قيمة û (عددي أو مصفوفة، حقيقي أو مركب حسب المدخلات)
    """
    e0, e1, _, alpha = _kernel_parts(t, r)
    u0hat = np.asarray(u0hat)
    u1hat = np.asarray(u1hat)
    value = u0hat * e0 + (u1hat + u0hat / (2.0 * alpha)) * e1
    return _scalar_or_array(np.asarray(value), t, r, u0hat, u1hat)


def uhat_time_derivative(t: ArrayLike, r: ArrayLike, u0hat, u1hat):
    """
    ∂_t û(t, r) = û₁·∂_tE₁ − r²·û₀·E₁.

    ∂_tE₁ comes from the λ-form e^{λ₁t} + λ₂E₁ away from the critical band and
    from the differentiated series inside it.
    """
    _, e1, e1_dot, _ = _kernel_parts(t, r)
    r_arr = np.asarray(r, dtype=float)
    u0hat = np.asarray(u0hat)
    u1hat = np.asarray(u1hat)
    value = u1hat * e1_dot - r_arr * r_arr * u0hat * e1
    return _scalar_or_array(np.asarray(value), t, r, u0hat, u1hat)
