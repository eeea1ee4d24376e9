"""
وحدة المقاطع التقاربية - Asymptotic Profiles Module

Pointwise candidate profiles in (t, r):

    wave:      û₁·e^{−t/(2r²)}·sin(tr)/r + û₀·e^{−t/(2r²)}·cos(tr)
    heat:      (P₀ + P₁)·e^{−tr²}
    combined:  wave + heat

plus certified envelopes of |û|², |profile|² and |û − profile|² for r ≥ 1,
which the quadrature uses to stop extending unbounded regions.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Optional

import numpy as np

from core.constants import HEAT_UNDERFLOW_EXPONENT, UNDERFLOW_EXPONENT
from core.logger import DataError, ErrorCodes
from core.symbol_core import ArrayLike
from services.initial_data import DataPair
from services.quadrature import TailBound, TailTerm

Profile = Callable[[float, ArrayLike, DataPair], ArrayLike]


class ProfileKind(str, Enum):
    WAVE_LIKE = 'WaveLike'
    HEAT_LIKE = 'HeatLike'
    COMBINED = 'Combined'


def _check_positive_time(t: float):
    if not t > 0:
        raise DataError(ErrorCodes.DATA_INVALID_TIME,
                        details=f'wave profile needs t > 0, got {t}')


def _wave_damping(t: float, r: np.ndarray) -> np.ndarray:
    """e^{−t/(2r²)} مع الصفر عند r = 0 وعند تجاوز حد الانغمار."""
    out = np.zeros_like(r)
    live = r > 0.0
    exponent = np.full_like(r, np.inf)
    exponent[live] = t / (2.0 * r[live] * r[live])
    alive = exponent <= UNDERFLOW_EXPONENT
    out[alive] = np.exp(-exponent[alive])
    return out


def wave_profile(t: float, r: ArrayLike, pair: DataPair) -> ArrayLike:
    """
    المقطع الموجي: û₁·e^{−t/(2r²)}·sin(tr)/r + û₀·e^{−t/(2r²)}·cos(tr).

    المعاملات:
        t: الزمن (t > 0)
        r: نصف القطر الترددي (عدد أو مصفوفة)
        pair: زوج البيانات

    العائد:
        القيمة (0 عند r = 0، بالاستمرار)
    """
    _check_positive_time(t)
    scalar = np.ndim(r) == 0
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    damp = _wave_damping(t, r_arr)
    out = np.zeros_like(r_arr)
    live = damp > 0.0
    if np.any(live):
        rl = r_arr[live]
        out[live] = damp[live] * (pair.u1(rl) * np.sin(t * rl) / rl + pair.u0(rl) * np.cos(t * rl))
    return float(out[0]) if scalar else out


def heat_profile(t: float, r: ArrayLike, pair: DataPair) -> ArrayLike:
    """(P₀ + P₁)·e^{−t r²}; exact zero once t r² > 700."""
    if t < 0:
        raise DataError(ErrorCodes.DATA_INVALID_TIME, details=f'heat profile needs t >= 0, got {t}')
    scalar = np.ndim(r) == 0
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    exponent = t * r_arr * r_arr
    out = np.where(exponent > HEAT_UNDERFLOW_EXPONENT, 0.0,
                   pair.moment_sum * np.exp(-np.minimum(exponent, HEAT_UNDERFLOW_EXPONENT)))
    return float(out[0]) if scalar else out


def combined_profile(t: float, r: ArrayLike, pair: DataPair) -> ArrayLike:
    return wave_profile(t, r, pair) + heat_profile(t, r, pair)


def zero_profile(t: float, r: ArrayLike, pair: DataPair) -> ArrayLike:
    return np.zeros_like(np.asarray(r, dtype=float))


_PROFILES = {
    ProfileKind.WAVE_LIKE: wave_profile,
    ProfileKind.HEAT_LIKE: heat_profile,
    ProfileKind.COMBINED: combined_profile,
}


def profile_function(kind: Optional[ProfileKind]) -> Profile:
    """الدالة المقابلة لنوع المقطع (None يعني المقطع الصفري: معيار الحل نفسه)."""
    if kind is None:
        return zero_profile
    return _PROFILES[ProfileKind(kind)]


# ==================== أغلفة الذيل (r ≥ 1) ====================
#
# لـ r ≥ 1 و t ≥ 0: |E₀| ≤ 1 و |E₁| ≤ 1/ω ≤ 1.04/r و 1/(2α) ≤ 1/(2r²)، فـ
# |û| ≤ 1.26|û₀| + 1.04|û₁|/r و |û|² ≤ 4(|û₀|² + |û₁|²·r^{−2}).

def solution_tail(pair: DataPair) -> TailBound:
    """Envelope of |û(t, r)|² valid for every t ≥ 0."""
    return pair.u0.tail.scaled(4.0) + pair.u1.tail.scaled(4.0).with_power(2.0)


def wave_tail(pair: DataPair) -> TailBound:
    """Envelope of |wave_profile|²: 2|û₀|² + 2|û₁|²·r^{−2}."""
    return pair.u0.tail.scaled(2.0) + pair.u1.tail.scaled(2.0).with_power(2.0)


def heat_tail(pair: DataPair, t: float) -> TailBound:
    """P² e^{−2tr²} (no envelope at t = 0: the constant is not integrable)."""
    p = pair.moment_sum
    if p == 0.0:
        return TailBound.zero()
    return TailBound((TailTerm(p * p, 0.0, 2.0 * t),))


def residual_tail(pair: DataPair, kind: Optional[ProfileKind], t: float) -> Optional[TailBound]:
    """
    غلاف |û − profile|² لـ r ≥ 1.

    الموجي: فرق التخميد e^{−t/(2α)} − e^{−t/(2r²)} ≤ t/(2r⁴) وفرق التردد
    r − ω ≤ 1/(4r⁵) يعطيان |û − wave| ≤ (1+t)(|û₀|·r^{−3} + |û₁|·r^{−5}).
    الحراري/المركّب: متباينة المثلث |a − b|² ≤ 2|a|² + 2|b|².

    العائد:
        TailBound أو None عند t = 0 للمقطع الحراري
    """
    if kind is None:
        return solution_tail(pair)
    kind = ProfileKind(kind)
    growth = 2.0 * (1.0 + t) ** 2
    wave_residual = (pair.u0.tail.scaled(growth).with_power(6.0)
                     + pair.u1.tail.scaled(growth).with_power(10.0))
    if kind is ProfileKind.WAVE_LIKE:
        return wave_residual
    if t <= 0:
        return None
    heat = heat_tail(pair, t).scaled(2.0)
    if kind is ProfileKind.HEAT_LIKE:
        return solution_tail(pair).scaled(2.0) + heat
    return wave_residual.scaled(2.0) + heat
