"""
وحدة البيانات الابتدائية - Initial Data Module

Catalog of radially symmetric initial data given directly by their Fourier
transforms, with analytic moments P = û(0), Sobolev metadata, the linear
bound |û(r) − P| ≤ K·r standing in for the L^{1,1} norm, and certified
envelopes of |û|² used to cut the frequency integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from core.constants import (
    EDGE_EPSILON,
    L11_GRID_POINTS,
    L11_GRID_START,
    L11_GRID_STOP,
)
from core.logger import ConfigError, DataError, ErrorCodes, log_debug
from core.utils import log_spaced_grid
from services.quadrature import Region, TailBound, TailTerm, l2_region_norm

RadialProfile = Callable[[np.ndarray], np.ndarray]

H_NORM_TOL = 1e-14
H_NORM_RTOL = 1e-10


@dataclass(frozen=True)
class DataSpec:
    """
    معطى ابتدائي شعاعي معرّف بتحويل فورييه.

    tail: غلاف |û(r)|² صالح لـ r ≥ 1
    """
    label: str
    uhat: RadialProfile
    moment: float
    l11_surrogate: float
    sobolev_limit: float
    tail: TailBound

    def __call__(self, r):
        return self.uhat(np.asarray(r, dtype=float))


@dataclass(frozen=True)
class DataPair:
    """زوج (u₀, u₁) في البعد n مع الانتظام l."""
    u0: DataSpec
    u1: DataSpec
    dimension: int
    regularity: float

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 1:
            raise DataError(ErrorCodes.DATA_INVALID_PARAMETER,
                            details=f'dimension must be a positive integer, got {self.dimension}')
        if self.regularity < 0:
            raise DataError(ErrorCodes.DATA_INVALID_PARAMETER,
                            details=f'regularity must be >= 0, got {self.regularity}')

    @property
    def moment_sum(self) -> float:
        """P₀ + P₁."""
        return self.u0.moment + self.u1.moment

    @property
    def label(self) -> str:
        return f'u0={self.u0.label},u1={self.u1.label}'

    def validate_for(self, l: Optional[float] = None) -> 'DataPair':
        """
        التحقق من فرضيات جداول المبرهنات: l ≥ 2 و I₀ منته.

        المعاملات:
            l: الانتظام المطلوب (الافتراضي: انتظام الزوج)

        العائد:
            الزوج نفسه (للسلسلة)
        """
        l = self.regularity if l is None else float(l)
        if l < 2:
            raise DataError(ErrorCodes.DATA_INVALID_PARAMETER,
                            details=f'theorem checks need l >= 2, got {l:g}')
        if not (l < self.u1.sobolev_limit and l + 1 < self.u0.sobolev_limit):
            raise DataError(ErrorCodes.DATA_REGULARITY_TOO_LOW,
                            details=(f'{self.label}: need l < {self.u1.sobolev_limit:g} for u1 '
                                     f'and l+1 < {self.u0.sobolev_limit:g} for u0, got l = {l:g}'))
        return self

    @property
    def initial_norm_finite(self) -> bool:
        l = self.regularity
        return l < self.u1.sobolev_limit and l + 1 < self.u0.sobolev_limit


# ==================== ثابت L^{1,1} البديل ====================

def _l11_surrogate(uhat: RadialProfile, moment: float) -> float:
    """
    أكبر قيمة لـ |û(r) − P|/r على شبكة لوغاريتمية، مع تلميع حول القمة.

    العائد:
        تقريب للحد الأعلى K
    """
    grid = log_spaced_grid(L11_GRID_START, L11_GRID_STOP, L11_GRID_POINTS)
    ratio = np.abs(uhat(grid) - moment) / grid
    peak = int(np.argmax(ratio))
    best = float(ratio[peak])
    if best == 0.0:
        return 0.0
    lo = grid[max(peak - 1, 0)]
    hi = grid[min(peak + 1, grid.size - 1)]
    refined = minimize_scalar(lambda r: -abs(float(uhat(np.asarray(r))) - moment) / r,
                              bounds=(lo, hi), method='bounded',
                              options={'xatol': 1e-12 * hi})
    if refined.success:
        best = max(best, -float(refined.fun))
    return best


# ==================== الكتالوج ====================

def gaussian_datum(a: float, n: int) -> DataSpec:
    """
    û(r) = (π/a)^{n/2}·e^{−r²/(4a)}.

    المعاملات:
        a: معامل العرض (a > 0)
        n: البعد
    """
    if not a > 0:
        raise DataError(ErrorCodes.DATA_INVALID_PARAMETER, details=f'gaussian needs a > 0, got {a}')
    moment = (math.pi / a) ** (n / 2.0)

    def uhat(r):
        return moment * np.exp(-np.asarray(r, dtype=float) ** 2 / (4.0 * a))

    tail = TailBound((TailTerm(moment * moment, 0.0, 1.0 / (2.0 * a)),))
    return DataSpec(label=f'gaussian:a={a:g}', uhat=uhat, moment=moment,
                    l11_surrogate=_l11_surrogate(uhat, moment),
                    sobolev_limit=math.inf, tail=tail)


def sobolev_edge_datum(sigma: float, n: int) -> DataSpec:
    """
    û(r) = (1 + r²)^{−σ/2}: في H^s تماماً عندما s < σ − n/2.
    """
    if not sigma > n / 2.0:
        raise DataError(ErrorCodes.DATA_INVALID_PARAMETER,
                        details=f'edge datum needs sigma > n/2 = {n / 2.0:g}, got {sigma}')

    def uhat(r):
        r = np.asarray(r, dtype=float)
        return (1.0 + r * r) ** (-sigma / 2.0)

    tail = TailBound((TailTerm(1.0, 2.0 * sigma, 0.0),))
    return DataSpec(label=f'edge:sigma={sigma:g}', uhat=uhat, moment=1.0,
                    l11_surrogate=_l11_surrogate(uhat, 1.0),
                    sobolev_limit=sigma - n / 2.0, tail=tail)


def zero_datum() -> DataSpec:
    def uhat(r):
        return np.zeros_like(np.asarray(r, dtype=float))

    return DataSpec(label='zero', uhat=uhat, moment=0.0, l11_surrogate=0.0,
                    sobolev_limit=math.inf, tail=TailBound.zero())


def edge_sigma_for(l: float, n: int, epsilon: float = EDGE_EPSILON) -> float:
    """σ = l + n/2 + ε: معطى بانتظام l تماماً (حتى ε)."""
    return l + n / 2.0 + epsilon


# ==================== التفكيك A/B والمعايير ====================

def ab_decomposition(d: DataSpec, r):
    """
    û = A − iB + P مع A = û(r) − P و B = 0 (البيانات الشعاعية الحقيقية).

    العائد:
        (A, B)
    """
    r_arr = np.asarray(r, dtype=float)
    a_part = d(r_arr) - d.moment
    b_part = np.zeros_like(r_arr)
    if np.ndim(r) == 0:
        return float(a_part), 0.0
    return a_part, b_part


def h_norm(d: DataSpec, s: float, n: int,
           tol: float = H_NORM_TOL, rtol: float = H_NORM_RTOL) -> float:
    """
    ‖d‖_{H^s} = (∫(1+r²)^s |û|² ω_{n−1} r^{n−1} dr)^{1/2}.

    عند s ≥ حد سوبوليف يصبح غلاف الذيل غير قابل للتكامل ويُرفع
    NonIntegrableError من تمديد القطع.
    """
    if s < 0:
        raise DataError(ErrorCodes.DATA_INVALID_PARAMETER, details=f'Sobolev index must be >= 0, got {s}')

    def weighted(r):
        return (1.0 + r * r) ** (s / 2.0) * d(r)

    result = l2_region_norm(weighted, Region.full(), n, 0.0, tol,
                            rtol=rtol, tail=d.tail.weighted(s), max_evals=10_000_000)
    log_debug(f'[Data] |{d.label}|_H^{s:g} (n={n}) = {result.value:.12e}')
    return result.value


def initial_norm(pair: DataPair) -> float:
    """
    I₀ = ‖u₁‖_{H^l} + ‖u₀‖_{H^{l+1}} + K₁ + K₀ (ثوابت L^{1,1} البديلة).

    العائد:
        I₀ أو inf عندما يتجاوز l حدود الانتظام
    """
    if not pair.initial_norm_finite:
        return math.inf
    l, n = pair.regularity, pair.dimension
    return (h_norm(pair.u1, l, n) + h_norm(pair.u0, l + 1, n)
            + pair.u1.l11_surrogate + pair.u0.l11_surrogate)


# ==================== التسميات ====================

def parse_data_label(label: str) -> Tuple[str, Dict[str, float]]:
    """
    تحليل تسمية مثل 'gaussian:a=1' أو 'edge:sigma=8' أو 'zero'.

    العائد:
        (النوع، المعاملات)
    """
    text = (label or '').strip()
    kind, _, rest = text.partition(':')
    kind = kind.strip().lower()
    params: Dict[str, float] = {}
    for item in filter(None, (part.strip() for part in rest.split(','))):
        key, sep, value = item.partition('=')
        if not sep:
            raise ConfigError(ErrorCodes.CONFIG_BAD_DATA_LABEL, details=f'{label!r}: expected key=value')
        try:
            params[key.strip().lower()] = float(value)
        except ValueError:
            raise ConfigError(ErrorCodes.CONFIG_BAD_DATA_LABEL, details=f'{label!r}: {value!r} is not a number')
    required = {'gaussian': {'a'}, 'edge': {'sigma'}, 'zero': set()}
    if kind not in required:
        raise ConfigError(ErrorCodes.CONFIG_BAD_DATA_LABEL,
                          details=f'{label!r}: kind must be one of gaussian, edge, zero')
    if set(params) != required[kind]:
        raise ConfigError(ErrorCodes.CONFIG_BAD_DATA_LABEL,
                          details=f'{label!r}: {kind} takes {sorted(required[kind])}')
    return kind, params


def datum_from_label(label: str, n: int) -> DataSpec:
    kind, params = parse_data_label(label)
    if kind == 'gaussian':
        return gaussian_datum(params['a'], n)
    if kind == 'edge':
        return sobolev_edge_datum(params['sigma'], n)
    return zero_datum()


def pair_from_label(label: str, n: int, l: float) -> DataPair:
    """
    زوج من تسمية واحدة: نفس الغاوسي للموضع والسرعة؛ لبيانات الحافة
    u₁ = edge(σ) و u₀ = edge(σ+1) ليحمل u₀ رتبة انتظام إضافية.
    """
    kind, params = parse_data_label(label)
    if kind == 'edge':
        sigma = params['sigma']
        return DataPair(u0=sobolev_edge_datum(sigma + 1.0, n), u1=sobolev_edge_datum(sigma, n),
                        dimension=n, regularity=l)
    datum = datum_from_label(label, n)
    return DataPair(u0=datum, u1=datum, dimension=n, regularity=l)


def pair_from_labels(label0: str, label1: str, n: int, l: float) -> DataPair:
    return DataPair(u0=datum_from_label(label0, n), u1=datum_from_label(label1, n),
                    dimension=n, regularity=l)
