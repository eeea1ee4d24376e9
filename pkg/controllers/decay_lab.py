"""
متحكم مختبر التخامد - Decay Lab Controller
يصنّف النظام حسب (n, l) ويقيس معدلات التخامد
Classifies (n, l) regimes and measures decay rates

هذه الوحدة تربط جداول المبرهنات بخط القياس: سلاسل زمنية لمعايير L² المقيّدة
بمنطقة ترددية، وملاءمة الميل في المقياس اللوغاريتمي، ومقارنته بالأس المتوقع.
This module turns the theorem tables into measurements: region-restricted L²
time series, log-log slope fits and their comparison with predicted exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import linregress

from core.constants import (
    DEFAULT_MAX_EVALS,
    FIT_MIN_POINTS,
    FIT_R2_FLOOR,
    HEAT_SLOPE_TOLERANCE,
    MID_RATE_FLOOR,
    MID_RATE_MAX_REL_STDERR,
    MID_RATE_POINTS,
    MID_RATE_T_START,
    MID_RATE_T_STOP,
    SERIES_ABS_TOL,
    SERIES_RTOL,
    SLOPE_TOLERANCE,
    T_MAX_HEAT,
    T_MAX_REGULARITY_LOSS,
)
from core.logger import (
    ConfigError,
    DataError,
    ErrorCodes,
    FitError,
    get_logger,
    log_debug,
    log_info,
)
from core.symbol_core import uhat_solution
from core.threads import OrderedWorkerPool
from core.utils import geometric_time_grid
from services.initial_data import DataPair
from services.profiles import Profile, ProfileKind, profile_function, residual_tail
from services.quadrature import QuadratureResult, Region, l2_region_norm


# ==================== ثوابت ====================

# حالات جداول المبرهنات - Theorem table cases
class TheoremCase(str, Enum):
    T31_REGULARITY_LOSS = 'T31_RegularityLoss'
    T31_WAVE_BAND = 'T31_WaveBand'
    T32_EDGE_BAND = 'T32_EdgeBand'
    T32_HEAT_BAND = 'T32_HeatBand'
    T33_THRESHOLD = 'T33_Threshold'


# مقارنات مع سماحية لحدود الجداول مثل l = n/2 − 1
_EDGE_TOL = 1e-12

ProfileSpec = Union[ProfileKind, str, None, Profile]


def _eq(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=0.0, abs_tol=_EDGE_TOL)


def _lt(a: float, b: float) -> bool:
    return a < b and not _eq(a, b)


def _le(a: float, b: float) -> bool:
    return a < b or _eq(a, b)


# ==================== تصنيف النظام ====================

@dataclass(frozen=True)
class Regime:
    """
    المقطع المتوقع وأسّا التخامد لزوج (n, l).

    residual_exponent: أس ‖û − profile‖₂
    solution_exponent: أس ‖û‖₂
    """
    n: int
    l: float
    theorem: Optional[TheoremCase]
    profile: Optional[ProfileKind]
    residual_exponent: float
    solution_exponent: float
    valid: bool = True
    reason: str = ''

    def to_dict(self) -> Dict[str, object]:
        return {
            'n': self.n,
            'l': self.l,
            'theorem': self.theorem.value if self.theorem else '',
            'profile': self.profile.value if self.profile else '',
            'residual_exponent': self.residual_exponent,
            'solution_exponent': self.solution_exponent,
            'valid': self.valid,
            'reason': self.reason,
        }


def threshold_regularity(n: int) -> float:
    """l* = n/2 − 1: الحد الفاصل بين المقطع الموجي والمقطع الحراري."""
    return n / 2.0 - 1.0


def _case_conditions(n: int, l: float) -> Dict[TheoremCase, bool]:
    h = n / 2.0
    return {
        TheoremCase.T33_THRESHOLD: n >= 6 and _eq(l, h - 1.0),
        TheoremCase.T31_REGULARITY_LOSS: n >= 10 and _le(2.0, l) and _le(l, h - 3.0),
        TheoremCase.T31_WAVE_BAND: (
            (n in (7, 8, 9) and _le(2.0, l) and _lt(l, h - 1.0))
            or (n >= 10 and _lt(h - 3.0, l) and _lt(l, h - 1.0))
        ),
        TheoremCase.T32_EDGE_BAND: (
            (n == 4 and _eq(l, 2.0))
            or (n == 5 and _le(2.0, l) and _le(l, 2.5))
            or (n >= 6 and _lt(h - 1.0, l) and _le(l, h))
        ),
        TheoremCase.T32_HEAT_BAND: (
            (n >= 4 and _lt(h, l))
            or (n <= 3 and _le(2.0, l))
        ),
    }


def _check_arguments(n: int, l: float):
    if int(n) != n or n < 1:
        raise DataError(ErrorCodes.DATA_INVALID_PARAMETER, details=f'n must be a positive integer, got {n}')
    if not math.isfinite(l) or _lt(l, 2.0):
        raise DataError(ErrorCodes.DATA_REGULARITY_TOO_LOW,
                        details=f'the theorem tables need l >= 2, got {l}')


def matching_cases(n: int, l: float) -> List[TheoremCase]:
    """كل الحالات التي تنطبق شروطها على (n, l) (يجب أن تكون واحدة على الأكثر)."""
    _check_arguments(n, l)
    return [case for case, holds in _case_conditions(int(n), float(l)).items() if holds]


def classify_regime(n: int, l: float) -> Regime:
    """
    تصنيف (n, l) حسب جداول المبرهنات.

    Args:
        n: البعد - dimension (n ≥ 1)
        l: الانتظام - regularity (l ≥ 2)

    Returns:
        Regime: المقطع والأسّان، أو valid=False مع السبب
    """
    _check_arguments(n, l)
    n, l = int(n), float(l)
    cases = matching_cases(n, l)
    if len(cases) != 1:
        reason = 'no theorem case covers (n, l)' if not cases else f'overlapping cases {cases}'
        return Regime(n, l, None, None, math.nan, math.nan, valid=False, reason=reason)

    case = cases[0]
    wave_solution = -(l + 1.0) / 2.0
    heat_solution = -n / 4.0
    if case is TheoremCase.T31_REGULARITY_LOSS:
        return Regime(n, l, case, ProfileKind.WAVE_LIKE, -(l + 3.0) / 2.0, wave_solution)
    if case is TheoremCase.T31_WAVE_BAND:
        return Regime(n, l, case, ProfileKind.WAVE_LIKE, -n / 4.0, wave_solution)
    if case is TheoremCase.T32_EDGE_BAND:
        return Regime(n, l, case, ProfileKind.HEAT_LIKE, -(l + 1.0) / 2.0, heat_solution)
    if case is TheoremCase.T32_HEAT_BAND:
        return Regime(n, l, case, ProfileKind.HEAT_LIKE, -(n + 2.0) / 4.0, heat_solution)
    return Regime(n, l, case, ProfileKind.COMBINED, -(n + 2.0) / 4.0, heat_solution)


def case_study_map(n: int, ls: Optional[Sequence[float]] = None) -> List[Regime]:
    """
    خريطة الأنظمة لبعد ثابت على شبكة من قيم l.

    Args:
        n: البعد
        ls: قيم l (الافتراضي 2 حتى n/2 + 2 بخطوة 1/2)
    """
    if ls is None:
        top = max(2.0, n / 2.0 + 2.0)
        ls = np.arange(2.0, top + 0.25, 0.5)
    return [classify_regime(n, float(l)) for l in ls]


# ==================== ملاءمة الميل ====================

@dataclass(frozen=True)
class LinearFit:
    """ملاءمة خطية: log norm مقابل log t (قانون قوة) أو مقابل t (أسي)."""
    slope: float
    intercept: float
    stderr: float
    r_squared: float
    points: int
    flags: Tuple[str, ...] = ()

    @property
    def degenerate(self) -> bool:
        return 'degenerate' in self.flags


def _validate_series(times, norms) -> Tuple[np.ndarray, np.ndarray]:
    times = np.asarray(times, dtype=float)
    norms = np.asarray(norms, dtype=float)
    if times.shape != norms.shape or times.ndim != 1:
        raise FitError(ErrorCodes.SERIES_INVALID_TIMES, details='times and norms must be 1-D of equal length')
    if times.size and np.any(np.diff(times) <= 0):
        raise FitError(ErrorCodes.SERIES_INVALID_TIMES, details='times must be strictly increasing')
    if np.any(~np.isfinite(norms)) or np.any(norms < 0):
        raise FitError(ErrorCodes.FIT_DEGENERATE, details='norms must be finite and nonnegative')
    return times, norms


def _linear_fit(x: np.ndarray, y: np.ndarray, flags: List[str]) -> LinearFit:
    result = linregress(x, y)
    r_squared = float(result.rvalue) ** 2 if np.isfinite(result.rvalue) else 1.0
    if r_squared < FIT_R2_FLOOR:
        flags.append('plateau')
    return LinearFit(float(result.slope), float(result.intercept), float(result.stderr),
                     r_squared, int(x.size), tuple(flags))


def _degenerate_fit(points: int) -> LinearFit:
    return LinearFit(math.nan, math.nan, math.nan, math.nan, points, ('degenerate',))


def fit_power_law(times, norms) -> LinearFit:
    """
    ملاءمة log norm = slope·log t + c على العقد الأخير (10 نقاط على الأقل).

    Args:
        times: أزمنة متزايدة تماماً
        norms: المعايير

    Returns:
        LinearFit؛ معايير صفرية تعطي slope = NaN مع العلامة 'degenerate'
    """
    times, norms = _validate_series(times, norms)
    if times.size < 3:
        raise FitError(ErrorCodes.FIT_TOO_FEW_POINTS, details=f'need at least 3 points, got {times.size}')
    window = times >= times[-1] / 10.0 * (1.0 - 1e-12)
    if np.count_nonzero(window) < FIT_MIN_POINTS:
        window = np.zeros(times.size, dtype=bool)
        window[-min(FIT_MIN_POINTS, times.size):] = True
    t_fit, n_fit = times[window], norms[window]

    flags: List[str] = []
    if np.any(n_fit == 0.0):
        return _degenerate_fit(int(t_fit.size))
    if t_fit.size < FIT_MIN_POINTS:
        flags.append('short')
    return _linear_fit(np.log(t_fit), np.log(n_fit), flags)


def fit_exponential_rate(times, norms) -> LinearFit:
    """ملاءمة log norm = slope·t + c على كل النقاط (slope < 0 لتخامد أسي)."""
    times, norms = _validate_series(times, norms)
    if times.size < 3:
        raise FitError(ErrorCodes.FIT_TOO_FEW_POINTS, details=f'need at least 3 points, got {times.size}')
    if np.any(norms == 0.0):
        return _degenerate_fit(int(times.size))
    flags: List[str] = []
    if times.size < FIT_MIN_POINTS:
        flags.append('short')
    return _linear_fit(times, np.log(norms), flags)


# ==================== السلاسل الزمنية ====================

@dataclass
class ResidualSeries:
    """
    سلسلة زمنية لمعيار L² مقيّد بمنطقة ترددية.

    profile: اسم المقطع المطروح ('None' لمعيار الحل نفسه)
    """
    times: np.ndarray
    norms: np.ndarray
    errors: np.ndarray
    region: Region
    profile: str
    predicted_exponent: float = math.nan
    fit: Optional[LinearFit] = None
    label: str = ''

    @property
    def fitted_slope(self) -> float:
        return self.fit.slope if self.fit else math.nan

    @property
    def flags(self) -> Tuple[str, ...]:
        return self.fit.flags if self.fit else ()

    def to_rows(self) -> List[Dict[str, object]]:
        """صفوف CSV: (t, norm, region, profile, predicted_exponent, fitted_slope)."""
        return [
            {
                't': float(t),
                'norm': float(norm),
                'region': self.region.label,
                'profile': self.profile,
                'predicted_exponent': self.predicted_exponent,
                'fitted_slope': self.fitted_slope,
            }
            for t, norm in zip(self.times, self.norms)
        ]


def default_time_grid(regime: Regime, t_max: Optional[float] = None) -> np.ndarray:
    """t_k = 10·1.25^k حتى 10³ (موجي/مركّب) أو 10⁴ (حراري)."""
    if t_max is None:
        heat = regime.profile is ProfileKind.HEAT_LIKE
        t_max = T_MAX_HEAT if heat else T_MAX_REGULARITY_LOSS
    return geometric_time_grid(t_max)


def _profile_parts(profile: ProfileSpec) -> Tuple[Profile, Optional[ProfileKind], str]:
    if profile is None:
        return profile_function(None), None, 'None'
    if isinstance(profile, (ProfileKind, str)):
        try:
            kind = ProfileKind(profile)
        except ValueError:
            raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=f'unknown profile {profile!r}')
        return profile_function(kind), kind, kind.value
    if callable(profile):
        return profile, None, getattr(profile, '__name__', 'custom')
    raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=f'unsupported profile {profile!r}')


def _norm_at(pair: DataPair, profile: Profile, kind: Optional[ProfileKind], custom: bool,
             region: Region, t: float, tol: float, rtol: float, max_evals: int) -> QuadratureResult:
    def residual(r):
        u = uhat_solution(t, r, pair.u0(r), pair.u1(r))
        return u - profile(t, r, pair)

    tail = None if custom else residual_tail(pair, kind, t)
    return l2_region_norm(residual, region, pair.dimension, t, tol,
                          rtol=rtol, tail=tail, max_evals=max_evals)


def residual_series(pair: DataPair,
                    profile: ProfileSpec,
                    region: Region,
                    times: Sequence[float],
                    *,
                    predicted_exponent: float = math.nan,
                    tol: float = SERIES_ABS_TOL,
                    rtol: float = SERIES_RTOL,
                    max_evals: int = DEFAULT_MAX_EVALS,
                    workers: int = 1) -> ResidualSeries:
    """
    ‖û(t,·) − profile(t,·)‖ على منطقة لكل زمن، مع ملاءمة الميل.

    Args:
        pair: زوج البيانات
        profile: نوع المقطع، أو None (معيار الحل)، أو دالة (t, r, pair) ↦ قيمة
        region: المنطقة الترددية
        times: أزمنة متزايدة في [1, ∞)
        predicted_exponent: الأس المتوقع (للتقرير)
        tol, rtol: سماحية التكامل (مطلقة ونسبية على المعيار)
        max_evals: ميزانية التقييمات لكل زمن
        workers: عدد الخيوط للأزمنة المستقلة

    Returns:
        ResidualSeries

    Raises:
        NonConvergentError: عند استنفاد ميزانية التكامل
    """
    times = np.asarray(times, dtype=float)
    if times.size == 0 or np.any(times < 1.0) or np.any(np.diff(times) <= 0):
        raise FitError(ErrorCodes.SERIES_INVALID_TIMES,
                       details='times must be strictly increasing and >= 1')
    profile_fn, kind, profile_label = _profile_parts(profile)
    custom = kind is None and profile is not None
    label = f'{region.label}/{profile_label}'

    def sample(t: float) -> QuadratureResult:
        result = _norm_at(pair, profile_fn, kind, custom, region, float(t), tol, rtol, max_evals)
        get_logger().series_point(label, float(t), result.value, result.est_error)
        return result

    results = OrderedWorkerPool(workers, label='series').map(sample, list(times))
    norms = np.array([res.value for res in results])
    errors = np.array([res.est_error for res in results])
    fit = fit_power_law(times, norms) if times.size >= 3 else None
    return ResidualSeries(times=times, norms=norms, errors=errors, region=region,
                          profile=profile_label, predicted_exponent=predicted_exponent,
                          fit=fit, label=label)


def solution_norm_series(pair: DataPair, region: Region, times: Sequence[float],
                         **kwargs) -> ResidualSeries:
    """‖û(t,·)‖ على منطقة: residual_series مع المقطع الصفري."""
    return residual_series(pair, None, region, times, **kwargs)


def lemma41_series(pair: DataPair, times: Sequence[float], **kwargs) -> ResidualSeries:
    """الفرق مع المقطع الموجي في منطقة الترددات العالية، متوقع ≤ −(l+3)/2."""
    kwargs.setdefault('predicted_exponent', -(pair.regularity + 3.0) / 2.0)
    return residual_series(pair, ProfileKind.WAVE_LIKE, Region.high(), times, **kwargs)


def lemma42_series(pair: DataPair, times: Sequence[float], **kwargs) -> ResidualSeries:
    """الفرق مع المقطع الحراري في منطقة الترددات المنخفضة، متوقع ≤ −(n+2)/4."""
    kwargs.setdefault('predicted_exponent', -(pair.dimension + 2.0) / 4.0)
    return residual_series(pair, ProfileKind.HEAT_LIKE, Region.low(), times, **kwargs)


# ==================== معدل المنطقة الوسطى ====================

MID_RATE_CHECK_NAME = 'mid-region rate eta (squared norm)'


@dataclass(frozen=True)
class MidRate:
    """η معدل تخامد مربع المعيار: ‖û‖²_Mid ≈ C e^{−ηt}."""
    eta: float
    fit: LinearFit
    times: np.ndarray
    norms: np.ndarray

    @property
    def relative_stderr(self) -> float:
        if not self.fit.slope:
            return math.inf
        return abs(self.fit.stderr / self.fit.slope)


def default_mid_times() -> np.ndarray:
    return np.linspace(MID_RATE_T_START, MID_RATE_T_STOP, MID_RATE_POINTS)


def mid_region_rate(pair: DataPair, times: Optional[Sequence[float]] = None, *,
                    tol: float = SERIES_ABS_TOL, rtol: float = SERIES_RTOL,
                    max_evals: int = DEFAULT_MAX_EVALS, workers: int = 1) -> MidRate:
    """
    معدل التخامد الأسي لمعيار û على المنطقة الوسطى δ < r < 1.

    Args:
        pair: زوج البيانات
        times: أزمنة في [1, 200] (الافتراضي 37 نقطة على [20, 200])

    Returns:
        MidRate مع η = −2·slope

    Raises:
        FitError: إذا انغمرت المعايير قبل FIT_MIN_POINTS نقطة
    """
    times = default_mid_times() if times is None else np.asarray(times, dtype=float)
    if times.size and (times[0] < 1.0 or times[-1] > MID_RATE_T_STOP):
        raise FitError(ErrorCodes.SERIES_INVALID_TIMES,
                       details=f'mid-region times must lie in [1, {MID_RATE_T_STOP:g}]')
    series = residual_series(pair, None, Region.mid(), times, tol=tol, rtol=rtol,
                             max_evals=max_evals, workers=workers)
    positive = series.norms > 0.0
    usable = int(np.argmin(positive)) if not np.all(positive) else positive.size
    if usable < FIT_MIN_POINTS:
        raise FitError(ErrorCodes.SERIES_UNDERFLOW,
                       details=f'only {usable} nonzero mid-region norms before underflow')
    fit = fit_exponential_rate(series.times[:usable], series.norms[:usable])
    eta = -2.0 * fit.slope
    log_debug(f'[DecayLab] mid-region squared-norm rate eta={eta:.6f} (-2 x slope of log norm)',
              f'stderr={fit.stderr:.2e}, R2={fit.r_squared:.5f}')
    return MidRate(eta=eta, fit=fit, times=series.times[:usable], norms=series.norms[:usable])


# ==================== فحوص الأنظمة ====================

@dataclass(frozen=True)
class SlopeCheck:
    """فحص ميل واحد مقابل الأس المتوقع."""
    name: str
    predicted: float
    measured: float
    tolerance: float
    two_sided: bool
    passed: bool
    flags: Tuple[str, ...] = ()

    @classmethod
    def compare(cls, name: str, predicted: float, measured: float,
                tolerance: float, two_sided: bool, flags: Tuple[str, ...] = ()) -> 'SlopeCheck':
        if not math.isfinite(measured):
            passed = False
        elif two_sided:
            passed = abs(measured - predicted) <= tolerance
        else:
            passed = measured <= predicted + tolerance
        get_logger().slope_check(name, predicted, measured, tolerance, passed)
        return cls(name, predicted, measured, tolerance, two_sided, passed, flags)

    def to_dict(self) -> Dict[str, object]:
        return {
            'check': self.name,
            'predicted': self.predicted,
            'measured': self.measured,
            'tolerance': self.tolerance,
            'two_sided': self.two_sided,
            'passed': self.passed,
            'flags': ';'.join(self.flags),
        }


@dataclass
class RegimeEvaluation:
    """نتيجة تشغيل سيناريو: النظام والسلاسل والفحوص."""
    regime: Regime
    series: List[ResidualSeries] = field(default_factory=list)
    checks: List[SlopeCheck] = field(default_factory=list)
    mid_rate: Optional[MidRate] = None

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(check.passed for check in self.checks)

    @property
    def failed_checks(self) -> List[SlopeCheck]:
        return [check for check in self.checks if not check.passed]


def solution_tolerance(regime: Regime) -> float:
    return HEAT_SLOPE_TOLERANCE if regime.profile is ProfileKind.HEAT_LIKE else SLOPE_TOLERANCE


def evaluate_regime(pair: DataPair,
                    regime: Optional[Regime] = None,
                    *,
                    region: Optional[Region] = None,
                    times: Optional[Sequence[float]] = None,
                    t_max: Optional[float] = None,
                    tol: float = SERIES_ABS_TOL,
                    rtol: float = SERIES_RTOL,
                    max_evals: int = DEFAULT_MAX_EVALS,
                    workers: int = 1,
                    include_mid_rate: bool = True) -> RegimeEvaluation:
    """
    تشغيل فحوص النظام: ميل الفرق مع المقطع (أحادي الجانب)، ميل معيار الحل
    (ثنائي الجانب)، ومعدل المنطقة الوسطى.

    Args:
        pair: زوج البيانات (بانتظام pair.regularity)
        regime: النظام (الافتراضي classify_regime(n, l))
        region: منطقة فحص الفرق (الافتراضي Full)
        times: الأزمنة (الافتراضي default_time_grid)
        t_max: نهاية الشبكة الافتراضية

    Returns:
        RegimeEvaluation

    Raises:
        ConfigError: إذا لم تغطِّ أي مبرهنة (n, l)
    """
    regime = regime or classify_regime(pair.dimension, pair.regularity)
    if not regime.valid:
        raise ConfigError(ErrorCodes.CONFIG_UNCOVERED_REGIME,
                          details=f'n={regime.n}, l={regime.l:g}: {regime.reason}')
    pair.validate_for(regime.l)
    region = region or Region.full()
    times = default_time_grid(regime, t_max) if times is None else np.asarray(times, dtype=float)
    options = dict(tol=tol, rtol=rtol, max_evals=max_evals, workers=workers)
    evaluation = RegimeEvaluation(regime=regime)
    log_info(f'[DecayLab] n={regime.n} l={regime.l:g}: {regime.theorem.value}, profile {regime.profile.value}',
             f'{pair.label}, {times.size} times up to {times[-1]:g}')

    residual = residual_series(pair, regime.profile, region, times,
                               predicted_exponent=regime.residual_exponent, **options)
    evaluation.series.append(residual)
    evaluation.checks.append(SlopeCheck.compare(
        f'residual {region.label} vs {regime.profile.value}', regime.residual_exponent,
        residual.fitted_slope, SLOPE_TOLERANCE, two_sided=False, flags=residual.flags))

    solution = solution_norm_series(pair, Region.full(), times,
                                    predicted_exponent=regime.solution_exponent, **options)
    evaluation.series.append(solution)
    evaluation.checks.append(SlopeCheck.compare(
        'solution Full', regime.solution_exponent, solution.fitted_slope,
        solution_tolerance(regime), two_sided=True, flags=solution.flags))

    if include_mid_rate:
        rate = mid_region_rate(pair, tol=tol, rtol=rtol, max_evals=max_evals, workers=workers)
        evaluation.mid_rate = rate
        rate_passed = rate.eta > 0 and rate.relative_stderr < MID_RATE_MAX_REL_STDERR
        check = SlopeCheck(MID_RATE_CHECK_NAME, 0.0, rate.eta, MID_RATE_MAX_REL_STDERR,
                           two_sided=False, passed=rate_passed, flags=rate.fit.flags)
        get_logger().slope_check(check.name, 0.0, rate.eta, MID_RATE_MAX_REL_STDERR, rate_passed)
        evaluation.checks.append(check)
    return evaluation


def mid_rate_meets_floor(rate: MidRate, floor: float = MID_RATE_FLOOR) -> bool:
    return rate.eta >= floor and rate.relative_stderr < MID_RATE_MAX_REL_STDERR
