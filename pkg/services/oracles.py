"""
وحدة الفحوص المرجعية - Oracle Checks Module

Independent brute-force checks of the closed form and of the elementary
inequalities the decay estimates rest on:

- per-frequency fourth-order Runge–Kutta integration of the mode equation,
  sharing no code path with the closed-form kernels;
- sup_{x≥1} e^{−t/x}/x^l ≤ C(1+t)^{−l};
- the structure constants L = sup|1−cos θ|/|θ| and M = sup|sin θ|/|θ| together
  with the bound |û(r) − P| ≤ K·r on the cataloged data;
- sup_{x>0}|sin(tx)/x| = t and sinh(tx)/x ≤ C·t·e^{tx};
- the low-frequency structure e^{λ₁t} = exp(−t r² g(r²)) and |f(r)| ≤ C r².

Each check produces a report whose rows are (lemma, parameter, bound,
measured, passed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from core.base_report import BaseReport
from core.constants import (
    LEMMA47_GRID,
    LEMMA_T_GRID_STOP,
    ODE_BASE_STEP,
    ODE_HALVING_TOL,
    ODE_REL_TOL,
    ODE_STEP_SCALE,
    ODE_T_END,
    SINC_REL_TOL,
)
from core.logger import ConfigError, DataError, ErrorCodes, OracleError, log_debug, log_info
from core.symbol_core import (
    characteristic_roots,
    delta_cutoff,
    uhat_solution,
    uhat_time_derivative,
    zeta_root,
)
from core.threads import OrderedWorkerPool
from services.initial_data import DataSpec, ab_decomposition, gaussian_datum, sobolev_edge_datum


# ==================== تكامل المعادلة لكل تردد ====================

@dataclass(frozen=True)
class OdeTrace:
    """مسار û و û_t عند تردد واحد."""
    times: np.ndarray
    values: np.ndarray
    derivs: np.ndarray
    step: float
    halving_delta: float = math.nan


def default_step(r: float) -> float:
    """Step min(1e−3, 2.5e−3/max(1, r)): about 400 steps per oscillation period."""
    return min(ODE_BASE_STEP, ODE_STEP_SCALE / max(1.0, r))


def _rk4_run(r: float, u0hat: complex, u1hat: complex, t_end: float,
             steps: int, record: bool) -> Tuple[List[complex], List[complex]]:
    """
    RK4 الكلاسيكي للنظام (y, v)' = (v, −v/α − r²y).

    العائد:
        (قيم y، قيم v) لكل خطوة عند record، وإلا القيمة النهائية فقط
    """
    alpha = 1.0 + r * r
    inv_alpha = 1.0 / alpha
    k_stiff = r * r
    h = t_end / steps if steps else 0.0
    half = 0.5 * h
    y, v = complex(u0hat), complex(u1hat)
    ys, vs = [y], [v]
    for _ in range(steps):
        k1y, k1v = v, -v * inv_alpha - k_stiff * y
        y2, v2 = y + half * k1y, v + half * k1v
        k2y, k2v = v2, -v2 * inv_alpha - k_stiff * y2
        y3, v3 = y + half * k2y, v + half * k2v
        k3y, k3v = v3, -v3 * inv_alpha - k_stiff * y3
        y4, v4 = y + h * k3y, v + h * k3v
        k4y, k4v = v4, -v4 * inv_alpha - k_stiff * y4
        y = y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        v = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if record:
            ys.append(y)
            vs.append(v)
    if not record:
        return [y], [v]
    return ys, vs


def integrate_mode(r: float, u0hat: complex, u1hat: complex,
                   t_end: float = ODE_T_END, step: Optional[float] = None) -> OdeTrace:
    """
    تكامل (1+r²)û_tt + û_t + r²(1+r²)û = 0 بخطوة ثابتة مع فحص التنصيف.

    المعاملات:
        r: نصف القطر الترددي (r ≥ 0)
        u0hat: û(0)
        u1hat: û_t(0)
        t_end: نهاية التكامل (≥ 0)
        step: الخطوة (الافتراضي default_step(r))؛ تُعدَّل لتصيب t_end تماماً

    العائد:
        OdeTrace مع الفرق عند النهاية بين الخطوة ونصفها
    """
    if not math.isfinite(r) or r < 0:
        raise DataError(ErrorCodes.DATA_INVALID_PARAMETER, details=f'radius must be >= 0, got {r}')
    if not t_end >= 0:
        raise DataError(ErrorCodes.DATA_INVALID_TIME, details=f't_end must be >= 0, got {t_end}')
    step = default_step(r) if step is None else float(step)
    if not step > 0:
        raise OracleError(ErrorCodes.ORACLE_INVALID_STEP, details=f'step must be positive, got {step}')

    steps = int(math.ceil(t_end / step - 1e-12)) if t_end > 0 else 0
    ys, vs = _rk4_run(r, u0hat, u1hat, t_end, steps, record=True)
    times = np.linspace(0.0, t_end, steps + 1)
    actual_step = t_end / steps if steps else step

    halving_delta = 0.0
    if steps:
        fine_y, _ = _rk4_run(r, u0hat, u1hat, t_end, 2 * steps, record=False)
        scale = abs(u0hat) + abs(u1hat)
        halving_delta = abs(fine_y[-1] - ys[-1]) / scale if scale > 0 else abs(fine_y[-1] - ys[-1])

    return OdeTrace(times=times, values=np.array(ys), derivs=np.array(vs),
                    step=actual_step, halving_delta=halving_delta)


# ==================== التقارير ====================

class OdeAgreementReport(BaseReport):
    """مطابقة الصيغة المغلقة مع التكامل العددي."""

    lemma = 'closed-form'

    def __init__(self, t_end: float):
        super().__init__()
        self.t_end = t_end
        self.max_relative_error = 0.0
        self.max_halving_delta = 0.0

    def to_dict(self) -> dict:
        data = self._base_to_dict()
        data.update({
            't_end': self.t_end,
            'max_relative_error': self.max_relative_error,
            'max_halving_delta': self.max_halving_delta,
        })
        return data


class Lemma44Report(BaseReport):
    """sup_{x≥1} e^{−t/x}/x^l ≤ C(1+t)^{−l}."""

    lemma = '4.4'

    def __init__(self, l: float):
        super().__init__()
        self.l = l
        self.bound_constant = lemma44_constant(l)
        self.measured_constant = 0.0
        self.sups: List[Tuple[float, float]] = []

    def to_dict(self) -> dict:
        data = self._base_to_dict()
        data.update({
            'l': self.l,
            'bound_constant': self.bound_constant,
            'measured_constant': self.measured_constant,
            'sups': list(self.sups),
        })
        return data


class Lemma45Report(BaseReport):
    """الثابتان L و M وحد |A(r)| ≤ K·r على البيانات."""

    lemma = '4.5'

    def __init__(self):
        super().__init__()
        self.l_constant = math.nan
        self.m_constant = math.nan

    def to_dict(self) -> dict:
        data = self._base_to_dict()
        data.update({'L': self.l_constant, 'M': self.m_constant})
        return data


class SincReport(BaseReport):
    """sup|sin(tx)/x| = t و sinh(tx)/x ≤ C·t·e^{tx}."""

    lemma = '4.6'

    def __init__(self):
        super().__init__()
        self.sinh_constant = 0.0

    def to_dict(self) -> dict:
        data = self._base_to_dict()
        data.update({'sinh_constant': self.sinh_constant})
        return data


class LowFrequencyReport(BaseReport):
    """بنية الجذر λ₁ والدالتين f و g على [0, δ]."""

    lemma = 'lowfreq'

    def __init__(self):
        super().__init__()
        self.g_min = math.nan
        self.g_slope_max = math.nan
        self.g_slope_bound = math.nan
        self.identity_error = math.nan
        self.f_constant = math.nan
        self.f_constant_alt = math.nan
        self.f_bound = math.nan
        self.f_bound_alt = math.nan
        self.f_reading_gap = math.nan

    def to_dict(self) -> dict:
        data = self._base_to_dict()
        data.update({
            'g_min': self.g_min,
            'g_slope_max': self.g_slope_max,
            'g_slope_bound': self.g_slope_bound,
            'identity_error': self.identity_error,
            'f_constant': self.f_constant,
            'f_constant_alt': self.f_constant_alt,
            'f_bound': self.f_bound,
            'f_bound_alt': self.f_bound_alt,
            'f_reading_gap': self.f_reading_gap,
        })
        return data


# ==================== مطابقة الصيغة المغلقة ====================

def default_oracle_radii() -> Tuple[float, ...]:
    zeta = zeta_root()
    return (0.0, 0.1, delta_cutoff(), 0.42, zeta - 1e-4, zeta, zeta + 1e-4, 0.6, 1.0, 3.0, 10.0)


def default_oracle_data(n: int = 3) -> Tuple[Tuple[DataSpec, DataSpec], ...]:
    """(u₀, u₁): غاوسي، وبيانات حافة بانتظام محدود."""
    gaussian = gaussian_datum(1.0, n)
    return ((gaussian, gaussian),
            (sobolev_edge_datum(n / 2.0 + 3.25, n), sobolev_edge_datum(n / 2.0 + 2.25, n)))


def _agreement(r: float, u0: complex, u1: complex, t_end: float) -> Tuple[float, float]:
    trace = integrate_mode(r, u0, u1, t_end)
    closed = uhat_solution(trace.times, r, u0, u1)
    closed_dot = uhat_time_derivative(trace.times, r, u0, u1)
    scale = np.sqrt(np.abs(closed) ** 2 + np.abs(closed_dot) ** 2)
    scale = np.maximum(scale, np.finfo(float).tiny)
    rel = np.abs(trace.values - closed) / scale
    return float(np.max(rel)), trace.halving_delta


def closed_form_agreement(radii: Optional[Sequence[float]] = None,
                          pairs: Optional[Iterable[Tuple[DataSpec, DataSpec]]] = None,
                          t_end: float = ODE_T_END,
                          workers: int = 1) -> OdeAgreementReport:
    """
    مقارنة û من الصيغة المغلقة مع مسار RK4 على شبكة الترددات.

    المعاملات:
        radii: أنصاف الأقطار (الافتراضي: 11 نقطة تشمل ζ ± 1e−4)
        pairs: أزواج (u₀, u₁) تُقيَّم عند كل نصف قطر
        t_end: نهاية الزمن
        workers: عدد الخيوط

    العائد:
        OdeAgreementReport (صف لكل زوج ونصف قطر، وصف لفرق التنصيف)
    """
    radii = tuple(default_oracle_radii() if radii is None else radii)
    pairs = tuple(default_oracle_data() if pairs is None else pairs)
    report = OdeAgreementReport(t_end)

    tasks = []
    for d0, d1 in pairs:
        for r in radii:
            tasks.append((f'{d0.label}|{d1.label}', r, float(d0(r)), float(d1(r))))

    pool = OrderedWorkerPool(workers, label='ode-oracle')
    results = pool.map(lambda task: _agreement(task[1], task[2], task[3], t_end), tasks)

    for (label, r, _, _), (rel_error, halving) in zip(tasks, results):
        report.record(f'{label} r={r:.10g}', ODE_REL_TOL, rel_error)
        report.record(f'{label} r={r:.10g} halving', ODE_HALVING_TOL, halving)
        report.max_relative_error = max(report.max_relative_error, rel_error)
        report.max_halving_delta = max(report.max_halving_delta, halving)

    log_info(f'[Oracle] closed form vs RK4: max rel error {report.max_relative_error:.2e}',
             f'{len(tasks)} modes, t_end={t_end:g}')
    return report


# ==================== المتباينات ====================

def lemma44_constant(l: float) -> float:
    """
    أصغر C مع sup_{x≥1} e^{−t/x}/x^l ≤ C(1+t)^{−l} لكل t ≥ 0: e·(l/e)^l، و 1 عند l = 0.
    """
    if l < 0:
        raise DataError(ErrorCodes.DATA_INVALID_PARAMETER, details=f'l must be >= 0, got {l}')
    if l == 0:
        return 1.0
    return math.e * (l / math.e) ** l


def lemma44_sup(l: float, t: float) -> float:
    """Closed-form sup over x ≥ 1 of e^{−t/x}/x^l (maximizer max(t/l, 1))."""
    if l == 0:
        return 1.0
    x_star = max(t / l, 1.0)
    return math.exp(-t / x_star) / x_star ** l


def _lemma44_numeric_sup(l: float, t: float) -> float:
    if l == 0:
        # sup يُبلغ عند x → ∞
        return 1.0
    log_hi = math.log(max(10.0 * t / l, 10.0))

    def negative(log_x):
        x = math.exp(log_x)
        return -math.exp(-t / x - l * log_x)

    refined = minimize_scalar(negative, bounds=(0.0, log_hi), method='bounded',
                              options={'xatol': 1e-12})
    endpoint = math.exp(-t)
    return max(-float(refined.fun), endpoint)


def default_lemma_t_grid() -> np.ndarray:
    return np.concatenate([[0.0], np.logspace(-3.0, math.log10(LEMMA_T_GRID_STOP), 141)])


def lemma44_check(l: float, t_grid: Optional[Sequence[float]] = None) -> Lemma44Report:
    """
    فحص sup_{x≥1} e^{−t/x}/x^l على شبكة زمنية.

    المعاملات:
        l: الأس (l ≥ 0)
        t_grid: الأزمنة (الافتراضي [0, 10⁴])

    العائد:
        Lemma44Report: صف لمطابقة sup العددي مع الصيغة، وصف للثابت sup·(1+t)^l
    """
    report = Lemma44Report(l)
    grid = default_lemma_t_grid() if t_grid is None else np.asarray(t_grid, dtype=float)
    for t in grid:
        t = float(t)
        exact = lemma44_sup(l, t)
        numeric = _lemma44_numeric_sup(l, t)
        report.record(f'sup t={t:g}', exact, numeric,
                      passed=abs(numeric - exact) <= 1e-9 * max(exact, 1e-300))
        constant = exact * (1.0 + t) ** l
        report.record(f'C t={t:g}', report.bound_constant * (1.0 + 1e-12), constant)
        report.measured_constant = max(report.measured_constant, constant)
        report.sups.append((t, exact))
    log_debug(f'[Oracle] 4.4 l={l:g}: C measured {report.measured_constant:.6g}',
              f'bound {report.bound_constant:.6g}')
    return report


def lemma46_47_check(t_grid: Optional[Sequence[float]] = None) -> SincReport:
    """
    sup_{x>0}|sin(tx)/x| = t (بسماحية نسبية 1e−3)، و sinh(tx)/x ≤ 1·t·e^{tx} على [1e−6, 10]².
    """
    report = SincReport()
    grid = np.array([0.1, 1.0, 5.0, 10.0, 100.0]) if t_grid is None else np.asarray(t_grid, dtype=float)
    for t in grid:
        t = float(t)
        if not t > 0:
            raise DataError(ErrorCodes.DATA_INVALID_TIME, details=f'sinc check needs t > 0, got {t}')
        # y = t·x: |sin(tx)/x| = t·|sinc(y)|
        y = np.concatenate([np.logspace(-12.0, 0.0, 2001), np.linspace(1.0, 50.0, 20001)])
        values = t * np.abs(np.sin(y) / y)
        sup = float(values.max())
        passed = abs(sup - t) <= SINC_REL_TOL * t and bool(np.all(values <= t * (1.0 + 1e-12)))
        report.record(f't={t:g}', t, sup, passed=passed, lemma='4.6')

    lo, hi = LEMMA47_GRID
    axis = np.logspace(math.log10(lo), math.log10(hi), 121)
    x, tt = np.meshgrid(axis, axis, indexing='ij')
    y = tt * x
    # sinh(y)/x / (t e^{y}) = (1 − e^{−2y})/(2y)
    ratio = -np.expm1(-2.0 * y) / (2.0 * y)
    for j, t in enumerate(axis[::12]):
        column = ratio[:, j * 12]
        report.record(f'sinh t={t:.3g}', 1.0 + 1e-12, float(column.max()), lemma='4.7')
    report.sinh_constant = float(ratio.max())
    return report


def lemma45_constants(data: Optional[Iterable[DataSpec]] = None) -> Lemma45Report:
    """
    L = sup|1−cos θ|/|θ| و M = sup|sin θ|/|θ|، وفحص |A(r)| ≤ K·r لكل معطى.

    المعاملات:
        data: المعطيات المفحوصة (الافتراضي: غاوسي وحافة في n = 3)

    العائد:
        Lemma45Report
    """
    report = Lemma45Report()
    theta = np.linspace(1e-9, 4.0 * math.pi, 200001)
    l_values = (1.0 - np.cos(theta)) / theta
    peak = int(np.argmax(l_values))
    refined = minimize_scalar(lambda th: -(1.0 - math.cos(th)) / th,
                              bounds=(theta[max(peak - 1, 0)], theta[peak + 1]), method='bounded',
                              options={'xatol': 1e-12})
    report.l_constant = max(float(l_values[peak]), -float(refined.fun))
    report.m_constant = float(np.max(np.abs(np.sin(theta) / theta)))
    report.record('L', 1.0, report.l_constant)
    report.record('M', 1.0, report.m_constant, passed=abs(report.m_constant - 1.0) <= 1e-12)

    if data is None:
        data = [d for pair in default_oracle_data() for d in pair]
    seen = set()
    r = np.linspace(0.0, 100.0, 10001)[1:]
    for d in data:
        if d.label in seen:
            continue
        seen.add(d.label)
        a_part, _ = ab_decomposition(d, r)
        measured = float(np.max(np.abs(a_part) / r))
        bound = d.l11_surrogate * (1.0 + 1e-6)
        report.record(f'{d.label} |A|/r', bound, measured)
    return report


def _g_structure(beta: np.ndarray) -> np.ndarray:
    return 2.0 * (1.0 + beta) / (1.0 + np.sqrt(1.0 - 4.0 * beta * (1.0 + beta) ** 2))



def _g_slope(beta: float) -> float:
    """g'(β) = 2/(1+s) + 4(1+β)²(1+3β)/(s(1+s)²) مع s = √(1−4β(1+β)²)؛ متزايدة على [0, δ²]."""
    s = math.sqrt(1.0 - 4.0 * beta * (1.0 + beta) ** 2)
    return 2.0 / (1.0 + s) + 4.0 * (1.0 + beta) ** 2 * (1.0 + 3.0 * beta) / (s * (1.0 + s) ** 2)


def _f_ratio_bound(r: float, weight: float) -> float:
    """f(r)/r² = 4w/(√(1−X)(1+√(1−X))) مع X = 4r²w؛ متزايدة في r فالقيمة عند δ حد أعلى."""
    root = math.sqrt(1.0 - 4.0 * r * r * weight)
    return 4.0 * weight / (root * (1.0 + root))


def lowfreq_structure_check(r_grid: Optional[Sequence[float]] = None) -> LowFrequencyReport:
    """
    فحص بنية الترددات المنخفضة على [0, δ].

    - g(β) = 2(1+β)/(1+√(1−4β(1+β)²)) عند β = r²: حد أدنى موجب ومشتقة محدودة
    - λ₁(r) = −r²·g(r²) بدقة 1e−12
    - f(r) = 1/√(1−4r²(1+r²)²) − 1 ≤ C r² (والقراءة البديلة بـ (1+r)² للمقارنة)
    """
    delta = delta_cutoff()
    r = np.linspace(0.0, delta, 401) if r_grid is None else np.asarray(r_grid, dtype=float)
    if np.any(r < 0) or np.any(r > delta * (1.0 + 1e-12)):
        raise DataError(ErrorCodes.DATA_INVALID_PARAMETER, details='low-frequency grid must lie in [0, δ]')
    report = LowFrequencyReport()

    beta = r * r
    g = _g_structure(beta)
    report.g_min = float(g.min())
    report.record('g min', 0.0, report.g_min, passed=report.g_min > 0)
    if r.size >= 3:
        slope = np.gradient(g, beta) if np.all(np.diff(beta) > 0) else np.array([0.0])
        report.g_slope_max = float(np.max(np.abs(slope)))
        report.g_slope_bound = _g_slope(delta * delta)
        # g' increases on [0, δ²]: finite-difference slopes stay below g'(δ²)
        report.record('|dg/dbeta| max', report.g_slope_bound * (1.0 + 1e-6), report.g_slope_max)

    lambda1 = np.array([characteristic_roots(float(x)).lambda1.real for x in r])
    report.identity_error = float(np.max(np.abs(lambda1 + beta * g)))
    report.record('lambda1 + r^2 g(r^2)', 1e-12, report.identity_error)

    positive = r > 0
    rp = r[positive]
    f_main = 1.0 / np.sqrt(1.0 - 4.0 * rp ** 2 * (1.0 + rp ** 2) ** 2) - 1.0
    f_alt = 1.0 / np.sqrt(1.0 - 4.0 * rp ** 2 * (1.0 + rp) ** 2) - 1.0
    report.f_constant = float(np.max(f_main / rp ** 2)) if rp.size else 0.0
    report.f_constant_alt = float(np.max(f_alt / rp ** 2)) if rp.size else 0.0
    report.f_reading_gap = float(np.max(np.abs(f_alt - f_main))) if rp.size else 0.0
    report.f_bound = _f_ratio_bound(delta, (1.0 + delta * delta) ** 2)
    report.f_bound_alt = _f_ratio_bound(delta, (1.0 + delta) ** 2)
    report.record('f/r^2 (1+r^2)^2', report.f_bound * (1.0 + 1e-9), report.f_constant)
    report.record('f/r^2 (1+r)^2', report.f_bound_alt * (1.0 + 1e-9), report.f_constant_alt)
    log_debug(f'[Oracle] low-frequency: g_min={report.g_min:.6f}, identity={report.identity_error:.1e}',
              f'f readings differ by {report.f_reading_gap:.3e}')
    return report


# ==================== المجموعة الكاملة ====================

ORACLE_CHOICES = ('4.4', '4.5', '4.6', '4.7', 'lowfreq', 'ode')


def run_oracle_suite(lemma: Optional[str] = None, l: float = 2.0,
                     t_values: Optional[Sequence[float]] = None,
                     workers: int = 1) -> List[BaseReport]:
    """
    تشغيل الفحوص المرجعية (كلها أو واحد منها).

    المعاملات:
        lemma: معرّف الفحص من ORACLE_CHOICES (None: الكل)
        l: الأس لفحص sup e^{−t/x}/x^l
        t_values: أزمنة صريحة لفحوص المتباينات
        workers: عدد الخيوط لمطابقة الصيغة المغلقة

    العائد:
        قائمة التقارير
    """
    if lemma is not None and lemma not in ORACLE_CHOICES:
        raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE,
                          details=f'unknown oracle {lemma!r}; choose from {", ".join(ORACLE_CHOICES)}')
    wanted = ORACLE_CHOICES if lemma is None else (lemma,)
    reports: List[BaseReport] = []
    if '4.4' in wanted:
        reports.append(lemma44_check(l, t_values))
    if '4.5' in wanted:
        reports.append(lemma45_constants())
    if '4.6' in wanted or '4.7' in wanted:
        reports.append(lemma46_47_check(t_values))
    if 'lowfreq' in wanted:
        reports.append(lowfreq_structure_check())
    if 'ode' in wanted:
        reports.append(closed_form_agreement(workers=workers))
    return reports
