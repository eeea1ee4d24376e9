"""
وحدة التكامل الشعاعي - Radial Quadrature Module

Region-restricted L² norms of radial functions of frequency:

    ‖f‖_region = ( ∫_region |f(r)|² ω_{n−1} r^{n−1} dr )^{1/2}.

Composite Gauss–Legendre of order 10 with bisection refinement, mandatory
panel breaks at δ, ζ and 1, and a panel-width cap π/(2·max(t, 1)) so that
integrands oscillating like sin(t r) are sampled on every quarter period.
Unbounded regions are integrated in doubling blocks until a certified tail
bound (TailBound) drops below the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.optimize import brentq
from scipy.special import erfc, gamma, gammaincc

from core.constants import (
    DEFAULT_MAX_EVALS,
    DEFAULT_PANEL_WIDTH,
    DEFAULT_TOL,
    EVAL_CHUNK_NODES,
    EXTENSION_GROWTH_STREAK,
    EXTENSION_MAX_DOUBLINGS,
    EXTENSION_MIN_RADIUS,
    GAUSS_LEGENDRE_ORDER,
    MAX_REFINEMENT_ROUNDS,
    PANEL_GROWTH,
)
from core.logger import (
    ErrorCodes,
    NoTailBoundError,
    NonConvergentError,
    NonIntegrableError,
    QuadratureError,
    get_logger,
    log_debug,
)
from core.symbol_core import delta_cutoff, zeta_root
from core.utils import surface_measure

RadialFunction = Callable[[np.ndarray], np.ndarray]

_NODES, _WEIGHTS = leggauss(GAUSS_LEGENDRE_ORDER)
_EVALS_PER_PANEL = 3 * GAUSS_LEGENDRE_ORDER


# ==================== المناطق الترددية ====================

class Zone(str, Enum):
    LOW = 'Low'
    MID = 'Mid'
    HIGH = 'High'
    FULL = 'Full'


@dataclass(frozen=True)
class Region:
    """
    منطقة ترددية [lower, upper].

    upper = None يعني أن الحد الأعلى Ξ_max يُحدَّد من شهادة الذيل.
    """
    zone: Zone
    lower: float
    upper: Optional[float] = None

    def __post_init__(self):
        if self.lower < 0 or (self.upper is not None and self.upper <= self.lower):
            raise QuadratureError(ErrorCodes.QUAD_INVALID_REGION,
                                  details=f'{self.zone.value}: [{self.lower}, {self.upper}]')

    @classmethod
    def low(cls) -> 'Region':
        return cls(Zone.LOW, 0.0, delta_cutoff())

    @classmethod
    def mid(cls) -> 'Region':
        return cls(Zone.MID, delta_cutoff(), 1.0)

    @classmethod
    def high(cls, upper: Optional[float] = None) -> 'Region':
        return cls(Zone.HIGH, 1.0, upper)

    @classmethod
    def full(cls, upper: Optional[float] = None) -> 'Region':
        return cls(Zone.FULL, 0.0, upper)

    @classmethod
    def from_name(cls, name: str) -> 'Region':
        factories = {'low': cls.low, 'mid': cls.mid, 'high': cls.high, 'full': cls.full}
        try:
            return factories[name.strip().lower()]()
        except KeyError:
            raise QuadratureError(ErrorCodes.QUAD_INVALID_REGION, details=f'unknown region {name!r}')

    @property
    def bounded(self) -> bool:
        return self.upper is not None

    @property
    def label(self) -> str:
        return self.zone.value

    def head_segments(self) -> List[Tuple[float, float]]:
        """
        المقاطع المحدودة قبل التمديد، مقسومة عند δ و ζ و 1.
        """
        end = self.upper if self.bounded else max(self.lower, 1.0)
        cuts = [self.lower]
        for point in (delta_cutoff(), zeta_root(), 1.0):
            if self.lower < point < end:
                cuts.append(point)
        cuts.append(end)
        return [(a, b) for a, b in zip(cuts[:-1], cuts[1:]) if b > a]


# ==================== شهادات الذيل ====================

@dataclass(frozen=True)
class TailTerm:
    """|f(r)|² ≤ coefficient · r^{−power} · e^{−gauss·r²}."""
    coefficient: float
    power: float = 0.0
    gauss: float = 0.0

    def integral(self, x: float, n: int) -> float:
        """∫_x^∞ C r^{n−1−p} e^{−b r²} dr (without the sphere factor)."""
        c, p, b = self.coefficient, self.power, self.gauss
        if c == 0.0:
            return 0.0
        if b > 0.0:
            a = (n - p) / 2.0
            if a > 0.0:
                return float(c * gamma(a) * gammaincc(a, b * x * x) / (2.0 * b ** a))
            # r^{n−1−p} ينقص على [x, ∞)
            return float(c * x ** (n - 1 - p) * 0.5 * math.sqrt(math.pi / b) * erfc(math.sqrt(b) * x))
        if p <= n:
            return math.inf
        return float(c * x ** (n - p) / (p - n))


@dataclass(frozen=True)
class TailBound:
    """
    Sum of TailTerm envelopes for |f|², valid for r ≥ start.
    """
    terms: Tuple[TailTerm, ...] = ()
    start: float = 1.0

    @classmethod
    def zero(cls) -> 'TailBound':
        return cls(())

    @property
    def is_zero(self) -> bool:
        return all(term.coefficient == 0.0 for term in self.terms)

    def __add__(self, other: 'TailBound') -> 'TailBound':
        return TailBound(self.terms + other.terms, max(self.start, other.start))

    def scaled(self, factor: float) -> 'TailBound':
        return TailBound(tuple(TailTerm(t.coefficient * factor, t.power, t.gauss) for t in self.terms),
                         self.start)

    def with_power(self, extra: float) -> 'TailBound':
        """Multiply the envelope by r^{−extra}."""
        return TailBound(tuple(TailTerm(t.coefficient, t.power + extra, t.gauss) for t in self.terms),
                         self.start)

    def weighted(self, s: float) -> 'TailBound':
        """
        Envelope of (1+r²)^s·|f|² for r ≥ max(start, 1).

        For s ≥ 0, (1+r²)^s ≤ 2^s r^{2s}; for s < 0, (1+r²)^s ≤ r^{2s}.
        """
        factor = 2.0 ** s if s > 0 else 1.0
        weighted_terms = tuple(TailTerm(t.coefficient * factor, t.power - 2.0 * s, t.gauss)
                               for t in self.terms)
        return TailBound(weighted_terms, max(self.start, 1.0))

    def integral(self, x: float, n: int) -> float:
        """
        ω_{n−1}·∫_x^∞ envelope · r^{n−1} dr (inf when x < start).
        """
        if self.is_zero:
            return 0.0
        if x < self.start:
            return math.inf
        total = math.fsum(term.integral(x, n) for term in self.terms)
        return surface_measure(n) * total


def tail_cutoff(tail: Optional[TailBound], tol: float, n: int, floor: float = 1.0) -> float:
    """
    أصغر Ξ_max ≥ floor بحيث يكون تكامل الحد على [Ξ_max, ∞) أقل من tol²/4.

    المعاملات:
        tail: شهادة الذيل
        tol: السماحية على المعيار
        n: البعد
        floor: أصغر قيمة مقبولة (الحد الأعلى الاسمي للمنطقة)

    العائد:
        Ξ_max
    """
    if tail is None:
        raise NoTailBoundError(details='tail_cutoff needs an algebraic or Gaussian envelope')
    if tol <= 0:
        raise QuadratureError(ErrorCodes.QUAD_INVALID_REGION, details=f'tolerance must be positive, got {tol}')
    floor = max(floor, tail.start)
    if tail.is_zero:
        return floor
    target = tol * tol / 4.0
    at_floor = tail.integral(floor, n)
    if math.isinf(at_floor):
        raise NonIntegrableError(details='tail envelope is not integrable (power <= n)')
    if at_floor < target:
        return floor

    hi = 2.0 * floor
    while tail.integral(hi, n) >= target:
        hi *= 2.0
        if hi > 1e300:
            raise NonIntegrableError(details='tail envelope never drops below tolerance')

    root = brentq(lambda log_x: tail.integral(math.exp(log_x), n) - target,
                  math.log(floor), math.log(hi), xtol=1e-12)
    cutoff = math.exp(root)
    while tail.integral(cutoff, n) >= target:
        cutoff *= 1.0 + 1e-10
    return cutoff


# ==================== نتيجة التكامل ====================

@dataclass(frozen=True)
class QuadratureResult:
    value: float
    est_error: float
    panels_used: int
    evaluations: int = 0
    upper: float = math.nan
    tail_mass: float = 0.0


@dataclass
class _PanelStore:
    """ألواح التكامل وقيمها وتقديرات أخطائها (مرتبة حسب الطرف الأيسر)."""
    integrand: RadialFunction
    n: int
    max_evals: int
    label: str
    evaluations: int = 0
    a: np.ndarray = field(default_factory=lambda: np.empty(0))
    b: np.ndarray = field(default_factory=lambda: np.empty(0))
    values: np.ndarray = field(default_factory=lambda: np.empty(0))
    errors: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        self._omega = surface_measure(self.n)

    # ---------- التقييم ----------

    def _weighted(self, r: np.ndarray) -> np.ndarray:
        raw = np.asarray(self.integrand(r))
        raw = np.broadcast_to(raw, r.shape)
        squared = np.abs(raw) ** 2
        if not np.all(np.isfinite(squared)):
            raise NonIntegrableError(details=f'non-finite integrand on {self.label}')
        return squared * r ** (self.n - 1)

    def _evaluate(self, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        GL10 على كل لوح وعلى نصفيه؛ القيمة من النصفين والخطأ من الفرق.
        """
        needed = _EVALS_PER_PANEL * a.size
        if self.evaluations + needed > self.max_evals:
            get_logger().quadrature_budget(self.evaluations + needed, self.max_evals, self.label)
            raise NonConvergentError(
                details=f'{self.label}: budget of {self.max_evals} evaluations exhausted',
                partial_value=math.sqrt(max(math.fsum(self.values), 0.0)))
        self.evaluations += needed

        values = np.empty(a.size)
        errors = np.empty(a.size)
        per_chunk = max(1, EVAL_CHUNK_NODES // _EVALS_PER_PANEL)
        for start in range(0, a.size, per_chunk):
            aa = a[start:start + per_chunk, None]
            bb = b[start:start + per_chunk, None]
            mid = 0.5 * (aa + bb)
            half = 0.5 * (bb - aa)
            whole = mid + half * _NODES
            left = 0.5 * (aa + mid) + 0.5 * half * _NODES
            right = 0.5 * (mid + bb) + 0.5 * half * _NODES
            nodes = np.concatenate([whole, left, right], axis=1)
            g = self._weighted(nodes.ravel()).reshape(nodes.shape)
            k = GAUSS_LEGENDRE_ORDER
            q_whole = half[:, 0] * (g[:, :k] @ _WEIGHTS)
            q_halves = 0.5 * half[:, 0] * (g[:, k:2 * k] @ _WEIGHTS + g[:, 2 * k:] @ _WEIGHTS)
            values[start:start + per_chunk] = self._omega * q_halves
            errors[start:start + per_chunk] = self._omega * np.abs(q_whole - q_halves)
        return values, errors

    # ---------- إدارة الألواح ----------

    def add_segment(self, lo: float, hi: float, width: float, density: int) -> float:
        """إضافة مقطع مقسوم إلى ألواح متساوية؛ تعيد مساهمة المقطع."""
        count = max(1, int(math.ceil((hi - lo) / width - 1e-9))) * density
        edges = np.linspace(lo, hi, count + 1)
        values, errors = self._evaluate(edges[:-1], edges[1:])
        self.a = np.concatenate([self.a, edges[:-1]])
        self.b = np.concatenate([self.b, edges[1:]])
        self.values = np.concatenate([self.values, values])
        self.errors = np.concatenate([self.errors, errors])
        return math.fsum(values)

    def bisect(self, selected: np.ndarray):
        a, b = self.a[selected], self.b[selected]
        mid = 0.5 * (a + b)
        child_a = np.concatenate([a, mid])
        child_b = np.concatenate([mid, b])
        values, errors = self._evaluate(child_a, child_b)
        keep = ~selected
        all_a = np.concatenate([self.a[keep], child_a])
        order = np.argsort(all_a, kind='stable')
        self.a = all_a[order]
        self.b = np.concatenate([self.b[keep], child_b])[order]
        self.values = np.concatenate([self.values[keep], values])[order]
        self.errors = np.concatenate([self.errors[keep], errors])[order]

    @property
    def integral(self) -> float:
        return math.fsum(self.values)

    @property
    def error(self) -> float:
        return math.fsum(self.errors)


def _panel_width(lo: float, cap: float) -> float:
    return min(max(DEFAULT_PANEL_WIDTH, PANEL_GROWTH * lo), cap)


def _norm_tolerance(integral: float, tol: float, rtol: float) -> float:
    return max(tol, rtol * math.sqrt(max(integral, 0.0)))


def _quadrature_width(integral: float, error: float) -> float:
    """عرض مجال الثقة على المعيار الناتج عن خطأ التكامل."""
    return math.sqrt(max(integral + error, 0.0)) - math.sqrt(max(integral - error, 0.0))


def _extend(store: _PanelStore, start: float, cap: float, density: int,
            tail: Optional[TailBound], tol: float, rtol: float) -> Tuple[float, float]:
    """
    تمديد التكامل بكتل مضاعفة [R, 2R] حتى تثبت شهادة الذيل أو يتوقف النمو.

    العائد:
        (Ξ_max المستخدم، كتلة الذيل المقدّرة)
    """
    radius = start
    increments: List[float] = []
    growth_streak = 0
    for _ in range(EXTENSION_MAX_DOUBLINGS):
        tol_n = _norm_tolerance(store.integral, tol, rtol)
        if tail is not None:
            cutoff = tail_cutoff(tail, tol_n / math.sqrt(1.25), store.n, floor=start)
            if radius >= cutoff:
                return radius, tail.integral(radius, store.n)
        elif radius >= EXTENSION_MIN_RADIUS and increments:
            if increments[-1] <= tol_n * tol_n / 16.0:
                return radius, increments[-1]
            if growth_streak >= EXTENSION_GROWTH_STREAK:
                raise NonIntegrableError(details=f'{store.label}: value grows under cutoff extension')

        increment = store.add_segment(radius, 2.0 * radius, _panel_width(radius, cap), density)
        if increments and increment > 0 and increment >= 0.99 * increments[-1]:
            growth_streak += 1
        else:
            growth_streak = 0
        increments.append(increment)
        radius *= 2.0

    if tail is None:
        raise NonIntegrableError(details=f'{store.label}: no convergence up to r = {radius:.3g}')
    raise NonConvergentError(details=f'{store.label}: tail certificate not reached by r = {radius:.3g}',
                             partial_value=math.sqrt(max(store.integral, 0.0)))


def l2_region_norm(f: RadialFunction,
                   region: Region,
                   n: int,
                   t_hint: float = 0.0,
                   tol: float = DEFAULT_TOL,
                   *,
                   rtol: float = 0.0,
                   tail: Optional[TailBound] = None,
                   max_evals: int = DEFAULT_MAX_EVALS,
                   panel_density: int = 1) -> QuadratureResult:
    """
    المعيار L² لدالة شعاعية على منطقة ترددية.

    المعاملات:
        f: دالة متجهة r ↦ f(r) (حقيقية أو مركبة)
        region: المنطقة
        n: البعد
        t_hint: زمن التذبذب (سقف عرض اللوح π/(2·max(t,1)) عند t > 0)
        tol: السماحية المطلقة على المعيار
        rtol: سماحية نسبية إضافية (الفعالة max(tol, rtol·المعيار))
        tail: شهادة ذيل |f|² للمناطق غير المحدودة
        max_evals: ميزانية تقييمات الدالة
        panel_density: مضاعف عدد الألواح الابتدائي

    التنقيح: في كل جولة يُنصَّف كل لوح يتجاوز خطؤه المقدَّر target/عدد الألواح
    (لا اللوح الأكبر خطأً وحده)؛ إن لم يتجاوز أي لوح هذا الحد يُنصَّف اللوح
    صاحب أكبر خطأ فقط. Every panel whose error estimate exceeds an equal share
    of the target is bisected each round, so several panels may split at once.

    العائد:
        QuadratureResult

    الأخطاء:
        NonConvergentError عند استنفاد الميزانية
        NonIntegrableError عند نمو القيمة بلا حد مع تمديد القطع
    """
    if tol <= 0 or rtol < 0:
        raise QuadratureError(ErrorCodes.QUAD_INVALID_REGION, details=f'bad tolerances tol={tol}, rtol={rtol}')
    # t_hint = 0: integrand without oscillation, no width cap
    cap = math.pi / (2.0 * max(t_hint, 1.0)) if t_hint > 0 else math.inf
    density = max(1, int(panel_density))
    store = _PanelStore(f, int(n), int(max_evals), region.label)

    for lo, hi in region.head_segments():
        store.add_segment(lo, hi, _panel_width(lo, cap), density)

    upper, tail_mass = (region.upper, 0.0)
    if not region.bounded:
        upper, tail_mass = _extend(store, max(region.lower, 1.0), cap, density, tail, tol, rtol)

    for _ in range(MAX_REFINEMENT_ROUNDS):
        integral, error = store.integral, store.error
        tol_n = _norm_tolerance(integral, tol, rtol)
        if _quadrature_width(integral, error) <= tol_n / 2.0:
            break
        norm = math.sqrt(max(integral, 0.0))
        target = max(norm * tol_n / 2.0, tol_n * tol_n / 8.0)
        selected = store.errors > target / store.errors.size
        if not np.any(selected):
            selected = store.errors == store.errors.max()
        store.bisect(selected)
    else:
        raise NonConvergentError(details=f'{region.label}: refinement rounds exhausted',
                                 partial_value=math.sqrt(max(store.integral, 0.0)))

    integral = max(store.integral, 0.0)
    value = math.sqrt(integral)
    tail_part = math.sqrt(integral + tail_mass) - value if tail_mass > 0 else 0.0
    est_error = _quadrature_width(integral, store.error) + tail_part
    log_debug(f'[Quadrature] {region.label} n={n} t={t_hint:.4g}: {value:.6e}',
              f'err={est_error:.1e}, panels={store.a.size}, evals={store.evaluations}')
    return QuadratureResult(value=value, est_error=est_error, panels_used=int(store.a.size),
                            evaluations=store.evaluations, upper=float(upper), tail_mass=tail_mass)
