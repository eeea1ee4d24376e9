"""
وحدة الأدوات المساعدة - Utilities Module

أدوات عددية صغيرة مشتركة بين الخدمات: قياس سطح الكرة، شبكات الزمن،
وتجهيز مسارات ملفات الإخراج.
"""

import math
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

import numpy as np
from scipy.special import gamma

from .constants import TIME_GRID_RATIO, TIME_GRID_START
from .logger import ConfigError, DataError, ErrorCodes


@lru_cache(maxsize=64)
def surface_measure(n: int) -> float:
    """
    مساحة سطح كرة الوحدة في ℝⁿ: ω_{n−1} = 2π^{n/2}/Γ(n/2).

    المعاملات:
        n: البعد (n ≥ 1)

    العائد:
        ω_{n−1} (تساوي 2 عند n = 1)
    """
    if int(n) != n or n < 1:
        raise DataError(ErrorCodes.DATA_INVALID_PARAMETER, details=f'dimension must be a positive integer, got {n}')
    n = int(n)
    return float(2.0 * math.pi ** (n / 2.0) / gamma(n / 2.0))


def geometric_time_grid(t_max: float,
                        t_start: float = TIME_GRID_START,
                        ratio: float = TIME_GRID_RATIO) -> np.ndarray:
    """
    الشبكة الزمنية الهندسية t_k = t_start·ratio^k حتى t_max (شاملة عند التطابق).

    المعاملات:
        t_max: نهاية الشبكة
        t_start: بداية الشبكة
        ratio: النسبة بين نقطتين متتاليتين (> 1)

    العائد:
        مصفوفة أزمنة متزايدة تماماً
    """
    if t_start <= 0 or ratio <= 1 or t_max < t_start:
        raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE,
                          details=f'bad time grid: start={t_start}, ratio={ratio}, t_max={t_max}')
    count = int(math.floor(math.log(t_max / t_start) / math.log(ratio) + 1e-9)) + 1
    return t_start * ratio ** np.arange(count, dtype=float)


def log_spaced_grid(start: float, stop: float, points: int) -> np.ndarray:
    """Log-spaced grid on [start, stop]."""
    return np.logspace(math.log10(start), math.log10(stop), int(points))


def prepare_output_path(path: Optional[Union[str, Path]]) -> Optional[Path]:
    """
    تجهيز مسار ملف الإخراج (إنشاء المجلد الأب عند الحاجة).

    المعاملات:
        path: المسار أو None (الإخراج القياسي)

    العائد:
        Path مطلق أو None
    """
    if path is None or str(path) in ('', '-'):
        return None
    try:
        resolved = Path(path).expanduser().resolve()
        resolved.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=f'cannot write to {path}: {e}')
    return resolved
