"""
كتابة التقارير - CSV Report Writer

كل الجداول تمر عبر pandas بتنسيق أرقام ثابت، فتكون المخرجات متطابقة
بايتياً بين التشغيلات وبين أعداد الخيوط المختلفة.
"""

import sys
from typing import Iterable, List, Optional, Sequence, TextIO

import pandas as pd

from controllers.decay_lab import Regime, RegimeEvaluation, threshold_regularity
from core.base_report import BaseReport
from core.utils import prepare_output_path

SERIES_COLUMNS = ['t', 'norm', 'region', 'profile', 'predicted_exponent', 'fitted_slope']
ORACLE_COLUMNS = ['lemma', 'parameter', 'bound', 'measured', 'passed']
CHECK_COLUMNS = ['check', 'predicted', 'measured', 'tolerance', 'two_sided', 'passed', 'flags']
FLOAT_FORMAT = '%.12g'


def write_frame(frame: pd.DataFrame, out: Optional[str], stream: Optional[TextIO] = None) -> Optional[str]:
    """
    كتابة جدول CSV إلى ملف أو إلى الإخراج القياسي.

    المعاملات:
        frame: الجدول
        out: المسار (None أو '-' للإخراج القياسي)
        stream: تيار بديل للإخراج القياسي

    العائد:
        المسار المكتوب أو None
    """
    path = prepare_output_path(out)
    if path is None:
        frame.to_csv(stream or sys.stdout, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        return None
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    return str(path)


def series_frame(evaluation: RegimeEvaluation) -> pd.DataFrame:
    rows: List[dict] = []
    for series in evaluation.series:
        rows.extend(series.to_rows())
    return pd.DataFrame(rows, columns=SERIES_COLUMNS)


def checks_frame(evaluation: RegimeEvaluation) -> pd.DataFrame:
    """جدول الفحوص (سطر لكل فحص ميل، ومنها معدل η لمربع المعيار)."""
    return pd.DataFrame([check.to_dict() for check in evaluation.checks], columns=CHECK_COLUMNS)


def oracle_frame(reports: Iterable[BaseReport]) -> pd.DataFrame:
    rows: List[dict] = []
    for report in reports:
        rows.extend(report.to_rows())
    return pd.DataFrame(rows, columns=ORACLE_COLUMNS)


def regime_frame(n: int, regimes: Sequence[Regime]) -> pd.DataFrame:
    """خريطة الأنظمة مع l* = n/2 − 1."""
    frame = pd.DataFrame([regime.to_dict() for regime in regimes])
    frame['threshold'] = threshold_regularity(n)
    return frame


def checks_summary(evaluation: RegimeEvaluation) -> str:
    """ملخص نصي للفحوص (سطر لكل فحص)."""
    lines = []
    regime = evaluation.regime
    lines.append(f'n={regime.n} l={regime.l:g}: {regime.theorem.value} / {regime.profile.value}')
    for check in evaluation.checks:
        mark = '✅' if check.passed else '❌'
        side = '±' if check.two_sided else '≤'
        lines.append(f'{mark} {check.name}: measured {check.measured:+.4f}, '
                     f'predicted {check.predicted:+.4f} ({side}{check.tolerance:g})')
    return '\n'.join(lines)
