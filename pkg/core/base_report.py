"""
وحدة قاعدة التقارير - Base Report Module

الفئة الأساسية لتقارير الفحوص المرجعية: كل تقرير يجمع صفوف فحص نقطية
(معرّف الفحص، المعامل، الحد، القيمة المقاسة، النجاح) ويُسلسل إلى CSV.
"""

import math
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, asdict
from typing import Dict, List, Optional, Tuple


@dataclass(frozen=True)
class CheckRow:
    """صف فحص واحد."""
    lemma: str
    parameter: str
    bound: float
    measured: float
    passed: bool


class BaseReport(ABC):
    """
    الفئة الأساسية لجميع تقارير الفحص (المتباينات، ثوابت البنية، مطابقة المعادلة).

    الصفوف تُضاف من عدة خيوط عند تشغيل الفحوص بالتوازي، لذا الإضافة محمية بقفل.
    فحص واحد فاشل يُسقط التقرير بأكمله.
    """

    lemma: str = ''

    def __init__(self):
        self._rows: List[CheckRow] = []
        self._state_lock = threading.Lock()

    def record(self, parameter: str, bound: float, measured: float,
               passed: Optional[bool] = None, lemma: Optional[str] = None) -> CheckRow:
        """
        إضافة صف فحص.

        المعاملات:
            parameter: وصف المعامل (مثل 't=10')
            bound: الحد المسموح
            measured: القيمة المقاسة
            passed: نتيجة صريحة (الافتراضي: measured ≤ bound)
            lemma: معرّف فحص بديل للصف (الافتراضي: معرّف التقرير)

        العائد:
            الصف المضاف
        """
        if passed is None:
            passed = bool(math.isfinite(measured) and measured <= bound)
        row = CheckRow(lemma or self.lemma, parameter, float(bound), float(measured), bool(passed))
        with self._state_lock:
            self._rows.append(row)
        return row

    @property
    def rows(self) -> Tuple[CheckRow, ...]:
        with self._state_lock:
            return tuple(self._rows)

    @property
    def violations(self) -> Tuple[CheckRow, ...]:
        return tuple(row for row in self.rows if not row.passed)

    @property
    def passed(self) -> bool:
        rows = self.rows
        return bool(rows) and all(row.passed for row in rows)

    @abstractmethod
    def to_dict(self) -> dict:
        """ملخص التقرير (الثوابت المقاسة)."""
        pass

    def _base_to_dict(self) -> dict:
        """الحقول المشتركة للتحويل إلى قاموس."""
        return {
            'lemma': self.lemma,
            'checks': len(self.rows),
            'violations': len(self.violations),
            'passed': self.passed,
        }

    def to_rows(self) -> List[Dict[str, object]]:
        """الصفوف كقواميس جاهزة لـ CSV."""
        return [asdict(row) for row in self.rows]
