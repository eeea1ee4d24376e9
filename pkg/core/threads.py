"""
Worker Pool for the Plate Decay Lab

This module runs independent samples (time points, oracle radii) on a
thread pool and hands results back in submission order, so assembled
series do not depend on the number of workers.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from .logger import log_debug

T = TypeVar('T')
R = TypeVar('R')


class OrderedWorkerPool:
    """مجمّع عمال يعيد النتائج بترتيب الإدخال."""

    def __init__(self, max_workers: Optional[int] = 1, label: str = 'pool'):
        self.max_workers = max(1, int(max_workers or 1))
        self.label = label

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """
        تطبيق fn على العناصر.

        المعاملات:
            fn: الدالة (يجب أن تكون نقية أو آمنة للخيوط)
            items: العناصر

        العائد:
            قائمة النتائج بنفس ترتيب العناصر؛ أول استثناء يُعاد رفعه
        """
        items = list(items)
        if self.max_workers == 1 or len(items) <= 1:
            return [fn(item) for item in items]

        log_debug(f'[Workers] {self.label}: {len(items)} tasks on {self.max_workers} threads')
        with ThreadPoolExecutor(max_workers=self.max_workers,
                                thread_name_prefix=self.label) as executor:
            # executor.map يحافظ على ترتيب الإدخال
            return list(executor.map(fn, items))
