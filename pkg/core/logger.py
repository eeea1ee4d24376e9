"""
وحدة التسجيل الموحد - Unified Logger Module

هذه الوحدة تحتوي على نظام تسجيل موحد للمختبر.
تدعم مستويات مختلفة من التسجيل (DEBUG, INFO, WARNING, ERROR, CRITICAL)
وتقوم بتنظيف السجلات القديمة تلقائياً، كما تعرّف رموز الأخطاء والاستثناءات.
"""

import os
import sys
import copy
import logging
import threading
from pathlib import Path
from datetime import datetime, timedelta
from logging.handlers import RotatingFileHandler
from typing import Optional, Union

from .constants import APP_DATA_FOLDER


# ==================== ثوابت التسجيل ====================

# الحد الأقصى لحجم ملف السجل (5 ميجابايت)
MAX_LOG_FILE_SIZE = 5 * 1024 * 1024

# عدد ملفات السجل الاحتياطية
BACKUP_LOG_COUNT = 3

# عدد الأيام للاحتفاظ بالسجلات القديمة
LOG_RETENTION_DAYS = 7

DEFAULT_LOGGER_NAME = 'PlateLab'

# تنسيق رسائل السجل
LOG_FORMAT = '%(asctime)s | %(levelname)-8s | %(name)s | %(message)s'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


# ==================== رموز مستويات التسجيل ====================

LEVEL_ICONS = {
    'DEBUG': '🔍',
    'INFO': 'ℹ️',
    'WARNING': '⚠️',
    'ERROR': '❌',
    'CRITICAL': '🚨'
}


class IconFormatter(logging.Formatter):
    """
    منسق يضيف رمز إيموجي أمام مستوى الرسالة.
    """

    def format(self, record):
        # نسخة من السجل حتى لا يتأثر باقي المعالجات
        record = copy.copy(record)
        icon = LEVEL_ICONS.get(record.levelname, '')
        record.levelname = f"{icon} {record.levelname}"
        return super().format(record)


def _get_logs_directory() -> Path:
    """
    الحصول على مسار مجلد السجلات.

    العائد:
        مسار المجلد في AppData/Roaming (ويندوز) أو ~/.config (لينكس/ماك)
    """
    if sys.platform == 'win32':
        appdata = os.environ.get('APPDATA', '')
        if appdata:
            logs_dir = Path(appdata) / APP_DATA_FOLDER / 'logs'
        else:
            logs_dir = Path.home() / '.config' / APP_DATA_FOLDER / 'logs'
    else:
        logs_dir = Path.home() / '.config' / APP_DATA_FOLDER / 'logs'

    logs_dir.mkdir(parents=True, exist_ok=True)
    return logs_dir


def cleanup_old_logs(logs_dir: Path, days: int = LOG_RETENTION_DAYS) -> int:
    """
    تنظيف ملفات السجلات القديمة.

    المعاملات:
        logs_dir: مجلد السجلات
        days: عدد الأيام للاحتفاظ بالسجلات (الافتراضي 7 أيام)

    العائد:
        عدد الملفات التي تم حذفها
    """
    cutoff_date = datetime.now() - timedelta(days=days)
    deleted_count = 0
    try:
        for log_file in logs_dir.glob('*.log*'):
            try:
                file_mtime = datetime.fromtimestamp(log_file.stat().st_mtime)
                if file_mtime < cutoff_date:
                    log_file.unlink()
                    deleted_count += 1
            except (OSError, PermissionError):
                pass
    except OSError:
        return deleted_count
    return deleted_count


class UnifiedLogger:
    """
    فئة المسجل الموحد للمختبر.

    توفر هذه الفئة واجهة موحدة للتسجيل مع دعم:
    - مستويات متعددة (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    - التسجيل في وحدة التحكم (stderr، لأن stdout مخصص للجداول و CSV)
    - التسجيل الاختياري في ملف مع التدوير التلقائي
    - رسائل موحدة لأحداث المختبر المتكررة (نقاط السلاسل، فحوص الميل)
    """

    _instance = None
    _lock = threading.Lock()

    def __new__(cls, *args, **kwargs):
        """تطبيق نمط Singleton للحصول على مثيل واحد فقط."""
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
                    cls._instance._initialized = False
        return cls._instance

    def __init__(self,
                 name: str = DEFAULT_LOGGER_NAME,
                 level: int = logging.WARNING,
                 enable_console: bool = True):
        """
        تهيئة المسجل.

        المعاملات:
            name: اسم المسجل
            level: مستوى التسجيل الافتراضي
            enable_console: تفعيل التسجيل في وحدة التحكم
        """
        if self._initialized:
            return

        self._initialized = True
        self._name = name
        self._level = level
        self._file_handler: Optional[RotatingFileHandler] = None
        self._formatter = IconFormatter(LOG_FORMAT, LOG_DATE_FORMAT)

        self._logger = logging.getLogger(name)
        self._logger.setLevel(level)
        self._logger.handlers.clear()
        self._logger.propagate = False

        if enable_console:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(level)
            console_handler.setFormatter(self._formatter)
            self._logger.addHandler(console_handler)

    def enable_file(self, log_file: Optional[Union[str, Path]] = None) -> Optional[Path]:
        """
        تفعيل التسجيل في ملف مع التدوير.

        المعاملات:
            log_file: مسار الملف (اختياري، الافتراضي مجلد السجلات في ~/.config)

        العائد:
            مسار ملف السجل أو None عند الفشل
        """
        with self._lock:
            if self._file_handler is not None:
                return Path(self._file_handler.baseFilename)
            try:
                if log_file is None:
                    logs_dir = _get_logs_directory()
                    path = logs_dir / f'{self._name.lower()}.log'
                    deleted = cleanup_old_logs(logs_dir)
                    if deleted > 0:
                        self._logger.debug(f'[Logger] removed {deleted} old log files')
                else:
                    path = Path(log_file)
                    path.parent.mkdir(parents=True, exist_ok=True)

                handler = RotatingFileHandler(
                    path,
                    maxBytes=MAX_LOG_FILE_SIZE,
                    backupCount=BACKUP_LOG_COUNT,
                    encoding='utf-8'
                )
                handler.setLevel(self._level)
                handler.setFormatter(self._formatter)
                self._logger.addHandler(handler)
                self._file_handler = handler
                return path
            except OSError as e:
                # نستمر بدون ملف السجل
                self._logger.warning(f'[Logger] could not open log file: {e}')
                return None

    def set_level(self, level: int):
        """
        تغيير مستوى التسجيل.

        المعاملات:
            level: مستوى التسجيل الجديد (logging.DEBUG, INFO, WARNING, ERROR, CRITICAL)
        """
        self._level = level
        self._logger.setLevel(level)
        for handler in self._logger.handlers:
            handler.setLevel(level)

    @property
    def level(self) -> int:
        return self._level

    def debug(self, message: str, extra_info: str = None):
        """تسجيل رسالة تصحيح (DEBUG)."""
        full_message = f'{message} | {extra_info}' if extra_info else message
        self._logger.debug(full_message)

    def info(self, message: str, extra_info: str = None):
        """تسجيل رسالة معلومات (INFO)."""
        full_message = f'{message} | {extra_info}' if extra_info else message
        self._logger.info(full_message)

    def warning(self, message: str, extra_info: str = None):
        """تسجيل رسالة تحذير (WARNING)."""
        full_message = f'{message} | {extra_info}' if extra_info else message
        self._logger.warning(full_message)

    def error(self, message: str, extra_info: str = None, exc_info: bool = False):
        """
        تسجيل رسالة خطأ (ERROR).

        المعاملات:
            message: نص الرسالة
            extra_info: معلومات إضافية (اختياري)
            exc_info: تضمين معلومات الاستثناء (افتراضي False)
        """
        full_message = f'{message} | {extra_info}' if extra_info else message
        self._logger.error(full_message, exc_info=exc_info)

    def critical(self, message: str, extra_info: str = None, exc_info: bool = True):
        """تسجيل رسالة حرجة (CRITICAL)."""
        full_message = f'{message} | {extra_info}' if extra_info else message
        self._logger.critical(full_message, exc_info=exc_info)

    def exception(self, message: str, extra_info: str = None):
        """تسجيل استثناء مع معلومات التتبع الكاملة."""
        full_message = f'{message} | {extra_info}' if extra_info else message
        self._logger.exception(full_message)

    # ==================== رسائل المختبر ====================

    def series_point(self, label: str, t: float, norm: float, est_error: float):
        """
        تسجيل نقطة زمنية واحدة من سلسلة معايير.

        المعاملات:
            label: اسم السلسلة (المنطقة والمقطع الجانبي)
            t: الزمن
            norm: قيمة المعيار
            est_error: الخطأ المقدّر من التكامل
        """
        self.debug(f'[DecayLab] {label} t={t:.6g} norm={norm:.6e}', f'err={est_error:.2e}')

    def slope_check(self, name: str, predicted: float, measured: float,
                    tolerance: float, passed: bool):
        """
        تسجيل نتيجة فحص ميل.

        المعاملات:
            name: اسم الفحص
            predicted: الأس المتوقع
            measured: الميل المقاس
            tolerance: السماحية
            passed: هل نجح الفحص
        """
        message = (f'[DecayLab] {name}: predicted {predicted:+.4f}, '
                   f'measured {measured:+.4f} (tol {tolerance:.2f})')
        if passed:
            self.info(message)
        else:
            self.warning(message, 'check failed')

    def quadrature_budget(self, used: int, budget: int, region: str):
        """
        تسجيل استنفاد ميزانية التقييمات في التكامل.

        المعاملات:
            used: عدد التقييمات المستخدمة
            budget: الميزانية
            region: اسم المنطقة
        """
        self.warning(f'[Quadrature] evaluation budget exhausted on {region}',
                     f'{used} of {budget} evaluations')


# ==================== دوال مساعدة للوصول السريع ====================

_default_logger: Optional[UnifiedLogger] = None
_logger_init_lock = threading.Lock()


def get_logger(name: str = DEFAULT_LOGGER_NAME) -> UnifiedLogger:
    """
    الحصول على مثيل المسجل.

    المعاملات:
        name: اسم المسجل (اختياري)

    العائد:
        مثيل المسجل الموحد
    """
    global _default_logger

    with _logger_init_lock:
        if _default_logger is None:
            _default_logger = UnifiedLogger(name)
        return _default_logger


def configure_logging(level: Union[int, str] = logging.WARNING,
                      log_file: Optional[Union[str, Path]] = None) -> UnifiedLogger:
    """
    ضبط مستوى التسجيل وملف السجل (تستخدمها واجهة سطر الأوامر).

    المعاملات:
        level: المستوى كرقم أو اسم ('DEBUG', 'INFO', ...)
        log_file: مسار ملف السجل (اختياري)

    العائد:
        المسجل الموحد
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details='unknown log level')
    logger = get_logger()
    logger.set_level(level)
    if log_file:
        logger.enable_file(log_file)
    return logger


def log_debug(message: str, extra_info: str = None):
    """تسجيل رسالة تصحيح سريع."""
    get_logger().debug(message, extra_info)


def log_info(message: str, extra_info: str = None):
    """تسجيل رسالة معلومات سريع."""
    get_logger().info(message, extra_info)


def log_warning(message: str, extra_info: str = None):
    """تسجيل رسالة تحذير سريع."""
    get_logger().warning(message, extra_info)


def log_error(message: str, extra_info: str = None, exc_info: bool = False):
    """تسجيل رسالة خطأ سريع."""
    get_logger().error(message, extra_info, exc_info)


def log_critical(message: str, extra_info: str = None):
    """تسجيل رسالة حرجة سريع."""
    get_logger().critical(message, extra_info)


def log_exception(message: str, extra_info: str = None):
    """تسجيل استثناء سريع."""
    get_logger().exception(message, extra_info)


# ==================== رموز الخطأ ====================

class ErrorCodes:
    """
    رموز الأخطاء الموحدة للمختبر.

    تستخدم هذه الرموز لتوحيد رسائل الخطأ وتسهيل التشخيص.
    """

    # أخطاء الإعدادات والاستخدام (1xxx)
    CONFIG_INVALID_VALUE = 1001
    CONFIG_FILE_UNREADABLE = 1002
    CONFIG_BAD_DATA_LABEL = 1003
    CONFIG_BAD_RANGE = 1004
    CONFIG_UNCOVERED_REGIME = 1005

    # أخطاء البيانات الابتدائية (2xxx)
    DATA_INVALID_PARAMETER = 2001
    DATA_REGULARITY_TOO_LOW = 2002
    DATA_INVALID_TIME = 2003

    # أخطاء التكامل (3xxx)
    QUAD_NON_CONVERGENT = 3001
    QUAD_NON_INTEGRABLE = 3002
    QUAD_NO_TAIL_BOUND = 3003
    QUAD_INVALID_REGION = 3004

    # أخطاء الملاءمة والسلاسل (4xxx)
    FIT_TOO_FEW_POINTS = 4001
    FIT_DEGENERATE = 4002
    SERIES_UNDERFLOW = 4003
    SERIES_INVALID_TIMES = 4004

    # أخطاء الفحوص المرجعية (5xxx)
    ORACLE_INVALID_STEP = 5001
    ORACLE_BOUND_VIOLATED = 5002

    MESSAGES = {
        CONFIG_INVALID_VALUE: 'Invalid configuration value',
        CONFIG_FILE_UNREADABLE: 'Configuration file could not be read',
        CONFIG_BAD_DATA_LABEL: 'Malformed data label',
        CONFIG_BAD_RANGE: 'Malformed radius range',
        CONFIG_UNCOVERED_REGIME: 'No theorem covers this (n, l)',

        DATA_INVALID_PARAMETER: 'Invalid datum parameter',
        DATA_REGULARITY_TOO_LOW: 'Datum regularity below the requested Sobolev index',
        DATA_INVALID_TIME: 'Time outside the admissible range',

        QUAD_NON_CONVERGENT: 'Quadrature did not converge within the evaluation budget',
        QUAD_NON_INTEGRABLE: 'Integrand is not integrable on the region',
        QUAD_NO_TAIL_BOUND: 'No tail bound available for the integrand',
        QUAD_INVALID_REGION: 'Invalid integration region',

        FIT_TOO_FEW_POINTS: 'Too few points for a slope fit',
        FIT_DEGENERATE: 'Degenerate series, slope undefined',
        SERIES_UNDERFLOW: 'Norms underflowed before a usable stretch of data',
        SERIES_INVALID_TIMES: 'Time grid must be increasing and inside the admissible range',

        ORACLE_INVALID_STEP: 'Integration step must be positive',
        ORACLE_BOUND_VIOLATED: 'Oracle bound violated',
    }

    @classmethod
    def get_message(cls, code: int) -> str:
        """
        الحصول على رسالة الخطأ.

        المعاملات:
            code: رمز الخطأ

        العائد:
            رسالة الخطأ
        """
        return cls.MESSAGES.get(code, f'Unknown error (code: {code})')


class LabError(Exception):
    """
    الاستثناء الأساسي للمختبر.

    يحتوي على رمز الخطأ ورسالة مفصلة.
    """

    def __init__(self, code: int, message: str = None, details: str = None):
        """
        تهيئة الاستثناء.

        المعاملات:
            code: رمز الخطأ من ErrorCodes
            message: رسالة مخصصة (اختياري)
            details: تفاصيل إضافية (اختياري)
        """
        self.code = code
        self.message = message or ErrorCodes.get_message(code)
        self.details = details
        super().__init__(self.message)

    def __str__(self):
        if self.details:
            return f'{self.message} - {self.details}'
        return self.message


class ConfigError(LabError):
    """استثناء لأخطاء الإعدادات والاستخدام."""
    pass


class DataError(LabError):
    """استثناء لمعاملات البيانات غير الصالحة."""
    pass


class QuadratureError(LabError):
    """استثناء لأخطاء التكامل العددي."""
    pass


class NonConvergentError(QuadratureError):
    """استنفاد ميزانية التقييمات قبل بلوغ السماحية."""

    def __init__(self, message: str = None, details: str = None,
                 partial_value: float = float('nan')):
        super().__init__(ErrorCodes.QUAD_NON_CONVERGENT, message, details)
        self.partial_value = partial_value


class NonIntegrableError(QuadratureError):
    """نمو التكامل بلا حد عند تمديد القطع."""

    def __init__(self, message: str = None, details: str = None):
        super().__init__(ErrorCodes.QUAD_NON_INTEGRABLE, message, details)


class NoTailBoundError(QuadratureError):
    """لا توجد بيانات وصفية لحد الذيل."""

    def __init__(self, message: str = None, details: str = None):
        super().__init__(ErrorCodes.QUAD_NO_TAIL_BOUND, message, details)


class FitError(LabError):
    """استثناء لأخطاء ملاءمة الميل."""
    pass


class OracleError(LabError):
    """استثناء لأخطاء الفحوص المرجعية."""
    pass
