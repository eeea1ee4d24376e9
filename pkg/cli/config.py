"""
إعدادات السيناريو - Scenario Configuration

السيناريو يُبنى على ثلاث طبقات: القيم الافتراضية، ثم ملف JSON اختياري
(--config أو ملف الإعدادات في مجلد المستخدم)، ثم خيارات سطر الأوامر.
"""

import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from core.constants import (
    APP_DATA_FOLDER,
    SCENARIO_MAX_EVALS,
    SERIES_ABS_TOL,
    SERIES_RTOL,
    SETTINGS_FILE_NAME,
)
from core.logger import ConfigError, ErrorCodes, log_debug, log_info
from services.initial_data import DataPair, pair_from_label, pair_from_labels, parse_data_label
from services.quadrature import Region


def _get_appdata_folder() -> Path:
    """
    مجلد بيانات التطبيق.

    العائد:
        AppData/Roaming (ويندوز) أو ~/.config (لينكس/ماك)
    """
    if sys.platform == 'win32':
        appdata = os.environ.get('APPDATA', '')
        if appdata:
            return Path(appdata) / APP_DATA_FOLDER
    return Path.home() / '.config' / APP_DATA_FOLDER


def get_settings_file() -> Path:
    """مسار ملف الإعدادات الافتراضي (قد لا يكون موجوداً)."""
    return _get_appdata_folder() / SETTINGS_FILE_NAME


@dataclass
class Scenario:
    """
    سيناريو تحقق واحد.

    القيم الافتراضية: n = 3، l = 2، بيانات غاوسية a = 1، منطقة Full،
    سماحية نسبية 1e−3 وميزانية 5·10⁷ تقييم لكل زمن.
    """
    n: int = 3
    l: float = 2.0
    data: str = 'gaussian:a=1'
    data0: Optional[str] = None
    data1: Optional[str] = None
    region: str = 'Full'
    tol: float = SERIES_ABS_TOL
    rtol: float = SERIES_RTOL
    max_evals: int = SCENARIO_MAX_EVALS
    t_max: Optional[float] = None
    out: Optional[str] = None
    workers: int = 1
    mid_rate: bool = True

    def validate(self) -> 'Scenario':
        """التحقق من القيم؛ يرفع ConfigError عند أول قيمة غير صالحة."""
        if int(self.n) != self.n or self.n < 1:
            raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=f'n must be a positive integer, got {self.n}')
        self.n = int(self.n)
        if not math.isfinite(self.l) or self.l < 0:
            raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=f'l must be >= 0, got {self.l}')
        if not self.tol > 0 or self.rtol < 0:
            raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE,
                              details=f'need tol > 0 and rtol >= 0, got {self.tol}, {self.rtol}')
        if int(self.max_evals) != self.max_evals or self.max_evals < 1:
            raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=f'max_evals must be a positive integer')
        self.max_evals = int(self.max_evals)
        if self.t_max is not None and not self.t_max > 10:
            raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=f't_max must exceed 10, got {self.t_max}')
        if int(self.workers) != self.workers or self.workers < 1:
            raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=f'workers must be >= 1, got {self.workers}')
        self.workers = int(self.workers)
        if (self.data0 is None) != (self.data1 is None):
            raise ConfigError(ErrorCodes.CONFIG_BAD_DATA_LABEL, details='--data0 and --data1 go together')
        for label in (self.data, self.data0, self.data1):
            if label is not None:
                parse_data_label(label)
        self.region_obj()
        return self

    def region_obj(self) -> Region:
        try:
            return Region.from_name(self.region)
        except Exception as e:
            raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=str(e))

    def build_pair(self) -> DataPair:
        """زوج البيانات من التسميات (--data0/--data1 تتقدم على --data)."""
        if self.data0 is not None:
            return pair_from_labels(self.data0, self.data1, self.n, self.l)
        return pair_from_label(self.data, self.n, self.l)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


_FIELD_TYPES = {f.name: f.type for f in fields(Scenario)}


def _coerce(key: str, value: Any) -> Any:
    if value is None:
        return None
    kind = str(_FIELD_TYPES[key])
    try:
        if 'bool' in kind:
            if isinstance(value, str):
                return value.strip().lower() in ('1', 'true', 'yes', 'on')
            return bool(value)
        if 'int' in kind:
            number = float(value)
            if not number.is_integer():
                raise ValueError(value)
            return int(number)
        if 'float' in kind:
            return float(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=f'{key}: cannot use {value!r}')


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    قراءة ملف إعدادات JSON (كائن مسطح بمفاتيح Scenario).

    الأخطاء:
        ConfigError عند تعذر القراءة أو وجود مفتاح مجهول
    """
    path = Path(path).expanduser()
    try:
        with open(path, 'r', encoding='utf-8') as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(ErrorCodes.CONFIG_FILE_UNREADABLE, details=f'{path}: {e}')
    if not isinstance(raw, dict):
        raise ConfigError(ErrorCodes.CONFIG_FILE_UNREADABLE, details=f'{path}: expected a JSON object')
    normalized = {str(key).replace('-', '_'): value for key, value in raw.items()}
    unknown = sorted(set(normalized) - set(_FIELD_TYPES))
    if unknown:
        raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details=f'{path}: unknown keys {unknown}')
    log_debug(f'[Config] loaded {len(normalized)} keys from {path}')
    return {key: _coerce(key, value) for key, value in normalized.items()}


def load_scenario(overrides: Optional[Mapping[str, Any]] = None,
                  config_path: Optional[Union[str, Path]] = None,
                  use_user_settings: bool = True) -> Scenario:
    """
    بناء السيناريو: الافتراضي ← الملف ← الخيارات.

    المعاملات:
        overrides: قيم الخيارات (None تعني غير محددة)
        config_path: ملف إعدادات صريح
        use_user_settings: قراءة ملف المستخدم عند غياب config_path

    العائد:
        Scenario بعد التحقق
    """
    values: Dict[str, Any] = {}
    if config_path:
        values.update(read_config_file(config_path))
    elif use_user_settings:
        settings = get_settings_file()
        if settings.is_file():
            values.update(read_config_file(settings))
            log_info(f'[Config] using settings from {settings}')
    for key, value in (overrides or {}).items():
        if key in _FIELD_TYPES and value is not None:
            values[key] = _coerce(key, value)
    return Scenario(**values).validate()
