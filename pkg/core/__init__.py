"""
Core module for the Plate Decay Lab

This module provides core functionality including:
- Constants: Lab-wide numeric knobs
- Logger: Unified logging system, error codes and exceptions
- Symbol core: characteristic roots, branch constants and the E0/E1 kernels
- BaseReport: Base class for pointwise check reports
- Thread helpers: ordered worker pool for independent evaluations
- Utils: Utility functions
"""

from .constants import (
    APP_TITLE,
    APP_DATA_FOLDER,
    SETTINGS_FILE_NAME,
    CRITICAL_BAND_TOL,
    DEFAULT_MAX_EVALS,
    DEFAULT_TOL,
    SERIES_ABS_TOL,
    SERIES_RTOL,
    SCENARIO_MAX_EVALS,
    SLOPE_TOLERANCE,
    HEAT_SLOPE_TOLERANCE,
    EXIT_OK,
    EXIT_CHECK_FAILED,
    EXIT_USAGE,
)
from .logger import (
    get_logger, configure_logging, log_debug, log_info, log_warning, log_error,
    log_critical, log_exception, UnifiedLogger, ErrorCodes,
    LabError, ConfigError, DataError, QuadratureError, NonConvergentError,
    NonIntegrableError, NoTailBoundError, FitError, OracleError
)
from .symbol_core import (
    Branch, ModeState, BranchConstants,
    zeta_root, delta_cutoff, branch_constants, branch_residuals,
    discriminant, classify_branch, characteristic_roots,
    kernels, e0_kernel, e1_kernel, uhat_solution, uhat_time_derivative
)
from .base_report import BaseReport, CheckRow
from .threads import OrderedWorkerPool
from .utils import surface_measure, geometric_time_grid, log_spaced_grid, prepare_output_path

__all__ = [
    'APP_TITLE',
    'APP_DATA_FOLDER',
    'SETTINGS_FILE_NAME',
    'CRITICAL_BAND_TOL',
    'DEFAULT_MAX_EVALS',
    'DEFAULT_TOL',
    'SERIES_ABS_TOL',
    'SERIES_RTOL',
    'SCENARIO_MAX_EVALS',
    'SLOPE_TOLERANCE',
    'HEAT_SLOPE_TOLERANCE',
    'EXIT_OK',
    'EXIT_CHECK_FAILED',
    'EXIT_USAGE',
    'get_logger',
    'configure_logging',
    'log_debug',
    'log_info',
    'log_warning',
    'log_error',
    'log_critical',
    'log_exception',
    'UnifiedLogger',
    'ErrorCodes',
    'LabError',
    'ConfigError',
    'DataError',
    'QuadratureError',
    'NonConvergentError',
    'NonIntegrableError',
    'NoTailBoundError',
    'FitError',
    'OracleError',
    'Branch',
    'ModeState',
    'BranchConstants',
    'zeta_root',
    'delta_cutoff',
    'branch_constants',
    'branch_residuals',
    'discriminant',
    'classify_branch',
    'characteristic_roots',
    'kernels',
    'e0_kernel',
    'e1_kernel',
    'uhat_solution',
    'uhat_time_derivative',
    'BaseReport',
    'CheckRow',
    'OrderedWorkerPool',
    'surface_measure',
    'geometric_time_grid',
    'log_spaced_grid',
    'prepare_output_path',
]
