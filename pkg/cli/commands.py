"""
أوامر سطر الأوامر - CLI Subcommands

roots   جذور المعادلة المميزة والثابتان ζ و δ
verify  تشغيل فحوص نظام (n, l) وكتابة السلاسل الزمنية CSV
oracle  الفحوص المرجعية (المتباينات النقطية ومطابقة المعادلة)
report  خريطة الأنظمة لبعد ثابت

رموز الخروج: 0 نجاح، 1 فحص فاشل، 2 خطأ استخدام أو إعدادات.
"""

import argparse
import sys
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from controllers.decay_lab import case_study_map, classify_regime, evaluate_regime
from core.constants import APP_TITLE, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE
from core.logger import (
    ConfigError,
    DataError,
    ErrorCodes,
    LabError,
    configure_logging,
    log_error,
    log_info,
)
from core.symbol_core import branch_residuals, characteristic_roots, delta_cutoff, zeta_root
from services.oracles import ORACLE_CHOICES, run_oracle_suite

from .config import Scenario, load_scenario
from .report import checks_frame, checks_summary, oracle_frame, regime_frame, series_frame, write_frame

ROOTS_COLUMNS = ['r', 'lambda1_re', 'lambda1_im', 'lambda2_re', 'lambda2_im', 'discriminant', 'branch']


# ==================== roots ====================

def parse_range(text: str) -> np.ndarray:
    """
    'start:stop:count' ← شبكة خطية من count نقطة.

    الأخطاء:
        ConfigError (CONFIG_BAD_RANGE) عند صيغة غير صالحة
    """
    parts = text.split(':')
    try:
        if len(parts) != 3:
            raise ValueError(text)
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(ErrorCodes.CONFIG_BAD_RANGE, details=f'expected start:stop:count, got {text!r}')
    if count < 1 or start < 0 or stop < start:
        raise ConfigError(ErrorCodes.CONFIG_BAD_RANGE,
                          details=f'need 0 <= start <= stop and count >= 1, got {text!r}')
    return np.linspace(start, stop, count)


def roots_frame(radii: Sequence[float]) -> pd.DataFrame:
    rows = []
    for r in radii:
        state = characteristic_roots(float(r))
        rows.append({
            'r': state.r,
            'lambda1_re': state.lambda1.real,
            'lambda1_im': state.lambda1.imag,
            'lambda2_re': state.lambda2.real,
            'lambda2_im': state.lambda2.imag,
            'discriminant': state.discriminant,
            'branch': state.branch.value,
        })
    return pd.DataFrame(rows, columns=ROOTS_COLUMNS)


def constants_frame() -> pd.DataFrame:
    zeta_residual, delta_residual = branch_residuals()
    return pd.DataFrame([
        {'constant': 'zeta', 'value': zeta_root(), 'residual': zeta_residual},
        {'constant': 'delta', 'value': delta_cutoff(), 'residual': delta_residual},
    ])


def cmd_roots(args: argparse.Namespace) -> int:
    radii: List[float] = list(args.r or [])
    if args.range:
        radii.extend(parse_range(args.range).tolist())
    if not radii and not args.constants:
        raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details='roots needs --r, --range or --constants')
    if radii:
        write_frame(roots_frame(radii), args.out)
    if args.constants:
        # مع --out يذهب جدول الجذور إلى الملف والثوابت إلى الإخراج القياسي
        write_frame(constants_frame(), None if radii else args.out)
    return EXIT_OK


# ==================== verify ====================

def _scenario_overrides(args: argparse.Namespace) -> dict:
    keys = ('n', 'l', 'data', 'data0', 'data1', 'region', 'tol', 'rtol',
            'max_evals', 't_max', 'out', 'workers')
    overrides = {key: getattr(args, key, None) for key in keys}
    if getattr(args, 'no_mid_rate', False):
        overrides['mid_rate'] = False
    return overrides


def run_scenario(scenario: Scenario):
    """تشغيل سيناريو مبني مسبقاً (تستخدمها الأوامر والاختبارات)."""
    pair = scenario.build_pair()
    return evaluate_regime(pair, classify_regime(scenario.n, scenario.l),
                           region=scenario.region_obj(), t_max=scenario.t_max,
                           tol=scenario.tol, rtol=scenario.rtol, max_evals=scenario.max_evals,
                           workers=scenario.workers, include_mid_rate=scenario.mid_rate)


def cmd_verify(args: argparse.Namespace) -> int:
    scenario = load_scenario(_scenario_overrides(args), config_path=args.config,
                             use_user_settings=not args.no_settings)
    log_info(f'[CLI] verify n={scenario.n} l={scenario.l:g}', f'data={scenario.data}, region={scenario.region}')
    evaluation = run_scenario(scenario)
    written = write_frame(series_frame(evaluation), scenario.out)
    if args.checks_out:
        write_frame(checks_frame(evaluation), args.checks_out)
    print(checks_summary(evaluation), file=sys.stderr)
    if written:
        print(f'CSV: {written}', file=sys.stderr)
    if not evaluation.passed:
        for check in evaluation.failed_checks:
            log_error(f'[CLI] check failed: {check.name}',
                      f'measured {check.measured:.4f}, predicted {check.predicted:.4f}')
        return EXIT_CHECK_FAILED
    return EXIT_OK


# ==================== oracle ====================

def cmd_oracle(args: argparse.Namespace) -> int:
    t_values = args.t if args.t else None
    reports = run_oracle_suite(args.lemma, l=args.l, t_values=t_values, workers=args.workers or 1)
    write_frame(oracle_frame(reports), args.out)
    failed = [report for report in reports if not report.passed]
    for report in reports:
        mark = '✅' if report.passed else '❌'
        print(f'{mark} {report.lemma}: {len(report.rows)} checks, {len(report.violations)} violations',
              file=sys.stderr)
    for report in failed:
        for row in report.violations[:5]:
            log_error(f'[CLI] oracle {row.lemma} violated at {row.parameter}',
                      f'measured {row.measured:.6g} > bound {row.bound:.6g}')
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# ==================== report ====================

def cmd_report(args: argparse.Namespace) -> int:
    if args.n is None or args.n < 1:
        raise ConfigError(ErrorCodes.CONFIG_INVALID_VALUE, details='report needs --n >= 1')
    ls = None
    if args.l_range:
        ls = parse_range(args.l_range)
        if ls[0] < 2.0:
            raise ConfigError(ErrorCodes.CONFIG_BAD_RANGE, details='regularity grid must start at l >= 2')
    write_frame(regime_frame(args.n, case_study_map(args.n, ls)), args.out)
    return EXIT_OK


# ==================== المحلل ====================

def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument('--out', default=None, help='CSV output path (default: stdout)')
    parser.add_argument('--workers', type=int, default=None, help='worker threads (results do not depend on it)')
    parser.add_argument('--log-level', default='WARNING', help='DEBUG, INFO, WARNING or ERROR')
    parser.add_argument('--log-file', default=None, help='also write the log to this file')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='lab', description=APP_TITLE)
    sub = parser.add_subparsers(dest='command', required=True)

    roots = sub.add_parser('roots', help='characteristic roots and branch constants')
    roots.add_argument('--r', type=float, action='append', help='radius (repeatable)')
    roots.add_argument('--range', default=None, help='radius grid start:stop:count')
    roots.add_argument('--constants', action='store_true', help='print zeta and delta with residuals')
    _add_common(roots)
    roots.set_defaults(handler=cmd_roots)

    verify = sub.add_parser('verify', help='run the slope checks of one (n, l) scenario')
    verify.add_argument('--config', default=None, help='JSON scenario file')
    verify.add_argument('--no-settings', action='store_true', help='ignore the per-user settings file')
    verify.add_argument('--n', type=int, default=None)
    verify.add_argument('--l', type=float, default=None)
    verify.add_argument('--data', default=None, help='gaussian:a=<a> | edge:sigma=<s> | zero')
    verify.add_argument('--data0', default=None, help='label for u0 (with --data1)')
    verify.add_argument('--data1', default=None, help='label for u1 (with --data0)')
    verify.add_argument('--region', default=None, help='Low | Mid | High | Full')
    verify.add_argument('--tol', type=float, default=None)
    verify.add_argument('--rtol', type=float, default=None)
    verify.add_argument('--max-evals', dest='max_evals', type=int, default=None)
    verify.add_argument('--t-max', dest='t_max', type=float, default=None)
    verify.add_argument('--no-mid-rate', action='store_true', help='skip the mid-region rate check')
    verify.add_argument('--checks-out', dest='checks_out', default=None,
                        help='CSV path for the per-check table (slopes and the squared-norm mid rate)')
    _add_common(verify)
    verify.set_defaults(handler=cmd_verify)

    oracle = sub.add_parser('oracle', help='pointwise inequality and ODE agreement checks')
    oracle.add_argument('--lemma', choices=ORACLE_CHOICES, default=None)
    oracle.add_argument('--l', type=float, default=2.0)
    oracle.add_argument('--t', type=float, action='append', help='time value (repeatable)')
    _add_common(oracle)
    oracle.set_defaults(handler=cmd_oracle)

    report = sub.add_parser('report', help='regime map for a fixed dimension')
    report.add_argument('--n', type=int, default=None)
    report.add_argument('--l-range', dest='l_range', default=None, help='regularity grid start:stop:count')
    _add_common(report)
    report.set_defaults(handler=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    نقطة الدخول.

    المعاملات:
        argv: الوسائط (الافتراضي sys.argv[1:])

    العائد:
        رمز الخروج
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        configure_logging(args.log_level, args.log_file)
        return args.handler(args)
    except (ConfigError, DataError) as e:
        log_error(f'[CLI] {args.command}: {e}')
        print(f'❌ {e}', file=sys.stderr)
        return EXIT_USAGE
    except LabError as e:
        log_error(f'[CLI] {args.command} check failed: {e}')
        print(f'❌ {e}', file=sys.stderr)
        return EXIT_CHECK_FAILED
