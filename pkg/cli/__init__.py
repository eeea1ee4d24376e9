"""
CLI module for the Plate Decay Lab

- config: Scenario defaults, JSON settings file and flag overrides
- report: CSV writers (pandas) for series, oracle rows and regime maps
- commands: roots / verify / oracle / report subcommands
"""

from .config import Scenario, load_scenario, read_config_file, get_settings_file
from .report import (
    write_frame, series_frame, checks_frame, oracle_frame, regime_frame, checks_summary,
    SERIES_COLUMNS, ORACLE_COLUMNS, CHECK_COLUMNS,
)
from .commands import (
    build_parser, main, parse_range, run_scenario,
    cmd_roots, cmd_verify, cmd_oracle, cmd_report,
)

__all__ = [
    'Scenario',
    'load_scenario',
    'read_config_file',
    'get_settings_file',
    'write_frame',
    'series_frame',
    'checks_frame',
    'oracle_frame',
    'regime_frame',
    'checks_summary',
    'SERIES_COLUMNS',
    'ORACLE_COLUMNS',
    'CHECK_COLUMNS',
    'build_parser',
    'main',
    'parse_range',
    'run_scenario',
    'cmd_roots',
    'cmd_verify',
    'cmd_oracle',
    'cmd_report',
]
