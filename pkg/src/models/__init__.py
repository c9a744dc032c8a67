"""
Pydantic schemas for reports and run configuration.
"""

from .config_schema import RunConfig
from .report_schema import CheckReport, CheckStats, SubVerdict

__all__ = ['CheckReport', 'CheckStats', 'RunConfig', 'SubVerdict']
