"""
Verification harness: named checks, subset sweeps, census runs and report rendering.
"""

from .checks import CHECKS, run_check
from .report_writer import render, write_reports

__all__ = ['CHECKS', 'render', 'run_check', 'write_reports']
