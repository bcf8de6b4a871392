"""
CLI Module for rauzykit

Experiment configs, run records, report writing and the command-line runner.
"""

from cli.experiment import ExperimentConfig, RunRecord, load_config, parse_config, run_experiment
from cli.formatter import CLIFormatter
from cli.report_writer import BatchIndex, emit_report

__all__ = [
    'BatchIndex',
    'CLIFormatter',
    'ExperimentConfig',
    'RunRecord',
    'emit_report',
    'load_config',
    'parse_config',
    'run_experiment',
]
