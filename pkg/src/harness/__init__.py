"""Experiment harness: synthetic data, noise, the two-stage protocol and the CLI."""

from .noise import add_noise
from .protocol import (
    experimental_stage,
    preparation_stage,
    run_point,
    run_sweep,
    threshold_stage,
)
from .records import ExperimentRecord, plot_data, records_frame, summarize, write_records
from .sweep_config import SweepSpec, build_sweep, load_sweep_config
from .synthetic import SynthSpec, gen_synthetic
from .verify import SuiteResult, run_suites

__all__ = [
    "add_noise",
    "experimental_stage",
    "preparation_stage",
    "run_point",
    "run_sweep",
    "threshold_stage",
    "ExperimentRecord",
    "plot_data",
    "records_frame",
    "summarize",
    "write_records",
    "SweepSpec",
    "build_sweep",
    "load_sweep_config",
    "SynthSpec",
    "gen_synthetic",
    "SuiteResult",
    "run_suites",
]
