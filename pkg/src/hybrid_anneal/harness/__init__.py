from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    experiment_success,
    experiment_table1,
    experiment_trajectories,
    experiment_tunneling,
    run_experiment,
)
from .io import read_sidecar, write_report
from .seeds import derive_seed
from .stats import FitResult, fit_exponential_base, fit_power_law

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "FitResult",
    "derive_seed",
    "experiment_success",
    "experiment_table1",
    "experiment_trajectories",
    "experiment_tunneling",
    "fit_exponential_base",
    "fit_power_law",
    "read_sidecar",
    "run_experiment",
    "write_report",
]
