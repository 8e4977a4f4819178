"""Jump-penalised least squares: exact fits, scale spaces, J1 distances and
noise diagnostics."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import InvalidInput
from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    GammaRule,
    gamma_schedule,
    run_consistency,
    run_experiment,
    run_scale_compare,
)
from .noise import (
    NoiseDiagnostics,
    NoiseModel,
    beta_n,
    check_condition_A,
    check_dyadic_bound,
    max_partial_stat,
    sample_noise,
)
from .scale_space import ScaleSpacePath, build_path, deterministic_path, eval_path, truncate
from .segment import DeltaTable, Segmentation, brute_force, fit_all_k, fit_fixed_gamma
from .signals import SignalSpec, load_blocks
from .skorokhod import TimeChange, path_distance, skorokhod_distance
from .step import StepFunction, cell_means, distance, embed, hausdorff_jumps, mpl, project_mean

__all__ = [
    "BACKEND",
    "InvalidInput",
    "StepFunction",
    "embed",
    "project_mean",
    "distance",
    "hausdorff_jumps",
    "mpl",
    "cell_means",
    "Segmentation",
    "DeltaTable",
    "fit_fixed_gamma",
    "fit_all_k",
    "brute_force",
    "ScaleSpacePath",
    "build_path",
    "eval_path",
    "truncate",
    "deterministic_path",
    "TimeChange",
    "skorokhod_distance",
    "path_distance",
    "NoiseModel",
    "NoiseDiagnostics",
    "sample_noise",
    "beta_n",
    "max_partial_stat",
    "check_dyadic_bound",
    "check_condition_A",
    "SignalSpec",
    "load_blocks",
    "GammaRule",
    "ExperimentConfig",
    "ExperimentReport",
    "gamma_schedule",
    "run_consistency",
    "run_scale_compare",
    "run_experiment",
]
