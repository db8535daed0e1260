"""
LDW-SCSA benchmark harness

Logistic dynamic weight sine-cosine search with sine-cosine and
inertia-weight PSO baselines, the thirteen-function numerical test suite,
and a reproducible experiment runner.
"""

__version__ = "0.1.0"

from .benchmarks import BenchmarkFunction, BenchmarkSuite, evaluate, list_functions
from .harness import ExperimentConfig, classify_zero, compare_to_reference, run_experiment
from .optimizers import OptimizerConfig, RunResult, run
from .rng_weights import LogisticWeightGenerator, RngStream

__all__ = [
    "BenchmarkFunction",
    "BenchmarkSuite",
    "ExperimentConfig",
    "LogisticWeightGenerator",
    "OptimizerConfig",
    "RngStream",
    "RunResult",
    "classify_zero",
    "compare_to_reference",
    "evaluate",
    "list_functions",
    "run",
    "run_experiment",
]
