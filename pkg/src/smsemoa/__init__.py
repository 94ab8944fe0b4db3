"""SMS-EMOA with non-dominated archives.

Hypervolume-based survival selection with three archive configurations
(large population, archive as store, archive with reuse), the
OneJumpZeroJump family of runtime benchmarks, practical bi-objective
problems (knapsack, NK landscapes, TSP, QAP), and an experiment harness.
"""

__version__ = "0.1.0"

from .core import (BitString, EvaluatedSolution, ObjectiveVector, Permutation,
                   Population, random_bitstring, random_permutation)
from .engine import (EngineConfig, EngineState, Problem, RunResult, Variant,
                     problem_from_benchmark, problem_from_instance,
                     sms_emoa_run, sms_emoa_step, variant_population_size)
from .rng import RngState, derive_run_seed, fold_seed

__all__ = [
    "BitString", "Permutation", "ObjectiveVector", "EvaluatedSolution",
    "Population", "random_bitstring", "random_permutation",
    "RngState", "derive_run_seed", "fold_seed",
    "EngineConfig", "EngineState", "Problem", "RunResult", "Variant",
    "problem_from_benchmark", "problem_from_instance",
    "sms_emoa_run", "sms_emoa_step", "variant_population_size",
    "__version__",
]
