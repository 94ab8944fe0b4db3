"""The SMS-EMOA generational loop and its archive variants.

Per generation the engine selects a parent (uniformly from the population,
or for the reuse variant from population/archive with probability 1/2
each), applies optional crossover and then mutation to create exactly one
offspring, evaluates it, updates the archive (store and reuse variants,
before survival selection), partitions population + offspring into
non-dominated fronts, and removes the minimum-contribution member of the
last front.

The loop runs on int64 objectives scaled by a constant per-problem
denominator (minimization problems arrive negated), which leaves every
dominance and argmin decision exact; results are materialized back into
exact rational objective vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from . import kernels
from .core import BitString, EvaluatedSolution, ObjectiveVector, Permutation, Population
from .problems import benchmark, practical
from .rng import RngState

_E1 = np.zeros(0, dtype=np.int64)
_E2 = np.zeros((0, 0), dtype=np.int64)


class Variant(Enum):
    """How the run uses (or avoids) the non-dominated archive."""

    LARGE_POP = "L"
    ARCHIVE_STORE = "A"
    ARCHIVE_REUSE = "AR"

    @property
    def kernel_code(self) -> int:
        return {"L": kernels.VARIANT_L,
                "A": kernels.VARIANT_A,
                "AR": kernels.VARIANT_AR}[self.value]

    @property
    def uses_archive(self) -> bool:
        return self is not Variant.LARGE_POP

    @classmethod
    def parse(cls, text: str) -> "Variant":
        for v in cls:
            if text.upper() == v.value:
                return v
        raise ValueError(f"unknown variant {text!r} (expected L, A or AR)")


_CX_CODES = {"none": kernels.CX_NONE, "one-point": kernels.CX_ONE_POINT,
             "uniform": kernels.CX_UNIFORM, "ox": kernels.CX_OX,
             "cx": kernels.CX_CX}
_MUT_CODES = {"bitwise": -1, "two-opt": kernels.MUT_TWO_OPT,
              "two-swap": kernels.MUT_TWO_SWAP}
_BIT_CX = ("none", "one-point", "uniform")
_PERM_CX = ("none", "ox", "cx")


@dataclass
class EngineConfig:
    variant: Variant
    mu: int
    seed: int
    max_generations: int
    termination: str = "coverage"  # "coverage" | "budget"
    crossover: str = "none"
    p_c: float = 0.0
    mutation: str = "bitwise"
    mutation_rate: float = 0.05  # per-offspring move probability (permutations)
    seed_archive: bool = True

    def __post_init__(self):
        if self.mu < 1:
            raise ValueError("mu must be >= 1")
        if not 0.0 <= self.p_c <= 1.0:
            raise ValueError("p_c must lie in [0, 1]")
        if self.max_generations < 0:
            raise ValueError("max_generations must be >= 0")
        if self.termination not in ("coverage", "budget"):
            raise ValueError("termination must be 'coverage' or 'budget'")
        if self.crossover not in _CX_CODES:
            raise ValueError(f"unknown crossover {self.crossover!r}")
        if self.mutation not in _MUT_CODES:
            raise ValueError(f"unknown mutation {self.mutation!r}")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")


@dataclass
class Problem:
    """Engine-facing problem description (scaled payload plus exact eval)."""

    name: str
    genotype: str  # "bits" | "perm"
    n: int
    prob_id: int
    denominator: int
    minimize: bool
    k: int = 0
    a: int = 0
    kp_p1: np.ndarray = field(default_factory=lambda: _E1)
    kp_p2: np.ndarray = field(default_factory=lambda: _E1)
    kp_w: np.ndarray = field(default_factory=lambda: _E1)
    kp_cap: int = 0
    kp_order: np.ndarray = field(default_factory=lambda: _E1)
    nk_n1: np.ndarray = field(default_factory=lambda: _E2)
    nk_n2: np.ndarray = field(default_factory=lambda: _E2)
    nk_t1: np.ndarray = field(default_factory=lambda: _E2)
    nk_t2: np.ndarray = field(default_factory=lambda: _E2)
    tsp_d1: np.ndarray = field(default_factory=lambda: _E2)
    tsp_d2: np.ndarray = field(default_factory=lambda: _E2)
    qap_dist: np.ndarray = field(default_factory=lambda: _E2)
    qap_f1: np.ndarray = field(default_factory=lambda: _E2)
    qap_f2: np.ndarray = field(default_factory=lambda: _E2)
    front_f1: np.ndarray = field(default_factory=lambda: _E1)
    front_f2: np.ndarray = field(default_factory=lambda: _E1)
    spec: Optional[benchmark.BenchmarkSpec] = None
    instance: Optional[practical.Instance] = None

    @property
    def has_front(self) -> bool:
        return self.front_f1.size > 0

    @property
    def front_size(self) -> int:
        return int(self.front_f1.size)

    def evaluate(self, genotype: Union[BitString, Permutation]) -> ObjectiveVector:
        """Exact objectives in engine orientation (minimization negated)."""
        if self.spec is not None:
            return benchmark.evaluate(genotype, self.spec)
        inst = self.instance
        if isinstance(inst, practical.KpInstance):
            return practical.kp_eval(genotype, inst)
        if isinstance(inst, practical.NkInstance):
            return practical.nk_eval(genotype, inst)
        if isinstance(inst, practical.TspInstance):
            v = practical.tsp_eval(genotype, inst)
        else:
            v = practical.qap_eval(genotype, inst)
        return ObjectiveVector(-v.f1, -v.f2)

    def default_operators(self) -> dict:
        """Operator settings used by the experiment protocols."""
        if self.name in ("kp", "nk"):
            return {"crossover": "uniform", "p_c": 1.0, "mutation": "bitwise"}
        if self.name == "tsp":
            return {"crossover": "ox", "p_c": 1.0, "mutation": "two-opt",
                    "mutation_rate": 0.05}
        if self.name == "qap":
            return {"crossover": "cx", "p_c": 1.0, "mutation": "two-swap",
                    "mutation_rate": 0.05}
        return {"crossover": "none", "p_c": 0.0, "mutation": "bitwise"}


def problem_from_benchmark(spec: benchmark.BenchmarkSpec) -> Problem:
    prob_id = {benchmark.OJZJ: kernels.PROB_OJZJ,
               benchmark.OJZJ_SS: kernels.PROB_OJZJ_SS,
               benchmark.OMM: kernels.PROB_OMM,
               benchmark.LOTZ: kernels.PROB_LOTZ}[spec.kind]
    f1, f2 = benchmark.front_scaled(spec)
    return Problem(name=spec.kind, genotype="bits", n=spec.n, prob_id=prob_id,
                   denominator=benchmark.denominator(spec), minimize=False,
                   k=spec.k, a=spec.a, front_f1=f1, front_f2=f2, spec=spec)


def problem_from_instance(inst: practical.Instance) -> Problem:
    if isinstance(inst, practical.KpInstance):
        return Problem(name="kp", genotype="bits", n=inst.n,
                       prob_id=kernels.PROB_KP, denominator=1, minimize=False,
                       kp_p1=inst.profits1, kp_p2=inst.profits2,
                       kp_w=inst.weights, kp_cap=inst.capacity,
                       kp_order=inst.repair_order(), instance=inst)
    if isinstance(inst, practical.NkInstance):
        return Problem(name="nk", genotype="bits", n=inst.n,
                       prob_id=kernels.PROB_NK,
                       denominator=inst.n * practical.NK_FIXED_POINT,
                       minimize=False, nk_n1=inst.neighbors1, nk_t1=inst.tables1,
                       nk_n2=inst.neighbors2, nk_t2=inst.tables2, instance=inst)
    if isinstance(inst, practical.TspInstance):
        return Problem(name="tsp", genotype="perm", n=inst.n,
                       prob_id=kernels.PROB_TSP, denominator=1, minimize=True,
                       tsp_d1=inst.dist1, tsp_d2=inst.dist2, instance=inst)
    if isinstance(inst, practical.QapInstance):
        return Problem(name="qap", genotype="perm", n=inst.n,
                       prob_id=kernels.PROB_QAP, denominator=1, minimize=True,
                       qap_dist=inst.dist, qap_f1=inst.flow1,
                       qap_f2=inst.flow2, instance=inst)
    raise TypeError(f"unsupported instance {type(inst)!r}")


def variant_population_size(problem, variant: Variant) -> int:
    """Population sizes used by the experiment protocols."""
    spec = problem.spec if isinstance(problem, Problem) else problem
    if isinstance(spec, benchmark.BenchmarkSpec):
        if variant is Variant.LARGE_POP:
            if spec.kind in (benchmark.OJZJ, benchmark.OJZJ_SS):
                return spec.n - 2 * spec.k + 5
            return spec.n + 1  # front size for the linear-front benchmarks
        return 5
    return 100


@dataclass(frozen=True)
class StepInfo:
    generation: int
    offspring_genotype: Union[BitString, Permutation]
    offspring_objectives: ObjectiveVector
    removed_objectives: ObjectiveVector
    archive_size: int
    covered: bool


@dataclass
class RunResult:
    """Per-run record; evaluations = mu + generations (one offspring each)."""

    generations: int
    covered: bool
    coverage_generation: Optional[int]
    population: Population
    archive: list
    mu: int
    history: Optional[list] = None
    coverage_trace: Optional[list] = None

    @property
    def evaluations(self) -> int:
        return self.mu + self.generations


class EngineState:
    """Mutable run state; one instance per run, single-threaded."""

    def __init__(self, problem: Problem, config: EngineConfig):
        if config.termination == "coverage" and not problem.has_front:
            raise ValueError("coverage termination needs a problem with an analytic front")
        if problem.genotype == "bits":
            if config.crossover not in _BIT_CX:
                raise ValueError(f"{config.crossover!r} does not apply to bit strings")
            if config.mutation != "bitwise":
                raise ValueError("bit-string problems use bitwise mutation")
        else:
            if config.crossover not in _PERM_CX:
                raise ValueError(f"{config.crossover!r} does not apply to permutations")
            if config.mutation not in ("two-opt", "two-swap"):
                raise ValueError("permutation problems use two-opt or two-swap mutation")
        self.problem = problem
        self.config = config
        n, mu = problem.n, config.mu
        self.rng = RngState.from_seed(config.seed)
        gdtype = np.uint8 if problem.genotype == "bits" else np.int64
        self.pop_geno = np.zeros((mu + 1, n), dtype=gdtype)
        self.pop_f1 = np.zeros(mu + 1, dtype=np.int64)
        self.pop_f2 = np.zeros(mu + 1, dtype=np.int64)
        cap = max(64, mu + 8, problem.front_size + 8) if config.variant.uses_archive else 0
        self.arch_geno = np.zeros((cap, n), dtype=gdtype)
        self.arch_f1 = np.zeros(cap, dtype=np.int64)
        self.arch_f2 = np.zeros(cap, dtype=np.int64)
        self.arch_len = np.zeros(1, dtype=np.int64)
        self.boxes = np.zeros(4, dtype=np.int64)
        self.boxes[kernels.BOX_COVGEN] = -1
        self.coverage_on = 1 if problem.has_front else 0
        self.front_mark = np.zeros(problem.front_size, dtype=np.uint8)
        self.pop_cov = np.zeros(problem.front_size, dtype=np.int64)
        self.rank_buf = np.zeros(mu + 1, dtype=np.int64)
        self.order_buf = np.zeros(mu + 1, dtype=np.int64)
        self.contrib_buf = np.zeros(mu + 1, dtype=np.int64)
        self.inf_buf = np.zeros(mu + 1, dtype=np.uint8)
        self.pend_buf = np.zeros(mu + 1, dtype=np.uint8)
        self.used_buf = np.zeros(n, dtype=np.uint8)
        self.pinv_buf = np.zeros(n, dtype=np.int64)
        self.off_geno = np.zeros(n, dtype=gdtype)
        self.off_obj = np.zeros(2, dtype=np.int64)
        self.rem_obj = np.zeros(2, dtype=np.int64)
        self._initialize()

    # -- setup -------------------------------------------------------------

    def _initialize(self):
        p, c = self.problem, self.config
        for m in range(c.mu):
            row = self.pop_geno[m]
            if p.genotype == "bits":
                kernels.fill_random_bits(self.rng.state, row)
                if p.prob_id == kernels.PROB_KP:
                    kernels.kp_repair(row, p.kp_w, p.kp_cap, p.kp_order)
                f1, f2 = kernels.eval_bits(p.prob_id, row, p.n, p.k, p.a,
                                           p.kp_p1, p.kp_p2,
                                           p.nk_n1, p.nk_t1, p.nk_n2, p.nk_t2)
            else:
                kernels.fill_random_perm(self.rng.state, row)
                f1, f2 = kernels.eval_perm(p.prob_id, row, p.n,
                                           p.tsp_d1, p.tsp_d2,
                                           p.qap_dist, p.qap_f1, p.qap_f2)
            self.pop_f1[m] = f1
            self.pop_f2[m] = f2
        if c.variant.uses_archive and c.seed_archive:
            for m in range(c.mu):
                ins = kernels.archive_insert(self.arch_f1, self.arch_f2,
                                             self.arch_geno, self.arch_len,
                                             self.pop_f1[m], self.pop_f2[m],
                                             self.pop_geno[m])
                if ins == 1 and self.coverage_on:
                    kernels.mark_archive_coverage(p.front_f1, p.front_f2,
                                                  self.front_mark, self.boxes,
                                                  self.pop_f1[m], self.pop_f2[m])
        elif c.variant is Variant.LARGE_POP and self.coverage_on:
            for m in range(c.mu):
                kernels.pop_coverage_add(p.front_f1, p.front_f2, self.pop_cov,
                                         self.boxes, self.pop_f1[m], self.pop_f2[m])
        if self.coverage_on and self.boxes[kernels.BOX_DISTINCT] == p.front_size:
            self.boxes[kernels.BOX_COVERED] = 1
            self.boxes[kernels.BOX_COVGEN] = 0

    # -- accessors ----------------------------------------------------------

    @property
    def generation(self) -> int:
        return int(self.boxes[kernels.BOX_GENS])

    @property
    def covered(self) -> bool:
        return bool(self.boxes[kernels.BOX_COVERED])

    @property
    def archive_size(self) -> int:
        return int(self.arch_len[0])

    def _vector(self, f1: int, f2: int) -> ObjectiveVector:
        den = self.problem.denominator
        return ObjectiveVector(Fraction(int(f1), den), Fraction(int(f2), den))

    def _decode(self, row: np.ndarray):
        if self.problem.genotype == "bits":
            return BitString(row)
        return Permutation(row)

    def population_solutions(self) -> list:
        return [EvaluatedSolution(self._decode(self.pop_geno[m]),
                                  self._vector(self.pop_f1[m], self.pop_f2[m]))
                for m in range(self.config.mu)]

    def archive_solutions(self) -> list:
        return [EvaluatedSolution(self._decode(self.arch_geno[m]),
                                  self._vector(self.arch_f1[m], self.arch_f2[m]))
                for m in range(self.archive_size)]

    # -- stepping -----------------------------------------------------------

    def _grow_archive(self):
        new_cap = max(64, 2 * self.arch_f1.shape[0])
        length = self.archive_size
        for name in ("arch_f1", "arch_f2"):
            old = getattr(self, name)
            new = np.zeros(new_cap, dtype=np.int64)
            new[:length] = old[:length]
            setattr(self, name, new)
        old = self.arch_geno
        new = np.zeros((new_cap, old.shape[1]), dtype=old.dtype)
        new[:length] = old[:length]
        self.arch_geno = new

    def _ensure_archive_capacity(self):
        if self.config.variant.uses_archive and self.archive_size + 1 > self.arch_f1.shape[0]:
            self._grow_archive()

    def step(self) -> StepInfo:
        """Advance exactly one generation (one offspring evaluation)."""
        p, c = self.problem, self.config
        self._ensure_archive_capacity()
        if p.genotype == "bits":
            kernels.step_bits(self.rng.state, p.prob_id, p.n, p.k, p.a,
                              p.kp_p1, p.kp_p2, p.kp_w, p.kp_cap, p.kp_order,
                              p.nk_n1, p.nk_t1, p.nk_n2, p.nk_t2,
                              c.variant.kernel_code, c.mu, float(c.p_c),
                              _CX_CODES[c.crossover],
                              self.pop_geno, self.pop_f1, self.pop_f2,
                              self.arch_geno, self.arch_f1, self.arch_f2, self.arch_len,
                              self.coverage_on, p.front_f1, p.front_f2,
                              self.front_mark, self.pop_cov, self.boxes,
                              self.rank_buf, self.order_buf, self.contrib_buf,
                              self.inf_buf, self.pend_buf,
                              self.off_geno, self.off_obj, self.rem_obj)
        else:
            kernels.step_perm(self.rng.state, p.prob_id, p.n,
                              p.tsp_d1, p.tsp_d2, p.qap_dist, p.qap_f1, p.qap_f2,
                              c.variant.kernel_code, c.mu, float(c.p_c),
                              _CX_CODES[c.crossover], _MUT_CODES[c.mutation],
                              float(c.mutation_rate),
                              self.pop_geno, self.pop_f1, self.pop_f2,
                              self.arch_geno, self.arch_f1, self.arch_f2, self.arch_len,
                              self.rank_buf, self.order_buf, self.contrib_buf,
                              self.inf_buf, self.pend_buf,
                              self.used_buf, self.pinv_buf,
                              self.off_geno, self.off_obj, self.rem_obj)
        self.boxes[kernels.BOX_GENS] += 1
        if (self.coverage_on and self.boxes[kernels.BOX_COVERED] == 0
                and self.boxes[kernels.BOX_DISTINCT] == p.front_size):
            self.boxes[kernels.BOX_COVERED] = 1
            self.boxes[kernels.BOX_COVGEN] = self.boxes[kernels.BOX_GENS]
        return StepInfo(generation=self.generation,
                        offspring_genotype=self._decode(self.off_geno.copy()),
                        offspring_objectives=self._vector(self.off_obj[0], self.off_obj[1]),
                        removed_objectives=self._vector(self.rem_obj[0], self.rem_obj[1]),
                        archive_size=self.archive_size,
                        covered=self.covered)

    def run_to_end(self):
        """Run until coverage (if configured) or the generation budget."""
        p, c = self.problem, self.config
        stop_on_cover = 1 if c.termination == "coverage" else 0
        while True:
            if p.genotype == "bits":
                status = kernels.run_bits(self.rng.state, p.prob_id, p.n, p.k, p.a,
                                          p.kp_p1, p.kp_p2, p.kp_w, p.kp_cap, p.kp_order,
                                          p.nk_n1, p.nk_t1, p.nk_n2, p.nk_t2,
                                          c.variant.kernel_code, c.mu, float(c.p_c),
                                          _CX_CODES[c.crossover],
                                          self.pop_geno, self.pop_f1, self.pop_f2,
                                          self.arch_geno, self.arch_f1, self.arch_f2,
                                          self.arch_len,
                                          self.coverage_on, stop_on_cover,
                                          p.front_f1, p.front_f2,
                                          self.front_mark, self.pop_cov, self.boxes,
                                          c.max_generations,
                                          self.rank_buf, self.order_buf,
                                          self.contrib_buf, self.inf_buf, self.pend_buf,
                                          self.off_geno, self.off_obj, self.rem_obj)
            else:
                status = kernels.run_perm(self.rng.state, p.prob_id, p.n,
                                          p.tsp_d1, p.tsp_d2, p.qap_dist,
                                          p.qap_f1, p.qap_f2,
                                          c.variant.kernel_code, c.mu, float(c.p_c),
                                          _CX_CODES[c.crossover], _MUT_CODES[c.mutation],
                                          float(c.mutation_rate),
                                          self.pop_geno, self.pop_f1, self.pop_f2,
                                          self.arch_geno, self.arch_f1, self.arch_f2,
                                          self.arch_len,
                                          self.boxes, c.max_generations,
                                          self.rank_buf, self.order_buf,
                                          self.contrib_buf, self.inf_buf, self.pend_buf,
                                          self.used_buf, self.pinv_buf,
                                          self.off_geno, self.off_obj, self.rem_obj)
            if status == kernels.STATUS_GROW:
                self._grow_archive()
                continue
            return

    def result(self) -> RunResult:
        covered = self.covered
        covgen = int(self.boxes[kernels.BOX_COVGEN]) if covered else None
        return RunResult(generations=self.generation, covered=covered,
                         coverage_generation=covgen,
                         population=Population(self.population_solutions(), self.config.mu),
                         archive=self.archive_solutions(), mu=self.config.mu)


def sms_emoa_step(state: EngineState) -> StepInfo:
    """One generation of the loop (exposed for traced runs and tests)."""
    return state.step()


def sms_emoa_run(problem: Problem, config: EngineConfig,
                 record_history: bool = False) -> RunResult:
    """Run to coverage or budget; deterministic in (problem, config, seed).

    With record_history=True every evaluated solution (initial population
    plus one offspring per generation) and a per-generation coverage flag
    are attached to the result; the trajectory is identical either way.
    """
    state = EngineState(problem, config)
    if not record_history:
        state.run_to_end()
        return state.result()
    history = state.population_solutions()
    coverage_trace: list[bool] = []
    stop = config.termination == "coverage"
    while state.generation < config.max_generations and not (stop and state.covered):
        info = state.step()
        history.append(EvaluatedSolution(info.offspring_genotype,
                                         info.offspring_objectives))
        coverage_trace.append(info.covered)
    result = state.result()
    result.history = history
    result.coverage_trace = coverage_trace
    return result


def write_trace(path, infos) -> None:
    """Newline-delimited JSON trace export."""
    with open(path, "w") as fh:
        for info in infos:
            fh.write(json.dumps({
                "generation": info.generation,
                "offspring_objectives": [float(v) for v in info.offspring_objectives],
                "removed_objectives": [float(v) for v in info.removed_objectives],
                "archive_size": info.archive_size,
            }) + "\n")
