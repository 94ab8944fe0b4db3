"""Experiment drivers, result persistence and plot emission.

Protocols at configurable desk scale: the generation-count sweeps run the
large-population, archive-store and archive-reuse variants to front
coverage (capped); the hypervolume comparison runs store vs reuse on the
four practical problems against a sampled reference point, with a
rank-sum significance flag. Every table cell is recomputable from the
persisted per-run rows alone.

Seed discipline: each cell gets a stream seed folded from the base seed
and a textual cell label; run r inside a cell uses derive_run_seed(cell
seed, r). Instance generation and reference-point sampling use their own
labeled streams. Run-level parallelism never changes results: rows are
merged by run index.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from ._svg import scatter_svg
from .core import ObjectiveVector
from .engine import (EngineConfig, Problem, RunResult, Variant,
                     problem_from_benchmark, problem_from_instance,
                     sms_emoa_run, variant_population_size)
from .problems import benchmark, practical
from .rng import RngState, derive_run_seed, fold_seed
from .stats import estimate_reference_point, hv_report, mean_std, wilcoxon_rank_sum

CSV_HEADER = ("experiment", "problem", "n", "variant", "run", "seed",
              "metric", "value", "covered", "censored")

TABLE3_CAP = 1_000_000
TABLE2_CAP = 10_000_000
SIGNIFICANCE_ALPHA = 0.05


@dataclass
class ExperimentSpec:
    experiment: str  # table2 | table3 | table4 | fronts
    base_seed: int = 0
    out_dir: Optional[str] = None
    scale: float = 1.0
    runs: Optional[int] = None           # overrides the per-cell defaults
    n_values: Optional[tuple] = None     # table2/table3 problem sizes
    sizes: Optional[tuple] = None        # table4/fronts problem sizes
    problems: Optional[tuple] = None     # table4/fronts problem kinds
    budget: Optional[int] = None         # table4/fronts evaluation budget
    cap_generations: Optional[int] = None
    archive_mu: Optional[int] = None     # population size of the archive variants
    workers: int = 1

    def __post_init__(self):
        if self.experiment not in ("table2", "table3", "table4", "fronts"):
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if not 0.0 < self.scale <= 1.0:
            raise ValueError("scale must lie in (0, 1]")
        if self.runs is not None and self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class ResultRow:
    experiment: str
    problem: str
    n: int
    variant: str
    run: int
    seed: int
    metric: str
    value: float
    covered: bool
    censored: bool
    wall_time: float = field(default=0.0, compare=False)  # not persisted

    def csv_record(self) -> list[str]:
        value = str(int(self.value)) if self.metric == "generations" else repr(float(self.value))
        return [self.experiment, self.problem, str(self.n), self.variant,
                str(self.run), str(self.seed), self.metric, value,
                "true" if self.covered else "false",
                "true" if self.censored else "false"]


def write_rows_csv(rows: Sequence[ResultRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow(r.csv_record())


def read_rows_csv(path) -> list[ResultRow]:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for rec in reader:
            value = int(rec["value"]) if rec["metric"] == "generations" else float(rec["value"])
            rows.append(ResultRow(experiment=rec["experiment"], problem=rec["problem"],
                                  n=int(rec["n"]), variant=rec["variant"],
                                  run=int(rec["run"]), seed=int(rec["seed"]),
                                  metric=rec["metric"], value=value,
                                  covered=rec["covered"] == "true",
                                  censored=rec["censored"] == "true"))
    return rows


def write_manifest(spec: ExperimentSpec, cells: dict, path) -> None:
    doc = {"experiment": spec.experiment, "spec": asdict(spec),
           "version": __version__, "cell_seeds": cells}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# task execution (top-level function so a process pool can pickle it)


def _run_task(task: dict) -> ResultRow:
    problem: Problem = task["problem"]
    config: EngineConfig = task["config"]
    t0 = time.perf_counter()
    res = sms_emoa_run(problem, config)
    wall = time.perf_counter() - t0
    if task["metric"] == "generations":
        value = float(res.generations)
        covered = res.covered
        censored = not res.covered
    else:
        front = _original_vectors(res, problem)
        orientation = "min" if problem.minimize else "max"
        value = float(hv_report(front, task["ref"], orientation))
        covered = False
        censored = False
    return ResultRow(experiment=task["experiment"], problem=problem.name,
                     n=problem.n, variant=config.variant.value, run=task["run"],
                     seed=config.seed, metric=task["metric"], value=value,
                     covered=covered, censored=censored, wall_time=wall)


def _original_vectors(res: RunResult, problem: Problem) -> list[ObjectiveVector]:
    """Final archive objective vectors in the problem's original orientation."""
    vecs = [m.objectives for m in res.archive]
    if problem.minimize:
        vecs = [ObjectiveVector(-v.f1, -v.f2) for v in vecs]
    return vecs


def _execute(tasks: list, workers: int) -> list[ResultRow]:
    if workers <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_run_task, tasks))


# ---------------------------------------------------------------------------
# generation-count sweeps (OneJumpZeroJump family)


def _scaled_runs(spec: ExperimentSpec, n: int) -> int:
    if spec.runs is not None:
        base = spec.runs
    else:
        base = 1000 if n <= 15 else 200  # desk-scale default
    return max(1, round(base * spec.scale))


def _generation_rows(spec: ExperimentSpec, kind: str, k: int, a: int,
                     cap: int, archive_mu: int) -> tuple[list[ResultRow], dict]:
    n_values = spec.n_values or (15, 20)
    cells: dict[str, int] = {}
    tasks = []
    for n in n_values:
        bspec = benchmark.BenchmarkSpec(kind=kind, n=n, k=k, a=a)
        problem = problem_from_benchmark(bspec)
        runs = _scaled_runs(spec, n)
        for variant in (Variant.LARGE_POP, Variant.ARCHIVE_STORE, Variant.ARCHIVE_REUSE):
            label = f"{spec.experiment}/{kind}/n={n}/variant={variant.value}"
            cell_seed = fold_seed(spec.base_seed, label)
            cells[label] = cell_seed
            mu = variant_population_size(bspec, variant)
            if variant is not Variant.LARGE_POP:
                mu = spec.archive_mu or archive_mu
            for r in range(runs):
                config = EngineConfig(variant=variant, mu=mu,
                                      seed=derive_run_seed(cell_seed, r),
                                      max_generations=cap,
                                      termination="coverage")
                tasks.append({"experiment": spec.experiment, "problem": problem,
                              "config": config, "run": r, "metric": "generations"})
    return _execute(tasks, spec.workers), cells


def summarize_generations(rows: Sequence[ResultRow]) -> list[dict]:
    """Per-cell mean/std of generations plus censoring flags (pure fold)."""
    cells: dict[tuple, list[ResultRow]] = {}
    for r in rows:
        cells.setdefault((r.problem, r.n, r.variant), []).append(r)
    out = []
    for (prob, n, variant), cell in sorted(cells.items()):
        values = [r.value for r in sorted(cell, key=lambda r: r.run)]
        mean, std = mean_std(values) if len(values) > 1 else (values[0], 0.0)
        censored = sum(1 for r in cell if r.censored)
        out.append({"problem": prob, "n": n, "variant": variant,
                    "runs": len(cell), "mean_generations": mean,
                    "std_generations": std, "censored_runs": censored,
                    "censored": censored > 0})
    return out


def _write_generation_summary(summary: list[dict], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["problem", "n", "variant", "runs", "mean_generations",
                    "std_generations", "censored_runs", "display"])
        for s in summary:
            display = "-" if s["censored"] else f"{s['mean_generations']:.2f}"
            w.writerow([s["problem"], s["n"], s["variant"], s["runs"],
                        repr(s["mean_generations"]), repr(s["std_generations"]),
                        s["censored_runs"], display])


def run_table2(spec: ExperimentSpec) -> list[ResultRow]:
    """Stepping-stone jump benchmark sweep (k=3, a=2), three variants."""
    cap = spec.cap_generations or TABLE2_CAP
    rows, cells = _generation_rows(spec, benchmark.OJZJ_SS, k=3, a=2, cap=cap,
                                   archive_mu=5)
    _persist_generation_experiment(spec, rows, cells)
    return rows


def run_table3(spec: ExperimentSpec) -> list[ResultRow]:
    """Plain jump benchmark sweep (k=2); runs beyond the cap are censored.

    The archive variants default to mu=2 here: the published per-size means
    and the store-variant censoring are only reproducible at that size (it
    is also the coverage theorem's premise), while the stepping-stone sweep
    matches mu=5. Override with ExperimentSpec.archive_mu.
    """
    cap = spec.cap_generations or TABLE3_CAP
    rows, cells = _generation_rows(spec, benchmark.OJZJ, k=2, a=0, cap=cap,
                                   archive_mu=2)
    _persist_generation_experiment(spec, rows, cells)
    return rows


def _persist_generation_experiment(spec, rows, cells):
    if spec.out_dir is None:
        return
    out = Path(spec.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_rows_csv(rows, out / "results.csv")
    _write_generation_summary(summarize_generations(rows), out / "summary.csv")
    write_manifest(spec, cells, out / "manifest.json")


# ---------------------------------------------------------------------------
# hypervolume comparison on the practical problems


def _practical_problem(spec: ExperimentSpec, kind: str, n: int) -> tuple[Problem, ObjectiveVector]:
    instance = practical.generate(kind, n, fold_seed(spec.base_seed, f"instance/{kind}/{n}"))
    problem = problem_from_instance(instance)
    ref_rng = RngState.from_seed(fold_seed(spec.base_seed, f"refpoint/{kind}/{n}"))
    ref = estimate_reference_point(instance, ref_rng)
    return problem, ref


def _practical_config(problem: Problem, variant: Variant, seed: int,
                      budget: int) -> EngineConfig:
    mu = variant_population_size(problem, variant)
    ops = problem.default_operators()
    return EngineConfig(variant=variant, mu=mu, seed=seed,
                        max_generations=max(0, budget - mu),
                        termination="budget", crossover=ops["crossover"],
                        p_c=ops["p_c"], mutation=ops["mutation"],
                        mutation_rate=ops.get("mutation_rate", 0.05))


def run_table4(spec: ExperimentSpec) -> list[ResultRow]:
    """Final-archive hypervolume of store vs reuse on KP/NK/TSP/QAP."""
    problems = spec.problems or ("kp", "nk", "tsp", "qap")
    sizes = spec.sizes or (100,)
    budget = max(200, round((spec.budget or 100_000) * spec.scale))
    runs = max(1, round((spec.runs or 10) * spec.scale))
    cells: dict[str, int] = {}
    tasks = []
    for kind in problems:
        for n in sizes:
            problem, ref = _practical_problem(spec, kind, n)
            for variant in (Variant.ARCHIVE_STORE, Variant.ARCHIVE_REUSE):
                label = f"table4/{kind}/n={n}/variant={variant.value}"
                cell_seed = fold_seed(spec.base_seed, label)
                cells[label] = cell_seed
                for r in range(runs):
                    config = _practical_config(problem, variant,
                                               derive_run_seed(cell_seed, r), budget)
                    tasks.append({"experiment": "table4", "problem": problem,
                                  "config": config, "run": r, "metric": "hv",
                                  "ref": ref})
    rows = _execute(tasks, spec.workers)
    if spec.out_dir is not None:
        out = Path(spec.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_rows_csv(rows, out / "results.csv")
        _write_hv_summary(summarize_hv(rows), out / "summary.csv")
        write_manifest(spec, cells, out / "manifest.json")
    return rows


def summarize_hv(rows: Sequence[ResultRow]) -> list[dict]:
    """Mean/std per variant and the rank-sum significance flag (pure fold)."""
    cells: dict[tuple, dict[str, list[float]]] = {}
    for r in rows:
        cells.setdefault((r.problem, r.n), {}).setdefault(r.variant, []).append(r.value)
    out = []
    for (prob, n), per_variant in sorted(cells.items()):
        entry = {"problem": prob, "n": n}
        for variant, values in sorted(per_variant.items()):
            mean, std = mean_std(values) if len(values) > 1 else (values[0], 0.0)
            entry[f"mean_{variant}"] = mean
            entry[f"std_{variant}"] = std
        a = per_variant.get("A", [])
        ar = per_variant.get("AR", [])
        if a and ar:
            _, p = wilcoxon_rank_sum(a, ar)
            entry["p_value"] = p
            entry["significant"] = p < SIGNIFICANCE_ALPHA
        out.append(entry)
    return out


def _write_hv_summary(summary: list[dict], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["problem", "n", "mean_A", "std_A", "mean_AR", "std_AR",
                    "p_value", "significance"])
        for s in summary:
            w.writerow([s["problem"], s["n"],
                        repr(s.get("mean_A", 0.0)), repr(s.get("std_A", 0.0)),
                        repr(s.get("mean_AR", 0.0)), repr(s.get("std_AR", 0.0)),
                        repr(s.get("p_value", 1.0)),
                        "dagger" if s.get("significant") else "none"])


# ---------------------------------------------------------------------------
# final-front scatter data and plots


def run_fronts(spec: ExperimentSpec) -> dict:
    """One run per (problem, size, variant); archives become scatter data."""
    problems = spec.problems or ("kp", "nk", "tsp", "qap")
    sizes = spec.sizes or (100,)
    budget = max(200, round((spec.budget or 100_000) * spec.scale))
    fronts: dict[tuple, dict[str, list]] = {}
    cells: dict[str, int] = {}
    for kind in problems:
        for n in sizes:
            problem, _ = _practical_problem(spec, kind, n)
            series: dict[str, list] = {}
            for variant in (Variant.ARCHIVE_STORE, Variant.ARCHIVE_REUSE):
                label = f"fronts/{kind}/n={n}/variant={variant.value}"
                cell_seed = fold_seed(spec.base_seed, label)
                cells[label] = cell_seed
                config = _practical_config(problem, variant,
                                           derive_run_seed(cell_seed, 0), budget)
                res = sms_emoa_run(problem, config)
                pts = sorted((float(v.f1), float(v.f2))
                             for v in _original_vectors(res, problem))
                series[variant.value] = pts
            fronts[(kind, n)] = series
    if spec.out_dir is not None:
        out = Path(spec.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "fronts.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["problem", "n", "variant", "f1", "f2"])
            for (kind, n), series in sorted(fronts.items()):
                for variant, pts in sorted(series.items()):
                    for x, y in pts:
                        w.writerow([kind, n, variant, repr(x), repr(y)])
        for (kind, n), series in sorted(fronts.items()):
            emit_front_plot(series, out / f"fronts_{kind}_{n}.svg",
                            title=f"{kind.upper()}-{n}")
        write_manifest(spec, cells, out / "manifest.json")
    return fronts


def emit_front_plot(series: dict, out_path, title: str = "",
                    xlabel: str = "f1", ylabel: str = "f2") -> None:
    """Write a deterministic scatter SVG of the variants' final fronts."""
    svg = scatter_svg(series, title=title, xlabel=xlabel, ylabel=ylabel)
    with open(out_path, "w") as fh:
        fh.write(svg)


def run_experiment(spec: ExperimentSpec):
    if spec.experiment == "table2":
        return run_table2(spec)
    if spec.experiment == "table3":
        return run_table3(spec)
    if spec.experiment == "table4":
        return run_table4(spec)
    return run_fronts(spec)


# ---------------------------------------------------------------------------
# single runs for the CLI


def run_single(problem_name: str, variant: Variant, n: int, seed: int,
               budget: int, k: int = 2, a: int = 2, mu: Optional[int] = None,
               trace_path=None, p_c: Optional[float] = None,
               crossover: Optional[str] = None,
               seed_archive: bool = True) -> dict:
    """One run; benchmarks stop at front coverage, practical at the budget.

    For practical problems the instance is generated from the labeled
    stream fold(seed, "instance/<kind>/<n>") and the run itself from
    fold(seed, "run"), so one seed reproduces the whole setup.
    """
    if problem_name in benchmark.KINDS:
        bspec = benchmark.BenchmarkSpec(kind=problem_name, n=n, k=k, a=a)
        problem = problem_from_benchmark(bspec)
        termination = "coverage"
    else:
        instance = practical.generate(problem_name, n,
                                      fold_seed(seed, f"instance/{problem_name}/{n}"))
        problem = problem_from_instance(instance)
        termination = "budget"
    mu = mu or variant_population_size(problem.spec or problem.instance, variant)
    ops = problem.default_operators()
    if crossover is not None:
        ops["crossover"] = crossover
    if p_c is not None:
        ops["p_c"] = p_c
    config = EngineConfig(variant=variant, mu=mu, seed=fold_seed(seed, "run"),
                          max_generations=max(0, budget - mu) if termination == "budget" else budget,
                          termination=termination, crossover=ops["crossover"],
                          p_c=ops["p_c"], mutation=ops["mutation"],
                          mutation_rate=ops.get("mutation_rate", 0.05),
                          seed_archive=seed_archive)
    if trace_path is None:
        res = sms_emoa_run(problem, config)
    else:
        from .engine import EngineState
        state = EngineState(problem, config)
        stop = config.termination == "coverage"
        with open(trace_path, "w") as fh:
            while state.generation < config.max_generations and not (stop and state.covered):
                info = state.step()
                fh.write(json.dumps({
                    "generation": info.generation,
                    "offspring_objectives": [float(v) for v in info.offspring_objectives],
                    "removed_objectives": [float(v) for v in info.removed_objectives],
                    "archive_size": info.archive_size,
                }) + "\n")
        res = state.result()
    return {"problem": problem.name, "n": problem.n, "variant": variant.value,
            "mu": mu, "seed": seed, "generations": res.generations,
            "evaluations": res.evaluations, "covered": res.covered,
            "coverage_generation": res.coverage_generation,
            "archive_size": len(res.archive)}
