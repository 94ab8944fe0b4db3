"""Command-line surface.

Exit codes: 0 success, 2 invalid arguments, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from .core import ObjectiveVector
from .engine import Variant
from .harness import (ExperimentSpec, emit_front_plot, run_experiment,
                      run_single)
from .problems import practical
from .stats import hv_report, wilcoxon_rank_sum


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smsemoa",
                                     description="SMS-EMOA with non-dominated archives")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one configuration")
    p_run.add_argument("--problem", required=True,
                       choices=["ojzj", "ojzj_ss", "omm", "lotz", "kp", "nk", "tsp", "qap"])
    p_run.add_argument("--variant", default="AR", type=Variant.parse)
    p_run.add_argument("--n", required=True, type=int)
    p_run.add_argument("--k", type=int, default=2)
    p_run.add_argument("--a", type=int, default=2)
    p_run.add_argument("--mu", type=int, default=None)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--budget", type=int, default=1_000_000,
                       help="generation cap (benchmarks) or evaluation budget (practical)")
    p_run.add_argument("--p-c", type=float, default=None, dest="p_c")
    p_run.add_argument("--crossover", default=None,
                       choices=["none", "one-point", "uniform", "ox", "cx"])
    p_run.add_argument("--no-archive-seeding", action="store_true")
    p_run.add_argument("--trace", default=None, metavar="PATH",
                       help="newline-delimited JSON per-generation trace")

    p_exp = sub.add_parser("experiment", help="run a full experiment")
    p_exp.add_argument("--id", required=True, dest="experiment",
                       choices=["table2", "table3", "table4", "fronts"])
    p_exp.add_argument("--scale", type=float, default=1.0)
    p_exp.add_argument("--runs", type=int, default=None)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--out", required=True)
    p_exp.add_argument("--n", type=int, nargs="*", default=None,
                       help="problem sizes (overrides the defaults)")
    p_exp.add_argument("--budget", type=int, default=None)
    p_exp.add_argument("--problems", nargs="*", default=None,
                       choices=["kp", "nk", "tsp", "qap"])
    p_exp.add_argument("--archive-mu", type=int, default=None, dest="archive_mu",
                       help="population size of the archive variants (table2/3)")
    p_exp.add_argument("--workers", type=int, default=1)

    p_inst = sub.add_parser("instances", help="generate a problem instance")
    p_inst.add_argument("--kind", required=True, choices=["kp", "nk", "tsp", "qap"])
    p_inst.add_argument("--n", required=True, type=int)
    p_inst.add_argument("--seed", type=int, default=0)
    p_inst.add_argument("--out", required=True)

    p_stats = sub.add_parser("stats", help="rank-sum test between two value columns")
    p_stats.add_argument("--a", required=True, dest="file_a")
    p_stats.add_argument("--b", required=True, dest="file_b")

    p_hv = sub.add_parser("hv", help="hypervolume of a front file")
    p_hv.add_argument("--front", required=True)
    p_hv.add_argument("--ref", required=True, help='reference point "r1,r2"')
    p_hv.add_argument("--orientation", default="max", choices=["max", "min"])

    p_plot = sub.add_parser("plot", help="scatter plot from a fronts.csv directory")
    p_plot.add_argument("--results", required=True)
    p_plot.add_argument("--out", required=True)
    return parser


def _read_values(path: str) -> list[float]:
    """Value column of a results CSV, or one number per line."""
    with open(path, newline="") as fh:
        first = fh.readline()
        fh.seek(0)
        if "value" in first:
            return [float(rec["value"]) for rec in csv.DictReader(fh)]
        return [float(line.strip()) for line in fh if line.strip()]


def _read_front(path: str) -> list[ObjectiveVector]:
    pts = []
    with open(path, newline="") as fh:
        first = fh.readline()
        fh.seek(0)
        if "f1" in first:
            for rec in csv.DictReader(fh):
                pts.append(ObjectiveVector(Fraction(rec["f1"]), Fraction(rec["f2"])))
        else:
            for line in fh:
                if line.strip():
                    a, b = line.replace(",", " ").split()
                    pts.append(ObjectiveVector(Fraction(a), Fraction(b)))
    return pts


def _cmd_run(args) -> int:
    summary = run_single(problem_name=args.problem, variant=args.variant,
                         n=args.n, seed=args.seed, budget=args.budget,
                         k=args.k, a=args.a, mu=args.mu,
                         trace_path=args.trace, p_c=args.p_c,
                         crossover=args.crossover,
                         seed_archive=not args.no_archive_seeding)
    print(json.dumps(summary, indent=2))
    return 0


def _cmd_experiment(args) -> int:
    spec = ExperimentSpec(experiment=args.experiment, base_seed=args.seed,
                          out_dir=args.out, scale=args.scale, runs=args.runs,
                          n_values=tuple(args.n) if args.n else None,
                          sizes=tuple(args.n) if args.n else None,
                          problems=tuple(args.problems) if args.problems else None,
                          budget=args.budget, archive_mu=args.archive_mu,
                          workers=args.workers)
    run_experiment(spec)
    print(f"wrote {args.experiment} results to {args.out}")
    return 0


def _cmd_instances(args) -> int:
    inst = practical.generate(args.kind, args.n, args.seed)
    practical.save_instance(inst, args.out)
    print(f"wrote {args.kind}-{args.n} instance to {args.out}")
    return 0


def _cmd_stats(args) -> int:
    xs = _read_values(args.file_a)
    ys = _read_values(args.file_b)
    u, p = wilcoxon_rank_sum(xs, ys)
    print(json.dumps({"u": u, "p": p, "n_a": len(xs), "n_b": len(ys)}))
    return 0


def _cmd_hv(args) -> int:
    r1, r2 = args.ref.split(",")
    ref = ObjectiveVector(Fraction(r1.strip()), Fraction(r2.strip()))
    front = _read_front(args.front)
    value = hv_report(front, ref, args.orientation)
    print(float(value))
    return 0


def _cmd_plot(args) -> int:
    fronts_file = Path(args.results) / "fronts.csv"
    series: dict[str, list] = {}
    with open(fronts_file, newline="") as fh:
        for rec in csv.DictReader(fh):
            series.setdefault(rec["variant"], []).append(
                (float(rec["f1"]), float(rec["f2"])))
    emit_front_plot(series, args.out)
    print(f"wrote plot to {args.out}")
    return 0


_COMMANDS = {"run": _cmd_run, "experiment": _cmd_experiment,
             "instances": _cmd_instances, "stats": _cmd_stats,
             "hv": _cmd_hv, "plot": _cmd_plot}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc.filename or ''}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
