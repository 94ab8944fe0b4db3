import csv
import json

import pytest

from smsemoa.harness import (ExperimentSpec, ResultRow, emit_front_plot,
                             read_rows_csv, run_fronts, run_table2,
                             run_table3, run_table4, summarize_generations,
                             summarize_hv, write_rows_csv)


def tiny_table3(**kw):
    defaults = dict(experiment="table3", base_seed=42, n_values=(8,), runs=4,
                    cap_generations=3000)
    defaults.update(kw)
    return ExperimentSpec(**defaults)


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec(experiment="table9")
    with pytest.raises(ValueError):
        ExperimentSpec(experiment="table2", scale=0)
    with pytest.raises(ValueError):
        ExperimentSpec(experiment="table2", runs=0)
    with pytest.raises(ValueError):
        ExperimentSpec(experiment="table2", workers=0)


def test_csv_round_trip(tmp_path):
    rows = [ResultRow("table3", "ojzj", 8, "AR", 0, 123, "generations", 42.0,
                      True, False, wall_time=0.5),
            ResultRow("table4", "kp", 100, "A", 3, 99, "hv", 1234.5678,
                      False, False)]
    path = tmp_path / "rows.csv"
    write_rows_csv(rows, path)
    assert read_rows_csv(path) == rows  # wall_time excluded from equality
    header = path.read_text().splitlines()[0]
    assert header == "experiment,problem,n,variant,run,seed,metric,value,covered,censored"


def test_table3_row_counts_and_schema(tmp_path):
    spec = tiny_table3(out_dir=str(tmp_path / "exp"))
    rows = run_table3(spec)
    assert len(rows) == 1 * 3 * 4  # |n| x |variants| x runs
    assert {r.variant for r in rows} == {"L", "A", "AR"}
    assert all(r.metric == "generations" for r in rows)
    assert (tmp_path / "exp" / "results.csv").exists()
    assert (tmp_path / "exp" / "summary.csv").exists()
    manifest = json.loads((tmp_path / "exp" / "manifest.json").read_text())
    assert manifest["experiment"] == "table3"
    assert len(manifest["cell_seeds"]) == 3


def test_cells_recomputable_from_rows(tmp_path):
    spec = tiny_table3(out_dir=str(tmp_path / "exp"))
    rows = run_table3(spec)
    fresh = summarize_generations(rows)
    reread = summarize_generations(read_rows_csv(tmp_path / "exp" / "results.csv"))
    assert fresh == reread


def test_censoring_semantics():
    rows = run_table3(tiny_table3(cap_generations=40))
    censored = [r for r in rows if r.censored]
    assert censored, "a 40-generation cap must censor some runs"
    for r in censored:
        assert r.value == 40 and not r.covered
    summary = summarize_generations(rows)
    for cell in summary:
        flagged = any(r.censored for r in rows if r.variant == cell["variant"])
        assert cell["censored"] == flagged


def test_deterministic_csv_bytes(tmp_path):
    spec_a = tiny_table3(out_dir=str(tmp_path / "a"))
    spec_b = tiny_table3(out_dir=str(tmp_path / "b"))
    run_table3(spec_a)
    run_table3(spec_b)
    assert (tmp_path / "a" / "results.csv").read_bytes() == \
           (tmp_path / "b" / "results.csv").read_bytes()


def test_worker_pool_merge_matches_sequential():
    seq = run_table3(tiny_table3(runs=2, workers=1))
    par = run_table3(tiny_table3(runs=2, workers=2))
    assert seq == par


def test_scale_factor_contract():
    rows = run_table3(tiny_table3(runs=10, scale=0.5))
    per_cell = len(rows) // 3
    assert per_cell == 5


def test_run_seeds_unique():
    rows = run_table3(tiny_table3(runs=3))
    seeds = [r.seed for r in rows]
    assert len(set(seeds)) == len(seeds)


def test_table2_runs():
    spec = ExperimentSpec(experiment="table2", base_seed=1, n_values=(9,),
                          runs=2, cap_generations=100_000)
    rows = run_table2(spec)
    assert len(rows) == 6
    assert all(r.problem == "ojzj_ss" for r in rows)


def test_table4_schema_and_summary(tmp_path):
    spec = ExperimentSpec(experiment="table4", base_seed=3,
                          out_dir=str(tmp_path / "t4"), problems=("kp",),
                          sizes=(20,), budget=800, runs=4)
    rows = run_table4(spec)
    assert len(rows) == 8
    assert {r.variant for r in rows} == {"A", "AR"}
    assert all(r.metric == "hv" and not r.covered and not r.censored for r in rows)
    summary = summarize_hv(rows)
    assert len(summary) == 1
    cell = summary[0]
    assert {"mean_A", "std_A", "mean_AR", "std_AR", "p_value"} <= set(cell)
    text = (tmp_path / "t4" / "summary.csv").read_text()
    assert text.splitlines()[0].startswith("problem,n,mean_A")


def test_fronts_outputs(tmp_path):
    spec = ExperimentSpec(experiment="fronts", base_seed=5,
                          out_dir=str(tmp_path / "fr"), problems=("kp", "tsp"),
                          sizes=(15,), budget=600)
    fronts = run_fronts(spec)
    assert set(fronts) == {("kp", 15), ("tsp", 15)}
    out = tmp_path / "fr"
    with open(out / "fronts.csv", newline="") as fh:
        recs = list(csv.DictReader(fh))
    assert {r["variant"] for r in recs} == {"A", "AR"}
    assert (out / "fronts_kp_15.svg").exists()
    assert (out / "fronts_tsp_15.svg").exists()
    # tsp rows must be in the original (minimization) orientation
    tsp_vals = [float(r["f1"]) for r in recs if r["problem"] == "tsp"]
    assert all(v > 0 for v in tsp_vals)


def test_plot_deterministic_and_counts(tmp_path):
    series = {"A": [(1.0, 3.0), (2.0, 2.0), (3.0, 1.0)],
              "AR": [(1.5, 2.5), (2.5, 1.5), (3.5, 0.5)]}
    p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
    emit_front_plot(series, p1, title="demo")
    emit_front_plot(series, p2, title="demo")
    b1 = p1.read_bytes()
    assert b1 == p2.read_bytes()
    text = b1.decode()
    # 3 data circles + 1 legend circle for A; 3 crosses + 1 legend cross for AR
    assert text.count("<circle") == 4
    assert text.count("<path") == 4
    assert text.count("<text") >= 4
    assert "demo" in text


def test_plot_empty_series(tmp_path):
    path = tmp_path / "empty.svg"
    emit_front_plot({}, path)
    text = path.read_text()
    assert text.startswith("<svg") and text.rstrip().endswith("</svg>")
    assert "<line" in text  # axes are still drawn
