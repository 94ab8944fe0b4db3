"""The jit and pure-Python kernel backends must agree bit for bit."""

import json
import os
import subprocess
import sys

SCRIPT = r"""
import json
import numpy as np
from smsemoa._accel import NUMBA_ENABLED
from smsemoa.engine import EngineConfig, Variant, problem_from_benchmark, \
    problem_from_instance, sms_emoa_run
from smsemoa.problems.benchmark import BenchmarkSpec
from smsemoa.problems.practical import generate_tsp
from smsemoa.rng import RngState

out = {"numba": NUMBA_ENABLED}
rng = RngState.from_seed(123)
out["stream"] = [rng.next_u64() for _ in range(5)]

problem = problem_from_benchmark(BenchmarkSpec(kind="ojzj", n=10, k=2))
cfg = EngineConfig(variant=Variant.ARCHIVE_REUSE, mu=4, seed=99,
                   max_generations=1500, termination="coverage")
res = sms_emoa_run(problem, cfg)
out["bits"] = [res.generations, res.covered,
               sorted(str(m.objectives) for m in res.population),
               [str(m.objectives) for m in res.archive]]

tsp = problem_from_instance(generate_tsp(6, seed=7))
cfg = EngineConfig(variant=Variant.ARCHIVE_STORE, mu=5, seed=5,
                   max_generations=300, termination="budget",
                   crossover="ox", p_c=1.0, mutation="two-opt",
                   mutation_rate=0.05)
res = sms_emoa_run(tsp, cfg)
out["perm"] = [res.generations,
               sorted(str(m.objectives) for m in res.population),
               [str(m.objectives) for m in res.archive]]
print(json.dumps(out))
"""


def run_with_backend(enabled: bool) -> dict:
    env = dict(os.environ)
    env["SMSEMOA_NUMBA"] = "1" if enabled else "0"
    proc = subprocess.run([sys.executable, "-c", SCRIPT], env=env,
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_backends_bit_identical():
    jit = run_with_backend(True)
    pure = run_with_backend(False)
    assert jit["numba"] is True
    assert pure["numba"] is False
    for key in ("stream", "bits", "perm"):
        assert jit[key] == pure[key], key
