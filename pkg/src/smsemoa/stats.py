"""Summary statistics, Wilcoxon rank-sum test, HV reference points."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .core import ObjectiveVector
from .engine import Problem, problem_from_instance
from .hypervolume import hv_2d
from .problems import practical
from .rng import RngState

EXACT_LIMIT = 12  # exact rank enumeration up to this combined sample size


def mean_std(samples: Sequence[float]) -> tuple[float, float]:
    """Arithmetic mean and (n-1)-denominator standard deviation."""
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    n = len(samples)
    mean = sum(samples) / n
    var = sum((s - mean) ** 2 for s in samples) / (n - 1)
    return mean, math.sqrt(var)


def _midranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for t in range(i, j + 1):
            ranks[order[t]] = avg
        i = j + 1
    return ranks


def wilcoxon_rank_sum(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """(U statistic of xs, two-sided p).

    Exact p by enumerating rank assignments when the combined size is at
    most 12 and there are no ties; otherwise a normal approximation with
    tie-corrected variance and continuity correction.
    """
    n1, n2 = len(xs), len(ys)
    if n1 == 0 or n2 == 0:
        raise ValueError("both samples must be nonempty")
    combined = list(xs) + list(ys)
    ranks = _midranks(combined)
    r1 = sum(ranks[:n1])
    u1 = r1 - n1 * (n1 + 1) / 2
    total = n1 + n2
    has_ties = len(set(combined)) < total
    if total <= EXACT_LIMIT and not has_ties:
        count = 0
        le = 0
        ge = 0
        base = n1 * (n1 + 1) / 2
        for combo in combinations(range(1, total + 1), n1):
            u = sum(combo) - base
            count += 1
            if u <= u1:
                le += 1
            if u >= u1:
                ge += 1
        p = min(1.0, 2.0 * min(le, ge) / count)
        return u1, p
    mean = n1 * n2 / 2
    # tie correction: subtract sum(t^3 - t) over tie groups
    tie_sum = 0
    seen: dict[float, int] = {}
    for v in combined:
        seen[v] = seen.get(v, 0) + 1
    for t in seen.values():
        tie_sum += t ** 3 - t
    var = (n1 * n2 / 12) * ((total + 1) - tie_sum / (total * (total - 1)))
    if var <= 0:
        return u1, 1.0
    z = max(0.0, abs(u1 - mean) - 0.5) / math.sqrt(var)
    p = min(1.0, math.erfc(z / math.sqrt(2)))
    return u1, p


def _non_dominated_worst(f1: np.ndarray, f2: np.ndarray) -> tuple[int, int]:
    """Componentwise minimum over the non-dominated subset (maximization)."""
    order = np.lexsort((-f2, -f1))
    worst1 = None
    worst2 = None
    best2 = None
    for idx in order:
        a, b = int(f1[idx]), int(f2[idx])
        if best2 is None or b > best2:
            best2 = b
            worst1 = a if worst1 is None else min(worst1, a)
            worst2 = b if worst2 is None else min(worst2, b)
    return worst1, worst2


def estimate_reference_point(instance: practical.Instance,
                             rng: RngState,
                             sample_count: int = 100_000) -> ObjectiveVector:
    """Worst objective values among the non-dominated solutions of a uniform
    sample of the decision space (knapsack samples are repaired first).

    Returned in the problem's original orientation; deterministic in the
    stream seed.
    """
    problem = problem_from_instance(instance)
    out1 = np.empty(sample_count, dtype=np.int64)
    out2 = np.empty(sample_count, dtype=np.int64)
    if problem.genotype == "bits":
        buf = np.empty(problem.n, dtype=np.uint8)
        kernels.sample_eval_bits(rng.state, problem.prob_id, problem.n,
                                 problem.k, problem.a,
                                 problem.kp_p1, problem.kp_p2, problem.kp_w,
                                 problem.kp_cap, problem.kp_order,
                                 problem.nk_n1, problem.nk_t1, problem.nk_n2, problem.nk_t2,
                                 buf, out1, out2)
    else:
        buf = np.empty(problem.n, dtype=np.int64)
        kernels.sample_eval_perm(rng.state, problem.prob_id, problem.n,
                                 problem.tsp_d1, problem.tsp_d2,
                                 problem.qap_dist, problem.qap_f1, problem.qap_f2,
                                 buf, out1, out2)
    w1, w2 = _non_dominated_worst(out1, out2)
    den = problem.denominator
    sign = -1 if problem.minimize else 1
    return ObjectiveVector(Fraction(sign * w1, den), Fraction(sign * w2, den))


def hv_report(front: Iterable[ObjectiveVector], ref: ObjectiveVector,
              orientation: str = "max") -> Fraction:
    """Hypervolume against a reference point in the stated orientation.

    Points not strictly better than the reference in both components
    contribute nothing; for minimization both points and reference are
    negated before the 2-D computation.
    """
    if orientation not in ("max", "min"):
        raise ValueError("orientation must be 'max' or 'min'")
    pts = list(front)
    if orientation == "min":
        pts = [ObjectiveVector(-p.f1, -p.f2) for p in pts]
        ref = ObjectiveVector(-ref.f1, -ref.f2)
    clipped = [p for p in pts if p.f1 > ref.f1 and p.f2 > ref.f2]
    if not clipped:
        return Fraction(0)
    return hv_2d(clipped, ref)
