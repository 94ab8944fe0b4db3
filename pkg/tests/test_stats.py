import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.stats

from conftest import inclusion_exclusion_hv
from smsemoa.core import BitString, ObjectiveVector
from smsemoa.problems.practical import KpInstance, generate_kp, generate_tsp
from smsemoa.rng import RngState
from smsemoa.stats import (estimate_reference_point, hv_report, mean_std,
                           wilcoxon_rank_sum)
from smsemoa import kernels
from smsemoa.engine import problem_from_instance


def V(a, b):
    return ObjectiveVector(a, b)


def test_mean_std_examples():
    mean, std = mean_std([2, 4])
    assert mean == 3 and abs(std - math.sqrt(2)) < 1e-12
    assert mean_std([5, 5, 5])[1] == 0
    mean, std = mean_std([1, 2, 3, 4])
    assert mean == 2.5 and abs(std - 1.2909944487358056) < 1e-12
    with pytest.raises(ValueError):
        mean_std([1])


def test_wilcoxon_exact_example():
    u, p = wilcoxon_rank_sum([1, 2, 3], [4, 5, 6])
    assert u == 0
    assert p == 0.1


def test_wilcoxon_symmetry(rs):
    for _ in range(50):
        xs = list(rs.uniform(0, 1, size=rs.randint(2, 8)))
        ys = list(rs.uniform(0, 1, size=rs.randint(2, 8)))
        u1, p1 = wilcoxon_rank_sum(xs, ys)
        u2, p2 = wilcoxon_rank_sum(ys, xs)
        assert abs(p1 - p2) < 1e-12
        assert abs((u1 + u2) - len(xs) * len(ys)) < 1e-9


def test_wilcoxon_identical_samples():
    xs = [3.0, 1.0, 2.0, 2.0]
    _, p = wilcoxon_rank_sum(xs, list(xs))
    assert abs(p - 1.0) < 1e-9


def test_wilcoxon_empty_rejected():
    with pytest.raises(ValueError):
        wilcoxon_rank_sum([], [1.0])


def test_wilcoxon_exact_vs_approximate(rs, monkeypatch):
    # the two code paths agree within 0.02 on tie-free 6+6 samples
    import smsemoa.stats as stats_mod
    for _ in range(100):
        vals = rs.choice(np.arange(1000), size=12, replace=False).astype(float)
        xs, ys = list(vals[:6]), list(vals[6:])
        _, p_exact = wilcoxon_rank_sum(xs, ys)
        monkeypatch.setattr(stats_mod, "EXACT_LIMIT", 0)
        _, p_approx = wilcoxon_rank_sum(xs, ys)
        monkeypatch.setattr(stats_mod, "EXACT_LIMIT", 12)
        assert abs(p_exact - p_approx) <= 0.02


def test_wilcoxon_against_scipy(rs):
    for _ in range(40):
        xs = list(rs.uniform(0, 1, size=8))
        ys = list(rs.uniform(0.2, 1.2, size=9))
        u, p = wilcoxon_rank_sum(xs, ys)
        ref = scipy.stats.mannwhitneyu(xs, ys, alternative="two-sided",
                                       method="asymptotic")
        assert abs(u - ref.statistic) < 1e-9
        assert abs(p - ref.pvalue) < 1e-9
    for _ in range(40):
        xs = list(rs.uniform(0, 1, size=5))
        ys = list(rs.uniform(0, 1, size=5))
        _, p = wilcoxon_rank_sum(xs, ys)
        ref = scipy.stats.mannwhitneyu(xs, ys, alternative="two-sided",
                                       method="exact")
        assert abs(p - ref.pvalue) < 1e-9


def test_reference_point_degenerate_instance():
    inst = KpInstance(n=2, seed=0,
                      profits1=np.array([7, 1], dtype=np.int64),
                      profits2=np.array([3, 1], dtype=np.int64),
                      weights=np.array([2, 100], dtype=np.int64),
                      capacity=50)
    ref = estimate_reference_point(inst, RngState.from_seed(0), sample_count=500)
    # item 2 never fits; the non-dominated corner is selecting item 1
    assert ref == V(7, 3)


def test_reference_point_replay_oracle():
    inst = generate_kp(10, seed=5)
    problem = problem_from_instance(inst)
    stream_seed = 424242
    ref = estimate_reference_point(inst, RngState.from_seed(stream_seed),
                                   sample_count=2000)
    # replay the identical sample stream by hand
    rng = RngState.from_seed(stream_seed)
    buf = np.empty(10, dtype=np.uint8)
    pts = []
    for _ in range(2000):
        kernels.fill_random_bits(rng.state, buf)
        kernels.kp_repair(buf, problem.kp_w, problem.kp_cap, problem.kp_order)
        f1, f2 = kernels.eval_bits(problem.prob_id, buf, 10, 0, 0,
                                   problem.kp_p1, problem.kp_p2,
                                   problem.nk_n1, problem.nk_t1,
                                       problem.nk_n2, problem.nk_t2)
        pts.append((int(f1), int(f2)))
    nd = [p for p in set(pts)
          if not any(q[0] >= p[0] and q[1] >= p[1] and q != p for q in set(pts))]
    assert ref == V(min(p[0] for p in nd), min(p[1] for p in nd))


def test_reference_point_weakly_dominated_by_nd_samples():
    inst = generate_tsp(8, seed=6)
    ref = estimate_reference_point(inst, RngState.from_seed(1), sample_count=3000)
    # minimization: the reference is the worst (largest) corner of the
    # non-dominated sample, so it cannot be better than any sampled tour
    assert ref.f1 > 0 and ref.f2 > 0


def test_hv_report_edges():
    assert hv_report([], V(0, 0)) == 0
    assert hv_report([V(-1, 5), V(5, -1)], V(0, 0)) == 0
    assert hv_report([V(2, 3)], V(0, 0)) == 6


def test_hv_report_clipping_matches_bruteforce(rs):
    for _ in range(60):
        pts = [V(int(a), int(b)) for a, b in rs.randint(-5, 12, size=(6, 2))]
        ref = V(0, 0)
        got = hv_report(pts, ref)
        clipped = [p for p in pts if p.f1 > 0 and p.f2 > 0]
        want = inclusion_exclusion_hv(clipped, ref) if clipped else Fraction(0)
        assert got == want


def test_hv_report_min_orientation():
    pts = [V(2, 6), V(4, 3)]
    ref = V(10, 10)
    # negate everything: points (-2,-6), (-4,-3) vs (-10,-10)
    want = inclusion_exclusion_hv([V(-2, -6), V(-4, -3)], V(-10, -10))
    assert hv_report(pts, ref, "min") == want
    assert hv_report([V(11, 11)], ref, "min") == 0


def test_hv_report_monotone(rs):
    pts = [V(3, 9), V(6, 5)]
    base = hv_report(pts, V(0, 0))
    assert hv_report(pts + [V(9, 2)], V(0, 0)) >= base


def test_hv_report_orientation_validation():
    with pytest.raises(ValueError):
        hv_report([V(1, 1)], V(0, 0), "sideways")
