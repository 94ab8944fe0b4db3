"""Shared oracle helpers for the test suite."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from smsemoa.core import EvaluatedSolution, ObjectiveVector
from smsemoa.dominance import dominates


def pairwise_nd_distinct(vectors):
    """Distinct non-dominated vectors by direct pairwise checks (oracle)."""
    distinct = list({v for v in vectors})
    return {u for u in distinct if not any(dominates(v, u) for v in distinct)}


def sweep_nd_distinct(vectors):
    """Distinct non-dominated vectors via sort-and-scan (fast oracle)."""
    distinct = sorted({(v.f1, v.f2) for v in vectors}, key=lambda t: (-t[0], -t[1]))
    out = set()
    best2 = None
    for f1, f2 in distinct:
        if best2 is None or f2 > best2:
            out.add(ObjectiveVector(f1, f2))
            best2 = f2
    return out


def inclusion_exclusion_hv(points, ref) -> Fraction:
    """Union-of-rectangles area by inclusion-exclusion (<= ~10 points)."""
    pts = list(points)
    n = len(pts)
    total = Fraction(0)
    for mask in range(1, 1 << n):
        w = None
        h = None
        bits = 0
        for i in range(n):
            if mask >> i & 1:
                bits += 1
                w = pts[i].f1 if w is None else min(w, pts[i].f1)
                h = pts[i].f2 if h is None else min(h, pts[i].f2)
        area = (w - ref.f1) * (h - ref.f2)
        total += area if bits % 2 == 1 else -area
    return total


def random_front(rs: np.random.RandomState, max_points: int = 8,
                 max_value: int = 40, duplicates: bool = True):
    """A random mutually non-dominated front (staircase), optionally with
    duplicated vectors, wrapped as evaluated solutions in shuffled order."""
    m = rs.randint(1, max_points + 1)
    xs = np.sort(rs.choice(np.arange(1, max_value), size=m, replace=False))
    ys = np.sort(rs.choice(np.arange(1, max_value), size=m, replace=False))[::-1]
    sols = [EvaluatedSolution(None, ObjectiveVector(int(x), int(y)))
            for x, y in zip(xs, ys)]
    if duplicates and m > 1 and rs.rand() < 0.5:
        for _ in range(rs.randint(1, 3)):
            sols.append(sols[rs.randint(len(sols))])
    order = rs.permutation(len(sols))
    return [sols[i] for i in order]


@pytest.fixture
def rs():
    return np.random.RandomState(20240817)
