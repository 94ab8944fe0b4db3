"""The four theory benchmarks and their analytic Pareto fronts.

The jump benchmarks put a fitness valley of width k around each extreme;
the stepping-stone variant additionally makes the strings with k-a and
n-(k-a) one-bits non-dominated, sparse in the decision space but crowded
in objective space. Its fractional values (2k+1/n and n-1/n) are the
reason objective vectors are exact rationals: scaled by n everything is
integral, and dominance decisions are invariant under that scaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from ..core import BitString, ObjectiveVector

OJZJ = "ojzj"
OJZJ_SS = "ojzj_ss"
OMM = "omm"
LOTZ = "lotz"
KINDS = (OJZJ, OJZJ_SS, OMM, LOTZ)


@dataclass(frozen=True)
class BenchmarkSpec:
    kind: str
    n: int
    k: int = 0
    a: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown benchmark kind {self.kind!r}")
        if self.n <= 0:
            raise ValueError("n must be positive")
        if self.kind == OJZJ and not (2 <= self.k < self.n / 2):
            raise ValueError("ojzj requires 2 <= k < n/2")
        if self.kind == OJZJ_SS:
            if not (3 <= self.k < self.n / 2):
                raise ValueError("ojzj_ss requires 3 <= k < n/2")
            if not (2 <= self.a < self.k):
                raise ValueError("ojzj_ss requires 2 <= a < k")

    @property
    def front_size(self) -> int:
        if self.kind == OJZJ:
            return self.n - 2 * self.k + 3
        if self.kind == OJZJ_SS:
            return self.n - 2 * self.k + 5
        return self.n + 1


@dataclass(frozen=True)
class ParetoFront:
    points: frozenset
    size: int


def _jump_value(c: int, n: int, k: int) -> int:
    if c <= n - k or c == n:
        return k + c
    return n - c


def ojzj_eval(x: BitString, k: int) -> ObjectiveVector:
    """f1 rewards one-bits outside a valley of width k below 1^n; f2 is the
    same function of the zero-bits."""
    n = x.n
    return ObjectiveVector(_jump_value(x.ones, n, k), _jump_value(x.zeros, n, k))


def _jump_ss_value(c: int, n: int, k: int, a: int) -> Fraction:
    # stepping-stone branches take precedence over the plain jump branches
    if c == k - a:
        return Fraction(2 * k * n + 1, n)
    if c == n - (k - a):
        return Fraction(n * n - 1, n)
    return Fraction(_jump_value(c, n, k))


def ojzjss_eval(x: BitString, k: int, a: int) -> ObjectiveVector:
    """Stepping-stone variant; f2(x) = f1(complement of x) exactly."""
    n = x.n
    return ObjectiveVector(_jump_ss_value(x.ones, n, k, a),
                           _jump_ss_value(x.zeros, n, k, a))


def omm_eval(x: BitString) -> ObjectiveVector:
    """(number of zero-bits, number of one-bits)."""
    return ObjectiveVector(x.zeros, x.ones)


def lotz_eval(x: BitString) -> ObjectiveVector:
    """(leading one-bits, trailing zero-bits)."""
    bits = x.bits
    lead = 0
    for b in bits:
        if b != 1:
            break
        lead += 1
    trail = 0
    for b in bits[::-1]:
        if b != 0:
            break
        trail += 1
    return ObjectiveVector(lead, trail)


def evaluate(x: BitString, spec: BenchmarkSpec) -> ObjectiveVector:
    if spec.kind == OJZJ:
        return ojzj_eval(x, spec.k)
    if spec.kind == OJZJ_SS:
        return ojzjss_eval(x, spec.k, spec.a)
    if spec.kind == OMM:
        return omm_eval(x)
    return lotz_eval(x)


def pareto_front(spec: BenchmarkSpec) -> ParetoFront:
    """The exact analytic front of the benchmark."""
    n, k = spec.n, spec.k
    points: set
    if spec.kind == OJZJ:
        points = {ObjectiveVector(c, n + 2 * k - c) for c in range(2 * k, n + 1)}
        points.add(ObjectiveVector(k, n + k))
        points.add(ObjectiveVector(n + k, k))
    elif spec.kind == OJZJ_SS:
        points = {ObjectiveVector(c, n + 2 * k - c) for c in range(2 * k, n + 1)}
        points.add(ObjectiveVector(k, n + k))
        points.add(ObjectiveVector(n + k, k))
        g1 = Fraction(2 * k * n + 1, n)
        g2 = Fraction(n * n - 1, n)
        points.add(ObjectiveVector(g1, g2))
        points.add(ObjectiveVector(g2, g1))
    else:
        points = {ObjectiveVector(b, n - b) for b in range(n + 1)}
    front = ParetoFront(points=frozenset(points), size=len(points))
    assert front.size == spec.front_size
    return front


def front_covered(found: Iterable[ObjectiveVector], spec: BenchmarkSpec) -> bool:
    """True iff every front point appears in `found` (exact equality)."""
    have = set(found)
    return all(p in have for p in pareto_front(spec).points)


def denominator(spec: BenchmarkSpec) -> int:
    """Constant scaling that makes every objective value an integer."""
    return spec.n if spec.kind == OJZJ_SS else 1


def front_scaled(spec: BenchmarkSpec) -> tuple[np.ndarray, np.ndarray]:
    """Front as int64 arrays scaled by `denominator`, sorted by f1."""
    den = denominator(spec)
    pts = sorted((int(p.f1 * den), int(p.f2 * den)) for p in pareto_front(spec).points)
    f1 = np.array([p[0] for p in pts], dtype=np.int64)
    f2 = np.array([p[1] for p in pts], dtype=np.int64)
    return f1, f2
