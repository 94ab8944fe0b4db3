"""Exact 2-D hypervolume, per-solution contributions, survival removal.

The bi-objective convention keeps no reference point on the first front:
the solutions attaining maximum f1 and maximum f2 are preserved outright
(sentinel contribution), interior unique vectors get the rectangle spanned
to their distinct neighbors, and any solution whose objective vector is
duplicated contributes nothing. Lower fronts use a virtual reference at
the componentwise minimum minus one, with no sentinels.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .core import EvaluatedSolution, ObjectiveVector
from .dominance import dominates
from .rng import RngState


class _Infinite:
    """Distinguished sentinel ordered above every rational; no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITE = _Infinite()


def hv_2d(points: Iterable[ObjectiveVector], ref: ObjectiveVector) -> Fraction:
    """Area of the union of rectangles [ref, p] (maximization).

    Every point must exceed ref in both components. Duplicated and
    dominated points do not change the result.
    """
    pts = list(points)
    for p in pts:
        if not (p.f1 > ref.f1 and p.f2 > ref.f2):
            raise ValueError(f"point {p} does not strictly dominate the reference {ref}")
    pts.sort(key=lambda p: (p.f1, p.f2), reverse=True)
    area = Fraction(0)
    top = ref.f2
    for p in pts:
        if p.f2 > top:
            area += (p.f1 - ref.f1) * (p.f2 - top)
            top = p.f2
    return area


def _check_front(front: Sequence[EvaluatedSolution]) -> None:
    objs = [s.objectives for s in front]
    for i, u in enumerate(objs):
        for v in objs[i + 1:]:
            if dominates(u, v) or dominates(v, u):
                raise ValueError("front contains a dominated pair")


def _sorted_groups(front: Sequence[EvaluatedSolution]) -> list[list[int]]:
    """Indices grouped by objective vector, groups ordered by f1 ascending.

    Within a front, equal f1 means an identical vector; group members keep
    input order.
    """
    order = sorted(range(len(front)), key=lambda i: front[i].objectives.f1)
    groups: list[list[int]] = []
    for i in order:
        if groups and front[groups[-1][0]].objectives.f1 == front[i].objectives.f1:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def contributions_first_front(front: Sequence[EvaluatedSolution],
                              rng: RngState) -> list:
    """Per-solution contributions on the first front, aligned with input order.

    One solution attaining max f1 and one attaining max f2 receive INFINITE
    (representatives drawn uniformly among duplicates: max-f1 first, then
    max-f2; a single draw when both extremes are the same vector). Every
    other duplicated solution gets 0.
    """
    if len(front) == 0:
        raise ValueError("front must be nonempty")
    _check_front(front)
    groups = _sorted_groups(front)
    out: list = [Fraction(0)] * len(front)
    if len(groups) == 1:
        g = groups[0]
        rep = g[0] if len(g) == 1 else g[rng.randint(len(g))]
        out[rep] = INFINITE
        return out
    hi = groups[-1]
    rep_hi = hi[0] if len(hi) == 1 else hi[rng.randint(len(hi))]
    out[rep_hi] = INFINITE
    lo = groups[0]
    rep_lo = lo[0] if len(lo) == 1 else lo[rng.randint(len(lo))]
    out[rep_lo] = INFINITE
    for t in range(1, len(groups) - 1):
        g = groups[t]
        if len(g) == 1:
            s = front[g[0]].objectives
            left = front[groups[t - 1][0]].objectives
            right = front[groups[t + 1][0]].objectives
            out[g[0]] = (s.f1 - left.f1) * (s.f2 - right.f2)
    return out


def contributions_lower_front(front: Sequence[EvaluatedSolution]) -> list[Fraction]:
    """Contributions against a virtual reference (componentwise min - 1)."""
    if len(front) == 0:
        raise ValueError("front must be nonempty")
    _check_front(front)
    groups = _sorted_groups(front)
    ref1 = min(s.objectives.f1 for s in front) - 1
    ref2 = min(s.objectives.f2 for s in front) - 1
    out = [Fraction(0)] * len(front)
    for t, g in enumerate(groups):
        if len(g) != 1:
            continue
        s = front[g[0]].objectives
        left = ref1 if t == 0 else front[groups[t - 1][0]].objectives.f1
        right = ref2 if t == len(groups) - 1 else front[groups[t + 1][0]].objectives.f2
        out[g[0]] = (s.f1 - left) * (s.f2 - right)
    return out


def select_removal(fronts: Sequence[Sequence[EvaluatedSolution]],
                   rng: RngState) -> int:
    """Index (into the last front) of the solution removed by survival.

    The minimum contribution wins; INFINITE never beats a finite value; ties
    are broken uniformly (one draw only when the tie set has >1 element).
    """
    last = fronts[-1]
    if len(last) == 0:
        raise ValueError("last front must be nonempty")
    if len(last) == 1:
        return 0
    if len(fronts) == 1:
        contribs = contributions_first_front(last, rng)
    else:
        contribs = contributions_lower_front(last)
    # tie candidates ordered by (f1, input index), mirroring the run kernel
    by_sorted = sorted(range(len(last)), key=lambda i: (last[i].objectives.f1, i))
    finite = [i for i in by_sorted if contribs[i] is not INFINITE]
    if finite:
        best = min(contribs[i] for i in finite)
        ties = [i for i in finite if contribs[i] == best]
    else:
        ties = by_sorted
    if len(ties) == 1:
        return ties[0]
    return ties[rng.randint(len(ties))]
