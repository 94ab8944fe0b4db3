"""Dominance relations and non-dominated sorting (maximization)."""

from __future__ import annotations

from typing import Sequence

from .core import EvaluatedSolution, ObjectiveVector


def weakly_dominates(u: ObjectiveVector, v: ObjectiveVector) -> bool:
    """u >= v in every component."""
    if u.m != v.m:
        raise ValueError("dimension mismatch")
    return u.f1 >= v.f1 and u.f2 >= v.f2


def dominates(u: ObjectiveVector, v: ObjectiveVector) -> bool:
    """u >= v everywhere and > somewhere."""
    if u.m != v.m:
        raise ValueError("dimension mismatch")
    return (u.f1 >= v.f1 and u.f2 >= v.f2) and (u.f1 > v.f1 or u.f2 > v.f2)


def non_dominated_sort(pop: Sequence[EvaluatedSolution]) -> list[list[EvaluatedSolution]]:
    """Partition into fronts R_1..R_v by repeated peeling.

    R_1 holds the non-dominated members; each R_i the non-dominated members
    of what remains. Equal objective vectors are mutually non-dominating and
    land in the same front. Within a front, input order is preserved.
    """
    if len(pop) == 0:
        raise ValueError("population must be nonempty")
    remaining = list(range(len(pop)))
    fronts: list[list[EvaluatedSolution]] = []
    while remaining:
        keep: list[int] = []
        drop: list[int] = []
        for i in remaining:
            oi = pop[i].objectives
            if any(dominates(pop[j].objectives, oi) for j in remaining if j != i):
                drop.append(i)
            else:
                keep.append(i)
        fronts.append([pop[i] for i in keep])
        remaining = drop
    return fronts
