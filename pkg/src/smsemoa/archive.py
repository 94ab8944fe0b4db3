"""Unbounded non-dominated archive and archive-reuse parent selection."""

from __future__ import annotations

import csv
from math import gcd
from typing import Sequence

from .core import EvaluatedSolution, BitString, Permutation
from .dominance import dominates, weakly_dominates
from .rng import RngState


class Archive:
    """Set of mutually incomparable solutions with pairwise distinct vectors.

    Update rule: a candidate enters only if no member weakly dominates it
    (equal vectors included, so the incumbent wins on a shared vector); the
    members it strictly dominates are deleted. Iteration order is the
    insertion order of the surviving members, which makes uniform selection
    reproducible.
    """

    __slots__ = ("_members",)

    def __init__(self, members: Sequence[EvaluatedSolution] = ()):
        self._members: list[EvaluatedSolution] = []
        for m in members:
            self.update(m)

    @property
    def members(self) -> tuple:
        return tuple(self._members)

    def update(self, cand: EvaluatedSolution) -> bool:
        """Apply the update rule; True when the candidate entered."""
        co = cand.objectives
        for m in self._members:
            if weakly_dominates(m.objectives, co):
                return False
        self._members = [m for m in self._members if not dominates(co, m.objectives)]
        self._members.append(cand)
        return True

    def objective_vectors(self) -> set:
        return {m.objectives for m in self._members}

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self):
        return iter(self._members)

    def __getitem__(self, i: int) -> EvaluatedSolution:
        return self._members[i]


def select_parent_with_reuse(population: Sequence[EvaluatedSolution],
                             archive: Archive,
                             rng: RngState) -> EvaluatedSolution:
    """With probability 1/2 a uniform member of P, else a uniform member of A.

    An empty archive falls back to uniform selection from P without
    consuming the coin, so the store-only and reuse variants coincide until
    the archive first becomes nonempty.
    """
    if len(population) == 0:
        raise ValueError("population must be nonempty")
    if len(archive) > 0:
        if rng.random() >= 0.5:
            return archive[rng.randint(len(archive))]
    return population[rng.randint(len(population))]


def _genotype_text(solution: EvaluatedSolution) -> str:
    g = solution.genotype
    if isinstance(g, BitString):
        return g.to01()
    if isinstance(g, Permutation):
        return " ".join(str(v) for v in g.order)
    raise TypeError(f"unsupported genotype {type(g)!r}")


def write_archive_csv(members: Sequence[EvaluatedSolution], path) -> None:
    """Snapshot export: one row per member, numerators over one denominator."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["genotype", "f1_numerator", "f2_numerator", "denominator"])
        for m in members:
            f1, f2 = m.objectives.f1, m.objectives.f2
            den = f1.denominator * f2.denominator // gcd(f1.denominator, f2.denominator)
            w.writerow([_genotype_text(m),
                        f1.numerator * (den // f1.denominator),
                        f2.numerator * (den // f2.denominator),
                        den])
