"""Genotypes, exact objective vectors, evaluated solutions, populations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from . import kernels
from .rng import RngState

Rational = Union[int, Fraction]


class BitString:
    """Fixed-length 0/1 string; value-like and immutable."""

    __slots__ = ("bits",)

    def __init__(self, bits: Iterable[int]):
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits,
                         dtype=np.uint8)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("a bit string needs at least one bit")
        if not np.all((arr == 0) | (arr == 1)):
            raise ValueError("bits must be 0 or 1")
        arr = arr.copy()
        arr.setflags(write=False)
        self.bits = arr

    @classmethod
    def from01(cls, text: str) -> "BitString":
        return cls([int(c) for c in text])

    @property
    def n(self) -> int:
        return int(self.bits.size)

    @property
    def ones(self) -> int:
        return int(self.bits.sum())

    @property
    def zeros(self) -> int:
        return self.n - self.ones

    def complement(self) -> "BitString":
        return BitString(1 - self.bits)

    def to01(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i):
        return int(self.bits[i])

    def __eq__(self, other) -> bool:
        return isinstance(other, BitString) and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())

    def __repr__(self) -> str:
        return f"BitString({self.to01()!r})"


class Permutation:
    """A bijection on [0..n-1]; value-like and immutable."""

    __slots__ = ("order",)

    def __init__(self, order: Iterable[int]):
        arr = np.asarray(list(order) if not isinstance(order, np.ndarray) else order,
                         dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("a permutation needs at least one element")
        n = arr.size
        seen = np.zeros(n, dtype=bool)
        for v in arr:
            if v < 0 or v >= n or seen[v]:
                raise ValueError("not a permutation of [0..n-1]")
            seen[v] = True
        arr = arr.copy()
        arr.setflags(write=False)
        self.order = arr

    @property
    def n(self) -> int:
        return int(self.order.size)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i):
        return int(self.order[i])

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.order, other.order)

    def __hash__(self) -> int:
        return hash(self.order.tobytes())

    def __repr__(self) -> str:
        return f"Permutation({list(self.order)})"


Genotype = Union[BitString, Permutation]


class ObjectiveVector:
    """Bi-objective value with exact rational components.

    Comparison between components is exact (Fraction cross-multiplication),
    never by floating tolerance.
    """

    __slots__ = ("values",)

    def __init__(self, f1: Rational, f2: Rational):
        self.values = (Fraction(f1), Fraction(f2))

    @property
    def f1(self) -> Fraction:
        return self.values[0]

    @property
    def f2(self) -> Fraction:
        return self.values[1]

    @property
    def m(self) -> int:
        return 2

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, ObjectiveVector) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        def fmt(v: Fraction) -> str:
            return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

        return f"({fmt(self.values[0])}, {fmt(self.values[1])})"


@dataclass(frozen=True)
class EvaluatedSolution:
    """A genotype together with its objective vector under the run's problem."""

    genotype: Genotype
    objectives: ObjectiveVector


@dataclass
class Population:
    """Fixed-capacity multiset of evaluated solutions (|members| == mu)."""

    members: list
    mu: int

    def __post_init__(self):
        if self.mu < 1:
            raise ValueError("mu must be >= 1")
        if len(self.members) != self.mu:
            raise ValueError(f"population holds {len(self.members)} members, expected {self.mu}")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def random_bitstring(n: int, rng: RngState) -> BitString:
    """Uniform bit string of length n (each bit 1 with probability 1/2)."""
    if n <= 0:
        raise ValueError("n must be positive")
    out = np.empty(n, dtype=np.uint8)
    kernels.fill_random_bits(rng.state, out)
    return BitString(out)


def random_permutation(n: int, rng: RngState) -> Permutation:
    """Uniform permutation of [0..n-1] (unbiased Fisher-Yates)."""
    if n <= 0:
        raise ValueError("n must be positive")
    out = np.empty(n, dtype=np.int64)
    kernels.fill_random_perm(rng.state, out)
    return Permutation(out)
