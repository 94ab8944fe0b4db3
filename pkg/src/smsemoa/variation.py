"""Mutation and crossover operators on bit strings and permutations.

Thin value-typed wrappers over the kernels, so the operators behave
identically whether called here or from inside the run loop. Parents are
never modified; all draws come from the supplied stream.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .core import BitString, Permutation
from .rng import RngState


def bitwise_mutation(x: BitString, rng: RngState) -> BitString:
    """Flip each bit independently with probability 1/n."""
    buf = x.bits.copy()
    kernels.mutate_bits(rng.state, buf, x.n)
    return BitString(buf)


def one_point_crossover(x: BitString, y: BitString, rng: RngState) -> BitString:
    """Child = x[:i] + y[i:], cut i uniform in [1..n]."""
    if x.n != y.n:
        raise ValueError("length mismatch")
    child = np.empty(x.n, dtype=np.uint8)
    kernels.cross_one_point(rng.state, x.bits, y.bits, child)
    return BitString(child)


def uniform_crossover(x: BitString, y: BitString, rng: RngState) -> BitString:
    """Each child bit taken from x or y with probability 1/2."""
    if x.n != y.n:
        raise ValueError("length mismatch")
    child = np.empty(x.n, dtype=np.uint8)
    kernels.cross_uniform(rng.state, x.bits, y.bits, child)
    return BitString(child)


def order_crossover(p: Permutation, q: Permutation, rng: RngState) -> Permutation:
    """Classic OX with inclusive 0-based cuts c1 < c2 uniform over pairs.

    The child keeps p[c1..c2] in place and fills the remaining slots with
    q's elements in q-order, reading and writing cyclically after c2.
    """
    if p.n != q.n:
        raise ValueError("length mismatch")
    child = np.empty(p.n, dtype=np.int64)
    used = np.empty(p.n, dtype=np.uint8)
    kernels.cross_ox(rng.state, p.order, q.order, child, used)
    return Permutation(child)


def cycle_crossover(p: Permutation, q: Permutation, rng: RngState) -> Permutation:
    """Cycle crossover; cycles found from position 0 alternate p, q, p, ...

    Deterministic: consumes no draws.
    """
    if p.n != q.n:
        raise ValueError("length mismatch")
    child = np.empty(p.n, dtype=np.int64)
    pinv = np.empty(p.n, dtype=np.int64)
    visited = np.empty(p.n, dtype=np.uint8)
    kernels.cross_cx(p.order, q.order, child, pinv, visited)
    return Permutation(child)


def two_opt_mutation(p: Permutation, rng: RngState) -> Permutation:
    """Reverse a uniformly chosen contiguous segment p[i..j], i < j."""
    if p.n < 2:
        raise ValueError("need at least two elements")
    buf = p.order.copy()
    kernels.mutate_two_opt(rng.state, buf)
    return Permutation(buf)


def two_swap_mutation(p: Permutation, rng: RngState) -> Permutation:
    """Swap two distinct uniformly chosen positions."""
    if p.n < 2:
        raise ValueError("need at least two elements")
    buf = p.order.copy()
    kernels.mutate_two_swap(rng.state, buf)
    return Permutation(buf)
