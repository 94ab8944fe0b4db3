from fractions import Fraction

import numpy as np
import pytest

from smsemoa import kernels
from smsemoa.core import (BitString, EvaluatedSolution, ObjectiveVector,
                          Permutation, Population, random_bitstring,
                          random_permutation)
from smsemoa.rng import RngState


def test_bitstring_basics():
    x = BitString.from01("10110")
    assert x.n == 5 and x.ones == 3 and x.zeros == 2
    assert x.to01() == "10110"
    assert x.complement() == BitString.from01("01001")
    assert x == BitString([1, 0, 1, 1, 0])
    assert hash(x) == hash(BitString.from01("10110"))
    assert x[0] == 1 and x[1] == 0


def test_bitstring_validation():
    with pytest.raises(ValueError):
        BitString([])
    with pytest.raises(ValueError):
        BitString([0, 2])


def test_bitstring_immutable():
    x = BitString.from01("101")
    with pytest.raises(ValueError):
        x.bits[0] = 0


def test_permutation_basics():
    p = Permutation([2, 0, 1])
    assert p.n == 3 and p[0] == 2
    assert p == Permutation(np.array([2, 0, 1]))
    assert hash(p) == hash(Permutation([2, 0, 1]))


@pytest.mark.parametrize("bad", [[0, 0, 1], [0, 3, 1], [-1, 0, 1], []])
def test_permutation_validation(bad):
    with pytest.raises(ValueError):
        Permutation(bad)


def test_objective_vector_exact_comparison():
    v = ObjectiveVector(Fraction(201, 20), Fraction(399, 20))
    assert v.f1 == Fraction(201, 20)
    assert v == ObjectiveVector(Fraction(402, 40), Fraction(399, 20))
    assert hash(v) == hash(ObjectiveVector(Fraction(201, 20), Fraction(399, 20)))
    assert v.m == 2
    assert repr(v) == "(201/20, 399/20)"
    assert repr(ObjectiveVector(3, 5)) == "(3, 5)"
    # exactness: no float tolerance games
    assert ObjectiveVector(Fraction(1, 3), 0) != ObjectiveVector(0.3333333333333333, 0)


def test_population_capacity():
    sol = EvaluatedSolution(BitString.from01("1"), ObjectiveVector(1, 0))
    pop = Population([sol, sol], mu=2)
    assert len(pop) == 2
    with pytest.raises(ValueError):
        Population([sol], mu=2)
    with pytest.raises(ValueError):
        Population([], mu=0)


def test_random_bitstring_contract():
    rng = RngState.from_seed(3)
    x = random_bitstring(8, rng)
    assert isinstance(x, BitString) and x.n == 8
    assert all(b in (0, 1) for b in x.bits)
    with pytest.raises(ValueError):
        random_bitstring(0, rng)


def test_random_bitstring_deterministic():
    assert random_bitstring(32, RngState.from_seed(9)) == \
        random_bitstring(32, RngState.from_seed(9))


def test_bit_draw_frequency():
    # fraction of ones over 1e6 single-bit draws within 3 sigma of 1/2
    rng = RngState.from_seed(17)
    out = np.empty(1_000_000, dtype=np.uint8)
    kernels.fill_random_bits(rng.state, out)
    frac = out.mean()
    assert abs(frac - 0.5) < 3 * 0.0005


def test_random_permutation_contract():
    rng = RngState.from_seed(4)
    assert random_permutation(1, rng) == Permutation([0])
    for _ in range(200):
        p = random_permutation(7, rng)
        assert sorted(p.order) == list(range(7))
    with pytest.raises(ValueError):
        random_permutation(0, rng)


def test_random_permutation_uniform():
    # each of the 6 permutations of 3 elements within 3 sigma of 1/6
    rng = RngState.from_seed(23)
    trials = 600_000
    counts = {}
    buf = np.empty(3, dtype=np.int64)
    for _ in range(trials):
        kernels.fill_random_perm(rng.state, buf)
        key = (buf[0], buf[1])
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 6
    sigma = (1 / 6 * 5 / 6 / trials) ** 0.5
    for c in counts.values():
        assert abs(c / trials - 1 / 6) < 3 * sigma
