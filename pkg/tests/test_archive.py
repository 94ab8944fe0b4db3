import numpy as np
import pytest

from conftest import pairwise_nd_distinct
from smsemoa.archive import Archive, select_parent_with_reuse, write_archive_csv
from smsemoa.core import BitString, EvaluatedSolution, ObjectiveVector, Permutation
from smsemoa.dominance import weakly_dominates
from smsemoa.rng import RngState


def S(a, b):
    return EvaluatedSolution(None, ObjectiveVector(a, b))


def vecs(archive):
    return {m.objectives for m in archive}


def test_update_incomparable_candidate():
    a = Archive([S(3, 1)])
    assert a.update(S(2, 2))
    assert vecs(a) == {ObjectiveVector(3, 1), ObjectiveVector(2, 2)}


def test_update_dominating_candidate_removes_dominated():
    # (3,2) strictly dominates both (3,1) and (2,2)
    a = Archive([S(3, 1), S(2, 2)])
    assert a.update(S(3, 2))
    assert vecs(a) == {ObjectiveVector(3, 2)}
    b = Archive([S(3, 1), S(1, 3)])
    assert b.update(S(2, 2))
    assert vecs(b) == {ObjectiveVector(3, 1), ObjectiveVector(1, 3),
                       ObjectiveVector(2, 2)}


def test_update_equal_vector_keeps_incumbent():
    first = EvaluatedSolution(BitString.from01("10"), ObjectiveVector(2, 2))
    second = EvaluatedSolution(BitString.from01("01"), ObjectiveVector(2, 2))
    a = Archive([first])
    assert not a.update(second)
    assert a.members == (first,)


def test_update_idempotent():
    s = S(4, 4)
    a = Archive([s])
    assert not a.update(s)
    assert len(a) == 1


def test_archive_matches_nd_filter_of_history(rs):
    for _ in range(40):
        history = [S(int(x), int(y)) for x, y in rs.randint(0, 12, size=(rs.randint(1, 60), 2))]
        a = Archive()
        for s in history:
            a.update(s)
        assert vecs(a) == pairwise_nd_distinct([s.objectives for s in history])
        members = list(a)
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                assert u.objectives != v.objectives
                assert not weakly_dominates(u.objectives, v.objectives)
                assert not weakly_dominates(v.objectives, u.objectives)


def test_reuse_selection_empty_archive_falls_back():
    pop = [S(1, 2), S(2, 1)]
    rng = RngState.from_seed(0)
    probe = rng.copy()
    chosen = select_parent_with_reuse(pop, Archive(), rng)
    assert chosen in pop
    # fallback consumes exactly one bounded draw, no coin
    assert chosen is pop[probe.randint(2)]
    assert np.array_equal(rng.state, probe.state)


def test_reuse_selection_balance():
    # |P| = |A| = 1: the archive member is chosen with frequency 1/2
    pop_member = S(1, 2)
    arch_member = S(2, 1)
    archive = Archive([arch_member])
    rng = RngState.from_seed(8)
    trials = 1_000_000
    hits = 0
    for _ in range(trials):
        if select_parent_with_reuse([pop_member], archive, rng) is arch_member:
            hits += 1
    assert abs(hits / trials - 0.5) < 3 * 0.0005


def test_reuse_selection_uniform_within_archive():
    members = [S(1, 8), S(3, 6), S(6, 3), S(8, 1)]
    archive = Archive(members)
    rng = RngState.from_seed(9)
    trials = 1_000_000
    counts = {id(m): 0 for m in members}
    branch = 0
    pop = [S(0, 0)]
    for _ in range(trials):
        chosen = select_parent_with_reuse(pop, archive, rng)
        if chosen is not pop[0]:
            branch += 1
            counts[id(chosen)] += 1
    sigma = (0.25 * 0.75 / branch) ** 0.5
    for c in counts.values():
        assert abs(c / branch - 0.25) < 3 * sigma


def test_reuse_selection_requires_population():
    with pytest.raises(ValueError):
        select_parent_with_reuse([], Archive(), RngState.from_seed(0))


def test_archive_csv_snapshot(tmp_path):
    from fractions import Fraction
    members = [
        EvaluatedSolution(BitString.from01("0110"), ObjectiveVector(Fraction(201, 20), 3)),
        EvaluatedSolution(Permutation([2, 0, 1]), ObjectiveVector(5, 7)),
    ]
    path = tmp_path / "archive.csv"
    write_archive_csv(members, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "genotype,f1_numerator,f2_numerator,denominator"
    assert lines[1] == "0110,201,60,20"
    assert lines[2] == "2 0 1,5,7,1"
