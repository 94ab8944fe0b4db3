import numpy as np
import pytest

from smsemoa import kernels
from smsemoa.rng import RngState, derive_run_seed, fold_seed

# splitmix64 finalizer of 0 + golden; frozen once from the documented mix
DERIVE_0_0 = 16294208416658607535


def test_derive_seed_golden_constant():
    assert derive_run_seed(0, 0) == DERIVE_0_0


def test_derive_seed_deterministic_and_distinct():
    s = 0x1234_5678_9ABC_DEF0
    assert derive_run_seed(s, 3) == derive_run_seed(s, 3)
    assert derive_run_seed(s, 0) != derive_run_seed(s, 1)
    seen = {derive_run_seed(s, i) for i in range(10_000)}
    assert len(seen) == 10_000


def test_derive_seed_rejects_negative_index():
    with pytest.raises(ValueError):
        derive_run_seed(1, -1)


def test_stream_determinism():
    a = RngState.from_seed(42)
    b = RngState.from_seed(42)
    assert [a.next_u64() for _ in range(100)] == [b.next_u64() for _ in range(100)]
    c = RngState.from_seed(43)
    assert [RngState.from_seed(42).next_u64() for _ in range(1)] != \
           [c.next_u64() for _ in range(1)]


def test_copy_is_independent():
    a = RngState.from_seed(7)
    b = a.copy()
    a.next_u64()
    assert not np.array_equal(a.state, b.state)


def test_random_unit_interval():
    rng = RngState.from_seed(1)
    vals = [rng.random() for _ in range(1000)]
    assert all(0.0 <= v < 1.0 for v in vals)


def test_randint_bounds():
    rng = RngState.from_seed(5)
    assert all(0 <= rng.randint(7) < 7 for _ in range(1000))
    assert all(rng.randint(1) == 0 for _ in range(10))
    with pytest.raises(ValueError):
        rng.randint(0)


def test_randint_uniformity():
    rng = RngState.from_seed(11)
    out = np.empty(100_000, dtype=np.int64)
    kernels.fill_below(rng.state, 10, out)
    counts = np.bincount(out, minlength=10)
    # 3 sigma for a binomial(1e5, 1/10) bin
    sigma = np.sqrt(100_000 * 0.1 * 0.9)
    assert np.all(np.abs(counts - 10_000) < 3 * sigma)


def test_fold_seed_label_sensitivity():
    assert fold_seed(0, "a") != fold_seed(0, "b")
    assert fold_seed(0, "x") == fold_seed(0, "x")
    assert fold_seed(1, "x") != fold_seed(2, "x")


def test_state_validation():
    with pytest.raises(ValueError):
        RngState(np.zeros(3, dtype=np.uint64))
    with pytest.raises(ValueError):
        RngState(np.zeros(4, dtype=np.int64))
