import numpy as np
import pytest

from burstfold.errors import NonDivisor
from burstfold.folding import (
    burst_span,
    fold,
    folded_burst_bound,
    is_burst,
    is_cyclic_burst,
    row_dims,
    unfold,
)


def test_fold_layout():
    v = np.arange(12)
    M = fold(v, 3)
    assert M.shape == (3, 4)
    # entry (i, j) = v[j*m + i]
    for i in range(3):
        for j in range(4):
            assert M[i, j] == v[j * 3 + i]
    assert np.array_equal(unfold(M), v)


def test_fold_nondivisor():
    with pytest.raises(NonDivisor):
        fold(np.arange(10), 4)
    with pytest.raises(NonDivisor):
        fold(np.arange(10), 0)


def test_burst_touches_few_columns():
    rng = np.random.default_rng(1)
    n, m = 60, 5
    for _ in range(200):
        ln = int(rng.integers(1, 40))
        start = int(rng.integers(0, n - ln + 1))
        v = np.zeros(n, dtype=np.int64)
        v[start:start + ln] = rng.integers(1, 7, size=ln)
        cols = np.flatnonzero(fold(v, m).any(axis=0))
        touched = cols[-1] - cols[0] + 1
        assert touched <= folded_burst_bound(ln, m)


def test_folded_burst_bound_values():
    assert folded_burst_bound(0, 5) == 0
    assert folded_burst_bound(1, 5) == 2
    assert folded_burst_bound(10, 5) == 4
    assert folded_burst_bound(11, 5) == 4


def test_row_dims():
    assert row_dims(15, 9) == [2, 2, 2, 2, 2, 2, 1, 1, 1]
    assert sum(row_dims(15, 9)) == 15
    assert row_dims(4, 4) == [1, 1, 1, 1]
    assert row_dims(3, 4) == [1, 1, 1, 0]
    assert row_dims(120, 15) == [8] * 15
    assert sum(row_dims(223, 15)) == 223


def test_is_burst():
    assert is_burst([0, 0, 0], 0)
    assert is_burst([0, 1, 1, 0], 2)
    assert not is_burst([0, 1, 1, 0], 1)
    assert not is_burst([1, 0, 0, 1], 3)
    assert is_burst([1, 0, 0, 1], 4)


def test_burst_span():
    assert burst_span([0, 0]) == (0, 0)
    assert burst_span([0, 3, 0, 5, 0]) == (1, 4)


def test_is_cyclic_burst():
    assert is_cyclic_burst([1, 0, 0, 1], 2)  # wraps
    assert not is_cyclic_burst([1, 0, 1, 0], 2)
    assert is_cyclic_burst([0, 0, 0, 0], 0)
    assert is_cyclic_burst([1, 1, 1, 1], 4)
