"""
@file tests/montecarlo/test_stats.py
@brief Partial expectations and Wilson intervals.
"""

import numpy as np
import pytest

from core.exceptions import DomainError
from montecarlo.stats import partial_expectation, trimmed_mask, wilson_interval


def test_zero_delta_is_the_mean():
    values = np.random.default_rng(3).exponential(size=257)
    assert partial_expectation(values, 0.0) == np.mean(values)


def test_drops_the_largest_fifth():
    assert partial_expectation([1, 2, 3, 4, 5], 0.2) == 2.0


def test_one_third_drops_the_outlier():
    assert partial_expectation([0, 0, 10], 1.0 / 3.0) == 0.0


@pytest.mark.parametrize("delta", [-0.01, 0.34, 0.5])
def test_delta_out_of_range(delta):
    with pytest.raises(DomainError):
        partial_expectation([1.0, 2.0, 3.0], delta)


def test_empty_sample():
    with pytest.raises(DomainError):
        partial_expectation([], 0.0)


def test_key_shape_mismatch():
    with pytest.raises(DomainError):
        partial_expectation([1.0, 2.0], 0.1, key=[1.0, 2.0, 3.0])


def test_monotone_in_delta():
    rng = np.random.default_rng(2024)
    deltas = np.linspace(0.0, 1.0 / 3.0, 9)
    for _ in range(1000):
        values = rng.exponential(size=rng.integers(1, 40))
        results = [partial_expectation(values, d) for d in deltas]
        assert all(b <= a for a, b in zip(results, results[1:]))


def test_trims_by_key():
    # the largest key belongs to the smallest value
    assert partial_expectation([1.0, 2.0, 3.0], 1.0 / 3.0, key=[3.0, 2.0, 1.0]) == pytest.approx(5.0 / 3.0)


def test_ties_drop_later_entries():
    keep = trimmed_mask([1.0, 1.0, 1.0], 1.0 / 3.0)
    assert keep.tolist() == [True, True, False]


def test_infinite_keys_are_dropped_first():
    keep = trimmed_mask([0.5, np.inf, 2.0, 1.0], 0.25)
    assert keep.tolist() == [True, False, True, True]


# ───────────────────────────────────────────────
# Wilson
# ───────────────────────────────────────────────


def test_wilson_zero_successes():
    low, high = wilson_interval(0, 100)
    assert low == 0.0
    assert 0.0 < high < 0.05


def test_wilson_all_successes():
    low, high = wilson_interval(100, 100)
    assert high == 1.0
    assert 0.95 < low < 1.0


def test_wilson_brackets_p_hat():
    low, high = wilson_interval(40, 512)
    assert low < 40 / 512 < high
    assert low > 0.0


@pytest.mark.parametrize("successes, trials", [(1, 0), (-1, 10), (11, 10)])
def test_wilson_rejects_bad_counts(successes, trials):
    with pytest.raises(DomainError):
        wilson_interval(successes, trials)


def test_wilson_coverage():
    rng = np.random.default_rng(7)
    p, n = 0.1, 500
    hits = 0
    for successes in rng.binomial(n, p, size=200):
        low, high = wilson_interval(int(successes), n)
        hits += low <= p <= high
    assert hits >= 180
