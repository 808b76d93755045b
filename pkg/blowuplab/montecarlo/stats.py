"""
@file montecarlo/stats.py
@brief Partial expectations and the Wilson score interval.
"""

import math
from statistics import NormalDist

import numpy as np

from core.exceptions import DomainError

MAX_DELTA = 1.0 / 3.0


def _check_delta(delta):
    if not 0.0 <= delta <= MAX_DELTA:
        raise DomainError(f"delta must lie in [0, 1/3], got {delta}")


def trimmed_mask(keys, delta):
    """
    @brief Boolean mask keeping all but the ceil(delta N) entries largest in key.

    @details
    Ties are broken by position (later entries are dropped first) so the mask
    is a pure function of the inputs.
    """
    _check_delta(delta)
    keys = np.asarray(keys, dtype=float)
    n = keys.size
    if n == 0:
        raise DomainError("cannot trim an empty sample")
    n_drop = math.ceil(delta * n - 1e-12)
    keep = np.ones(n, dtype=bool)
    if n_drop:
        order = np.lexsort((np.arange(n), keys))
        keep[order[n - n_drop:]] = False
    return keep


def partial_expectation(values, delta, key=None):
    """
    @brief Empirical partial expectation: sum of the kept values divided by N.

    @details
    The ceil(delta N) samples largest in key (the values themselves by
    default) form the excluded set. The sum is not renormalized by the kept
    count, so delta = 0 is the ordinary mean and larger delta never increases
    the result for nonnegative values.

    @param values Sample vector.
    @param delta Trimming fraction in [0, 1/3].
    @param key Optional trimming key of the same length.
    @raises DomainError On empty input or delta out of range.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise DomainError("partial expectation of an empty sample")
    keys = values if key is None else np.asarray(key, dtype=float)
    if keys.shape != values.shape:
        raise DomainError(f"key shape {keys.shape} does not match values {values.shape}")
    keep = trimmed_mask(keys, delta)
    return float(np.sum(values[keep]) / values.size)


def wilson_interval(successes, trials, confidence=0.95):
    """
    @brief Wilson score interval for a binomial proportion, clipped to [0, 1].
    """
    if trials <= 0:
        raise DomainError("Wilson interval needs at least one trial")
    if not 0 <= successes <= trials:
        raise DomainError(f"successes={successes} outside 0..{trials}")
    z = NormalDist().inv_cdf(0.5 + 0.5 * confidence)
    p_hat = successes / trials
    denominator = 1.0 + z * z / trials
    centre = (p_hat + z * z / (2.0 * trials)) / denominator
    margin = (z / denominator) * math.sqrt(p_hat * (1.0 - p_hat) / trials + z * z / (4.0 * trials * trials))
    lower = 0.0 if successes == 0 else max(0.0, centre - margin)
    upper = 1.0 if successes == trials else min(1.0, centre + margin)
    return min(lower, p_hat), max(upper, p_hat)
