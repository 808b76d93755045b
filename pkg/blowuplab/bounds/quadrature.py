"""
@file bounds/quadrature.py
@brief The improper integral T and the hitting-time integrals behind it.

@details
T = integral from alpha to infinity of
    [lambda1 alpha² + beta² - lambda1 s² + kappa²/(2+2r) (s^(r+1) - alpha^(r+1))]^(-1/2) ds.

The finite part [alpha, S_max] is integrated by adaptive Simpson in the
variable y = log(1 + s - alpha), which turns the algebraic decay of the
integrand into an exponential one. The tail past S_max is bracketed in closed
form and S_max grows tenfold until the bracket is tight enough.
"""

import logging
import math
from typing import NamedTuple

from core.exceptions import ConvergenceError, HypothesisError, ParameterError
from bounds.hypotheses import blowup_threshold

logger = logging.getLogger(__name__)

# Panels of the initial uniform split handed to the adaptive stack.
INITIAL_PANELS = 16
MAX_DEPTH = 40
S_MAX_GROWTH = 10.0
# Beyond this the tail bound cannot be tightened in double precision.
S_MAX_LIMIT = 1e150


class QuadResult(NamedTuple):
    value: float
    error: float
    evaluations: int


class TimeBound(NamedTuple):
    T: float
    T_error: float


# ───────────────────────────────────────────────
# Adaptive Simpson
# ───────────────────────────────────────────────


def adaptive_simpson(func, a, b, abs_tol, max_depth=MAX_DEPTH, initial_panels=INITIAL_PANELS):
    """
    @brief Adaptive Simpson with Richardson correction over [a, b].

    @details
    Runs from an explicit stack, so the work queue is private to the call.
    Each accepted panel contributes S2 + (S2 - S1)/15 to the value and
    |S2 - S1|/15 to the error estimate.

    @param func Scalar callable.
    @param abs_tol Absolute tolerance shared out over the panels.
    @return QuadResult(value, error, evaluations).
    @raises ConvergenceError If a panel is still unresolved at max_depth.
    """
    if b <= a:
        return QuadResult(0.0, 0.0, 0)
    edges = [a + (b - a) * k / initial_panels for k in range(initial_panels + 1)]
    values = [func(x) for x in edges]
    evaluations = len(values)
    stack = []
    panel_tol = abs_tol / initial_panels
    for k in range(initial_panels - 1, -1, -1):
        left, right = edges[k], edges[k + 1]
        mid = 0.5 * (left + right)
        f_mid = func(mid)
        evaluations += 1
        whole = (right - left) / 6.0 * (values[k] + 4.0 * f_mid + values[k + 1])
        stack.append((left, right, values[k], f_mid, values[k + 1], whole, panel_tol, 0))

    parts = []
    error = 0.0
    while stack:
        left, right, f_left, f_mid, f_right, whole, tol, depth = stack.pop()
        mid = 0.5 * (left + right)
        f_lm = func(0.5 * (left + mid))
        f_rm = func(0.5 * (mid + right))
        evaluations += 2
        s_left = (mid - left) / 6.0 * (f_left + 4.0 * f_lm + f_mid)
        s_right = (right - mid) / 6.0 * (f_mid + 4.0 * f_rm + f_right)
        delta = s_left + s_right - whole
        if abs(delta) <= 15.0 * tol:
            parts.append(s_left + s_right + delta / 15.0)
            error += abs(delta) / 15.0
        elif depth >= max_depth:
            raise ConvergenceError(
                f"adaptive Simpson unresolved on [{left:.6g}, {right:.6g}] after {depth} bisections"
            )
        else:
            stack.append((mid, right, f_mid, f_rm, f_right, s_right, 0.5 * tol, depth + 1))
            stack.append((left, mid, f_left, f_lm, f_mid, s_left, 0.5 * tol, depth + 1))
    return QuadResult(math.fsum(parts), error, evaluations)


# ───────────────────────────────────────────────
# Integrands
# ───────────────────────────────────────────────


def _check_admissible(alpha, beta, lambda1, kappa, r):
    if not kappa > 0:
        raise ParameterError(f"kappa must be positive, got kappa={kappa}")
    if not r > 1:
        raise ParameterError(f"nonlinearity exponent must exceed 1, got r={r}")
    if not beta > 0:
        raise HypothesisError(f"beta must be positive, got beta={beta}")
    threshold = blowup_threshold(lambda1, kappa, r)
    if alpha < threshold:
        raise HypothesisError(f"alpha={alpha:.6g} is below the threshold {threshold:.6g}")


def bound_integrand(s, alpha, beta, lambda1, kappa, r):
    """
    @brief [beta² + 2 * integral of h from alpha to s]^(-1/2) with h(s) = kappa²/4 s^r - lambda1 s.

    @details
    Written so every s-dependent term carries an exact zero factor at
    s = alpha, which makes the value there exactly 1/beta.

    @raises HypothesisError If the bracket is not positive at s.
    """
    a = kappa * kappa / (2.0 * r + 2.0)
    bracket = beta * beta - lambda1 * (s - alpha) * (s + alpha) + a * (s ** (r + 1) - alpha ** (r + 1))
    if not bracket > 0:
        raise HypothesisError(f"comparison bracket is not positive at s={s:.6g} ({bracket:.3g})")
    return 1.0 / math.sqrt(bracket)


def hitting_time_integral(alpha, beta, lambda1, kappa, r, level, rtol=1e-10):
    """
    @brief Time for the Glassey ODE to climb from alpha to level.

    @details
    Integral of bound_integrand over [alpha, level], computed in the variable
    y = log(1 + s - alpha). Accepts kappa = 0 (pure linear motion) as long as
    the bracket stays positive.

    @return QuadResult.
    """
    if not beta > 0:
        raise HypothesisError(f"beta must be positive, got beta={beta}")
    if level <= alpha:
        return QuadResult(0.0, 0.0, 0)

    def substituted(y):
        grow = math.expm1(y)
        return bound_integrand(alpha + grow, alpha, beta, lambda1, kappa, r) * (1.0 + grow)

    y_max = math.log1p(level - alpha)
    coarse = adaptive_simpson(substituted, 0.0, y_max, abs_tol=math.inf)
    tol = rtol * max(abs(coarse.value), math.ulp(1.0))
    result = adaptive_simpson(substituted, 0.0, y_max, abs_tol=tol)
    logger.debug(
        "hitting time to %.3g: %.12g (+-%.2g, %d evaluations)",
        level, result.value, result.error, result.evaluations,
    )
    return QuadResult(result.value, result.error, result.evaluations + coarse.evaluations)


def _tail_bracket(S, alpha, beta, lambda1, kappa, r):
    """
    @brief Lower and upper bounds of the integral from S to infinity.

    @details
    For s >= S the bracket equals a s^(r+1) (1 - m(s)) with
    m(s) = (lambda1 s² - c0)/(a s^(r+1)), c0 = lambda1 alpha² + beta² - a alpha^(r+1),
    and m is squeezed between m_lo and m_hi. Returns None while m_hi >= 1/2.
    """
    a = kappa * kappa / (2.0 * r + 2.0)
    c0 = lambda1 * alpha * alpha + beta * beta - a * alpha ** (r + 1)
    log_denominator = math.log(a) + (r + 1.0) * math.log(S)
    numerator = lambda1 * S * S + max(0.0, -c0)
    m_hi = math.exp(math.log(numerator) - log_denominator) if numerator > 0 else 0.0
    if m_hi >= 0.5:
        return None
    m_lo = -math.exp(math.log(c0) - log_denominator) if c0 > 0 else 0.0
    core = 2.0 / ((r - 1.0) * math.sqrt(a)) * math.exp(-0.5 * (r - 1.0) * math.log(S))
    return core / math.sqrt(1.0 - m_lo), core / math.sqrt(1.0 - m_hi)


def blowup_time_T(alpha, beta, lambda1, kappa, r, rtol=1e-8):
    """
    @brief Upper bound T for the blow-up time of the comparison problem.

    @param alpha Projection of u0, at or above the H2 threshold.
    @param beta Projection of v0, strictly positive.
    @param rtol Relative tolerance for the whole estimate.
    @return TimeBound(T, T_error), T_error covering both quadrature and tail.
    @raises ParameterError If kappa <= 0 or r <= 1.
    @raises HypothesisError If beta <= 0, alpha is below threshold or the bracket vanishes.
    @raises ConvergenceError If the tail cannot be made small enough.
    """
    _check_admissible(alpha, beta, lambda1, kappa, r)
    S = max(2.0 * alpha, alpha + 1.0)
    reference = hitting_time_integral(alpha, beta, lambda1, kappa, r, S, rtol=rtol).value
    while True:
        bracket = _tail_bracket(S, alpha, beta, lambda1, kappa, r)
        if bracket is not None and bracket[1] <= 0.5 * rtol * reference:
            break
        S *= S_MAX_GROWTH
        if S > S_MAX_LIMIT:
            raise ConvergenceError(
                f"tail bound still above tolerance at S_max={S / S_MAX_GROWTH:.3g}"
            )
        logger.debug("growing S_max to %.3g", S)

    finite = hitting_time_integral(alpha, beta, lambda1, kappa, r, S, rtol=0.5 * rtol)
    tail_lo, tail_hi = bracket
    T = finite.value + 0.5 * (tail_lo + tail_hi)
    T_error = finite.error + 0.5 * (tail_hi - tail_lo)
    logger.debug(
        "T=%.12g T_error=%.3g S_max=%.3g evaluations=%d", T, T_error, S, finite.evaluations
    )
    return TimeBound(T, T_error)
