"""
@file bounds/hypotheses.py
@brief Physical parameters, hypotheses H1/H2 and the bound report.

@details
H1 asks for nonnegative initial data with a strictly positive velocity
somewhere; H2 asks the psi-projection alpha of u0 to clear the threshold
(4 lambda1 / kappa²)^(1/(r-1)). When both hold, the blow-up time of the
deterministic comparison problem is bounded by T (see bounds.quadrature).
"""

import logging
import math
from dataclasses import asdict, dataclass, replace

import numpy as np
from django.conf import settings

from core.artifacts import dumps
from core.exceptions import HypothesisError, ParameterError
from spectral.geometry import eigenpair, project

logger = logging.getLogger(__name__)

# Relative slack for "u0 >= 0" on the grid, so sin(pi) ~ -1e-16 still counts.
NEGATIVITY_TOL = 1e-12


@dataclass(frozen=True)
class PhysParams:
    """
    @brief Coefficients of the equation.

    @details
    kappa = 0 is accepted so the linear limit of the comparison problem can be
    solved; the bound computations reject it with ParameterError.
    """
    c1: float = 0.0
    c2: float = 0.0
    kappa: float = 1.0
    r: float = 2.0

    def __post_init__(self):
        if not self.r > 1:
            raise ParameterError(f"nonlinearity exponent must exceed 1, got r={self.r}")
        if not self.kappa >= 0:
            raise ParameterError(f"kappa must be non-negative, got kappa={self.kappa}")

    @property
    def lambda_c(self):
        """
        @brief (c1² + c2²)/2, the linear damping of the comparison problem.
        """
        return 0.5 * (self.c1**2 + self.c2**2)

    def lambda1(self, mu1):
        return mu1 + self.lambda_c

    def require_blowup_form(self):
        """
        @brief Raises ParameterError unless kappa > 0 (r > 1 holds by construction).
        """
        if not self.kappa > 0:
            raise ParameterError(f"kappa must be positive, got kappa={self.kappa}")
        return self


@dataclass(frozen=True)
class BoundReport:
    """
    @brief Derived constants, hypothesis verdicts and the time bound T.

    @details
    Serializes to a flat JSON object with exactly these field names. T and
    T_error are None until computed (or when H2 fails).
    """
    mu1: float
    lambda1: float
    alpha: float
    beta: float
    threshold: float
    h1_ok: bool
    h2_ok: bool
    T: float | None = None
    T_error: float | None = None

    def to_dict(self):
        return asdict(self)

    def to_json(self, **kwargs):
        return dumps(self.to_dict(), **kwargs)

    @property
    def admissible(self):
        return self.h1_ok and self.h2_ok


def blowup_threshold(lambda1, kappa, r):
    """
    @brief (4 lambda1 / kappa²)^(1/(r-1)); inf when it overflows.
    """
    if not kappa > 0:
        raise ParameterError(f"kappa must be positive, got kappa={kappa}")
    if not r > 1:
        raise ParameterError(f"nonlinearity exponent must exceed 1, got r={r}")
    if lambda1 <= 0:
        return 0.0
    try:
        return math.exp(math.log(4.0 * lambda1 / kappa**2) / (r - 1.0))
    except OverflowError:
        return math.inf


def compute_alpha_beta(u0, v0, domain, grid):
    """
    @brief alpha and beta, the psi-projections of u0 and v0.

    @param u0 Callable initial displacement.
    @param v0 Callable initial velocity.
    @return Tuple (alpha, beta).
    """
    eig = eigenpair(domain)
    return project(grid.sample(u0), eig, grid), project(grid.sample(v0), eig, grid)


def check_hypotheses(u0, v0, params, domain, grid):
    """
    @brief Evaluates H1 and H2 on the grid.

    @details
    h1_ok iff u0 >= 0 and v0 >= 0 at every node and max v0 > 0.
    h2_ok iff alpha >= threshold and beta > 0.

    @return BoundReport with T unset.
    @raises ParameterError If kappa <= 0 or r <= 1.
    """
    params.require_blowup_form()
    eig = eigenpair(domain)
    lambda1 = params.lambda1(eig.mu1)
    threshold = blowup_threshold(lambda1, params.kappa, params.r)
    u = grid.sample(u0)
    v = grid.sample(v0)
    alpha, beta = project(u, eig, grid), project(v, eig, grid)

    def nonnegative(samples):
        scale = max(1.0, float(np.max(np.abs(samples))))
        return bool(np.min(samples) >= -NEGATIVITY_TOL * scale)

    h1_ok = nonnegative(u) and nonnegative(v) and bool(np.max(v) > 0)
    h2_ok = bool(alpha >= threshold and beta > 0)
    logger.debug(
        "hypotheses: alpha=%.6g beta=%.6g threshold=%.6g h1=%s h2=%s",
        alpha, beta, threshold, h1_ok, h2_ok,
    )
    return BoundReport(
        mu1=eig.mu1,
        lambda1=lambda1,
        alpha=alpha,
        beta=beta,
        threshold=threshold,
        h1_ok=h1_ok,
        h2_ok=h2_ok,
    )


def compute_bound_report(u0, v0, params, domain, grid, rtol=None):
    """
    @brief check_hypotheses followed by blowup_time_T when H2 holds.
    """
    from bounds.quadrature import blowup_time_T

    report = check_hypotheses(u0, v0, params, domain, grid)
    if not report.h2_ok:
        return report
    T, T_error = blowup_time_T(
        report.alpha, report.beta, report.lambda1, params.kappa, params.r,
        rtol=rtol if rtol is not None else settings.BLOWUPLAB["QUAD_RTOL"],
    )
    return replace(report, T=T, T_error=T_error)


def require_admissible(report):
    """
    @brief Raises HypothesisError naming the failed hypothesis.
    """
    failed = [name for name, ok in (("H1", report.h1_ok), ("H2", report.h2_ok)) if not ok]
    if failed:
        raise HypothesisError(f"hypotheses not satisfied: {', '.join(failed)}")
    return report
