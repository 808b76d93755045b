"""
@file montecarlo/isometry.py
@brief Monte Carlo checks of the zero-mean and isometry identities of the noise.

@details
For a deterministic integrand v on the lattice cells, the discrete stochastic
integral sum v dW has mean 0 and second moment sum v² dt dx. The report also
carries z-scores against the Gaussian (chi-square) standard errors.

The module also provides the two reference values for the variance of the
additive-noise wave solution: the exact variance of the leapfrog stochastic
convolution and the continuous integral of S² over [0, t] x D.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from django.conf import settings

from bounds.quadrature import adaptive_simpson
from core.artifacts import write_json
from core.exceptions import DomainError, ShapeError
from spde.noise import derive_seed, sample_noise
from spectral.geometry import Boundary, lattice_propagators

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IsometryReport:
    n_paths: int
    mean: float
    variance: float
    second_moment: float
    target: float
    mean_se: float
    second_moment_se: float
    z_mean: float
    z_second_moment: float

    def to_dict(self):
        return asdict(self)

    def write(self, path):
        return write_json(path, self.to_dict())


def _integrand_values(integrand, nt, nx):
    if callable(integrand):
        n, j = np.meshgrid(np.arange(nt), np.arange(nx), indexing="ij")
        values = np.asarray(integrand(n, j), dtype=float)
        return np.broadcast_to(values, (nt, nx)).copy()
    values = np.asarray(integrand, dtype=float)
    if values.shape != (nt, nx):
        raise ShapeError(f"integrand of shape {values.shape} on a {nt}x{nx} lattice")
    return values


def isometry_report(grid, nt, n_paths, master_seed, integrand, dt=None, workers=None):
    """
    @brief Mean, variance and second moment of sum v dW over n_paths noise fields.

    @param grid SpatialGrid (nx cells per time row).
    @param nt Number of time rows.
    @param integrand Callable v(n, j) on index arrays, or an (nt, nx) array.
    @param dt Time step (defaults to dx).
    @return IsometryReport.
    """
    if n_paths < 2:
        raise DomainError(f"need at least 2 paths, got {n_paths}")
    dt = grid.dx if dt is None else dt
    v = _integrand_values(integrand, nt, grid.nx)
    if not np.all(np.isfinite(v)):
        raise DomainError("integrand must be bounded")
    workers = settings.BLOWUPLAB["WORKERS"] if workers is None else max(1, int(workers))

    def one(index):
        noise = sample_noise(grid, nt, derive_seed(master_seed, index), dt)
        return float(np.sum(v * noise.values()))

    if workers <= 1:
        samples = np.array([one(i) for i in range(n_paths)])
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            samples = np.array(list(executor.map(one, range(n_paths))))

    target = float(np.sum(v**2) * dt * grid.dx)
    mean = float(np.mean(samples))
    second = float(np.mean(samples**2))
    mean_se = math.sqrt(target / n_paths)
    second_se = target * math.sqrt(2.0 / n_paths)
    report = IsometryReport(
        n_paths=n_paths,
        mean=mean,
        variance=float(np.var(samples, ddof=1)),
        second_moment=second,
        target=target,
        mean_se=mean_se,
        second_moment_se=second_se,
        z_mean=mean / mean_se if mean_se > 0 else 0.0,
        z_second_moment=(second - target) / second_se if second_se > 0 else 0.0,
    )
    logger.info("isometry: target %.6g, z_mean %.3f, z_second %.3f", target, report.z_mean, report.z_second_moment)
    return report


def scheme_variance(grid, dt, n, node, boundary=Boundary.PERIODIC):
    """
    @brief Exact variance of the leapfrog solution at (n dt, x_node) under additive noise.

    @details
    With zero initial data and forcing nu dW, u^n = sum_m c_m Q_{n-m} nu dW_m
    with c_0 = 1/2 and c_m = 1, so the variance is
    sum_m c_m² nu² dt dx |row_node Q_{n-m}|² over the noise cells.
    """
    nu = dt / grid.dx
    Q = lattice_propagators(grid, nu, n, boundary)
    total = 0.0
    for m in range(n):
        weight = 0.25 if m == 0 else 1.0
        total += weight * float(np.sum(Q[n - m][node, : grid.nx] ** 2))
    return nu**2 * dt * grid.dx * total


def _s_squared_mass(tau, J):
    # Integral over one period of S(tau, .)², with S = (count of images within tau)/2.
    u = 2.0 * tau / J
    q = math.floor(u)
    return 0.25 * J * (q * q + (u - q) * (2 * q + 1))


def walsh_isometry_value(t, domain):
    """
    @brief Integral of S(t - s, x - y)² over [0, t] x D (independent of x).
    """
    if t < 0:
        raise DomainError(f"time must be non-negative, got t={t}")
    J = domain.J
    edges = [0.0]
    while edges[-1] + 0.5 * J < t:
        edges.append(edges[-1] + 0.5 * J)
    edges.append(t)
    return math.fsum(
        adaptive_simpson(lambda tau: _s_squared_mass(tau, J), a, b, abs_tol=1e-12).value
        for a, b in zip(edges[:-1], edges[1:])
    )
