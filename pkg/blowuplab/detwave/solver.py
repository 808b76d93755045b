"""
@file detwave/solver.py
@brief Leapfrog solver for the deterministic comparison problem with Dirichlet ends.

@details
Solves u_tt = u_xx + kappa²/4 |u|^r - (c1² + c2²)/2 u on (0, J), u = 0 on the
boundary, and records the sup-norm and the psi-projection at checkpoints.

Blow-up is detected as the first time the sup-norm reaches L. Once the
sup-norm passes 0.9 L the step is halved, and a trial step that would jump
past L is rejected and retried at half the step, up to max_halvings times, so
the hitting time is localized well below the original dt.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from django.conf import settings

from bounds.hypotheses import PhysParams
from core.artifacts import write_csv
from core.exceptions import DomainError, InsufficientDataError, PreconditionError
from detwave.stepping import courant, first_step, halve_previous, leapfrog_step
from spectral.geometry import Boundary, Interval, eigenpair, project

logger = logging.getLogger(__name__)

NEAR_BLOWUP_FRACTION = 0.9
CLAMP_TOL = 1e-12


def comparison_forcing(u, params):
    """
    @brief kappa²/4 |u|^r - (c1² + c2²)/2 u, with |u|^r >= 0 for any real r.
    """
    return 0.25 * params.kappa**2 * np.abs(u) ** params.r - params.lambda_c * u


def forcing_increment(u, w, params):
    """
    @brief F(u + w) - F(u) without cancelling the increment against u.

    @details
    Where w is small against u, |u + w|^r - |u|^r is evaluated as
    |u|^r expm1(r log1p(w / u)); elsewhere the plain difference loses nothing.
    """
    u, w = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(w, dtype=float))
    r = params.r
    out = np.empty(u.shape)
    relative = np.zeros(u.shape)
    nonzero = u != 0.0
    relative[nonzero] = w[nonzero] / u[nonzero]
    small = nonzero & (relative > -0.5)
    out[small] = np.abs(u[small]) ** r * np.expm1(r * np.log1p(relative[small]))
    out[~small] = np.abs(u[~small] + w[~small]) ** r - np.abs(u[~small]) ** r
    return 0.25 * params.kappa**2 * out - params.lambda_c * w


@dataclass(frozen=True)
class DetProblem:
    """
    @brief The comparison problem: domain, coefficients and initial data.

    @details
    Initial data that do not vanish at the ends are clamped to zero there,
    with a warning.
    """
    domain: Interval
    params: PhysParams
    u0: Callable
    v0: Callable
    boundary: Boundary = Boundary.DIRICHLET

    def forcing(self, u):
        return comparison_forcing(u, self.params)

    def forcing_increment(self, u, w):
        return forcing_increment(u, w, self.params)

    def initial_fields(self, grid):
        """
        @brief u0 and v0 sampled on the grid with the boundary mode enforced.
        """
        u0 = grid.sample(self.u0)
        v0 = grid.sample(self.v0)
        if Boundary(self.boundary) is Boundary.DIRICHLET:
            for name, samples in (("u0", u0), ("v0", v0)):
                ends = max(abs(samples[0]), abs(samples[-1]))
                if ends > CLAMP_TOL * max(1.0, float(np.max(np.abs(samples)))):
                    logger.warning("%s does not vanish on the boundary (|value| %.3g); clamping to 0", name, ends)
                samples[0] = samples[-1] = 0.0
        else:
            u0[-1] = u0[0]
            v0[-1] = v0[0]
        return u0, v0


@dataclass
class TrajectoryRecord:
    """
    @brief Checkpoint history of one deterministic run.

    @details
    sigma_L is the first checkpoint time with sup-norm >= L, or the last
    finite time when the lattice overflowed; None when neither happened.
    fields holds the lattice at each checkpoint when the run kept them.
    """
    times: np.ndarray
    sup_norm: np.ndarray
    phi: np.ndarray
    L: float
    dt: float
    sigma_L: float | None = None
    blown_up: bool = False
    overflow: bool = False
    halvings: int = 0
    fields: np.ndarray | None = field(default=None, repr=False)

    def hitting_time(self, level):
        """
        @brief First checkpoint time with sup-norm >= level, None if never reached.
        """
        hits = np.nonzero(self.sup_norm >= level)[0]
        if hits.size:
            return float(self.times[hits[0]])
        if self.overflow and level > self.sup_norm[-1]:
            return self.sigma_L
        return None

    def rows(self):
        return zip(self.times.tolist(), self.sup_norm.tolist(), self.phi.tolist())

    def write_csv(self, path):
        return write_csv(path, ("t", "sup_norm", "phi"), self.rows())

    def summary(self):
        return {
            "sigma_L": self.sigma_L,
            "blown_up": self.blown_up,
            "overflow": self.overflow,
            "L": self.L,
            "dt": self.dt,
            "halvings": self.halvings,
            "checkpoints": int(self.times.size),
        }


def solve_det(problem, grid, dt, horizon, L, checkpoint_every=1, keep_fields=False, max_halvings=None):
    """
    @brief Runs the leapfrog scheme until the horizon, sup-norm >= L or overflow.

    @param problem DetProblem.
    @param grid SpatialGrid over problem.domain.
    @param dt Time step, at most dx.
    @param horizon Final time, positive.
    @param L Blow-up level, above sup|u0|.
    @param checkpoint_every Steps between checkpoints (the final state is always kept).
    @param keep_fields Store the lattice at every checkpoint.
    @param max_halvings Bound on step halvings near L (settings default).
    @return TrajectoryRecord.
    @raises ConfigurationError On a CFL violation.
    @raises DomainError If horizon <= 0.
    @raises PreconditionError If L <= sup|u0|.
    """
    nu = courant(dt, grid)
    if not horizon > 0:
        raise DomainError(f"horizon must be positive, got {horizon}")
    if max_halvings is None:
        max_halvings = settings.BLOWUPLAB["MAX_HALVINGS"]
    boundary = Boundary(problem.boundary)
    eig = eigenpair(problem.domain)
    u, v0 = problem.initial_fields(grid)
    if not L > np.max(np.abs(u)):
        raise PreconditionError(f"L={L} must exceed sup|u0|={np.max(np.abs(u)):.6g}")

    times, sups, phis, fields = [], [], [], []

    def checkpoint(t, state):
        times.append(t)
        sups.append(float(np.max(np.abs(state))))
        phis.append(project(state, eig, grid))
        if keep_fields:
            fields.append(state.copy())

    checkpoint(0.0, u)
    step, t_base, k, n_steps = dt, 0.0, 1, 1
    halvings = 0
    sigma_L, overflow = None, False

    with np.errstate(over="ignore", invalid="ignore"):
        u_prev, u = u, first_step(u, v0, step, nu, step**2 * problem.forcing(u), boundary)
        if not np.all(np.isfinite(u)):
            overflow, sigma_L, u, k = True, 0.0, u_prev, 0
        while not overflow:
            t = t_base + k * step
            sup = float(np.max(np.abs(u)))
            if sup >= L or n_steps % checkpoint_every == 0:
                checkpoint(t, u)
            if sup >= L:
                sigma_L = t
                break

            while True:
                step_nu = nu * (step / dt)
                forcing = step**2 * problem.forcing(u)
                trial = None
                if not (sup >= NEAR_BLOWUP_FRACTION * L and halvings == 0):
                    trial = leapfrog_step(u, u_prev, step_nu, forcing, boundary)
                    finite = bool(np.all(np.isfinite(trial)))
                    if finite and np.max(np.abs(trial)) < L:
                        break
                if halvings >= max_halvings:
                    break
                u_prev = halve_previous(u, u_prev, step_nu, forcing, boundary)
                t_base, k, step = t, 0, 0.5 * step
                halvings += 1
                logger.debug("halving near blow-up at t=%.10g, dt -> %.3g", t, step)

            if t + step > horizon + 1e-9 * step:
                break
            if trial is None:
                trial = leapfrog_step(u, u_prev, nu * (step / dt), step**2 * problem.forcing(u), boundary)
            if not np.all(np.isfinite(trial)):
                overflow, sigma_L = True, t
                logger.debug("overflow after t=%.10g", t)
                break
            u_prev, u = u, trial
            k += 1
            n_steps += 1

    if times[-1] != t_base + k * step:
        checkpoint(t_base + k * step, u)

    record = TrajectoryRecord(
        times=np.asarray(times),
        sup_norm=np.asarray(sups),
        phi=np.asarray(phis),
        L=L,
        dt=dt,
        sigma_L=sigma_L,
        blown_up=sigma_L is not None,
        overflow=overflow,
        halvings=halvings,
        fields=np.asarray(fields) if keep_fields else None,
    )
    logger.info(
        "det solve: %d checkpoints, sigma_L=%s, halvings=%d",
        record.times.size, "none" if sigma_L is None else f"{sigma_L:.10g}", halvings,
    )
    return record


class ResidualSeries(NamedTuple):
    times: np.ndarray
    residual: np.ndarray


def projection_residual(record, problem, below=None):
    """
    @brief phi'' + lambda1 phi - kappa²/4 |phi|^r at interior checkpoints.

    @details
    phi'' is the three-point difference on possibly uneven checkpoint spacing.
    Only checkpoints with sup-norm below `below` (default L) take part.

    @raises InsufficientDataError With fewer than three usable checkpoints.
    """
    level = record.L if below is None else below
    keep = record.sup_norm < level
    # Use the leading run of checkpoints below the level.
    stop = int(np.argmin(keep)) if not np.all(keep) else keep.size
    t = record.times[:stop]
    phi = record.phi[:stop]
    if t.size < 3:
        raise InsufficientDataError(f"need at least 3 checkpoints, have {t.size}")
    h1 = t[1:-1] - t[:-2]
    h2 = t[2:] - t[1:-1]
    accel = 2.0 * ((phi[2:] - phi[1:-1]) / h2 - (phi[1:-1] - phi[:-2]) / h1) / (h1 + h2)
    params = problem.params
    lambda1 = params.lambda1(eigenpair(problem.domain).mu1)
    centre = phi[1:-1]
    residual = accel + lambda1 * centre - 0.25 * params.kappa**2 * np.abs(centre) ** params.r
    return ResidualSeries(t[1:-1], residual)


def default_horizon(T, epsilon, J):
    """
    @brief T + epsilon when T is known, otherwise J.
    """
    if T is None or not math.isfinite(T):
        return J
    return T + epsilon
