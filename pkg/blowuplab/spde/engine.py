"""
@file spde/engine.py
@brief One path of the stochastic wave equation by leapfrog with white-noise forcing.

@details
    u^{n+1} = 2u^n - u^{n-1} + nu² (second difference of u^n)
              + dt² c1 u^n + nu (c2 u^n + f(u^n)) dW_{n,j}

with nu = dt/dx and the integrand taken at level n. The initial data are
scaled by (J + T + 1) around the base functions:
u(0) = scale (1 + u0), u_t(0) = scale v0. A path stops at sup-norm >= L, at
the first non-finite value (blow-up at the previous step, flagged as
overflow) or at the horizon T + epsilon.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from bounds.hypotheses import PhysParams
from core.artifacts import write_csv, write_json
from core.exceptions import DomainError, PreconditionError
from detwave.stepping import courant, first_step, leapfrog_step
from spde.nonlinearity import DEFAULT, get_nonlinearity
from spde.noise import sample_noise
from spectral.geometry import Boundary, Interval, eigenpair, project

logger = logging.getLogger(__name__)

CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class SpdeSpec:
    """
    @brief Everything one stochastic path needs apart from grid, dt and seed.
    """
    domain: Interval
    params: PhysParams
    u0: Callable
    v0: Callable
    T_bound: float
    epsilon: float
    L: float
    f_choice: str = DEFAULT
    boundary: Boundary = Boundary.PERIODIC
    checkpoint_every: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.T_bound) and self.T_bound >= 0):
            raise PreconditionError(f"T_bound must be finite and non-negative, got {self.T_bound}")
        if not self.epsilon > 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")
        if int(self.checkpoint_every) != self.checkpoint_every or self.checkpoint_every < 1:
            raise DomainError(f"checkpoint_every must be a positive integer, got {self.checkpoint_every}")
        get_nonlinearity(self.f_choice)
        Boundary(self.boundary)

    @property
    def scale(self):
        return self.domain.J + self.T_bound + 1.0

    @property
    def horizon(self):
        return self.T_bound + self.epsilon

    @property
    def nonlinearity(self):
        return get_nonlinearity(self.f_choice)

    def _scaled_fields(self, grid):
        return self.scale * (1.0 + grid.sample(self.u0)), self.scale * grid.sample(self.v0)

    def boundary_residue(self, grid):
        """
        @brief |value| at the ends of each scaled initial field that a Dirichlet run clamps.

        @return Dict from field name to its largest end value; empty for periodic runs.
        """
        if Boundary(self.boundary) is not Boundary.DIRICHLET:
            return {}
        residue = {}
        for name, samples in zip(("u(0)", "u_t(0)"), self._scaled_fields(grid)):
            ends = max(abs(samples[0]), abs(samples[-1]))
            if ends > CLAMP_TOL * max(1.0, float(np.max(np.abs(samples)))):
                residue[name] = float(ends)
        return residue

    def warn_boundary_clamp(self, grid):
        """
        @brief Logs one warning per clamped initial field; callers run it once per campaign.
        """
        residue = self.boundary_residue(grid)
        for name, ends in residue.items():
            logger.warning("%s does not vanish on the boundary (|value| %.3g); clamping to 0", name, ends)
        return residue

    def initial_fields(self, grid):
        """
        @brief scale (1 + u0) and scale v0 on the grid, boundary mode enforced.
        """
        u, v = self._scaled_fields(grid)
        if Boundary(self.boundary) is Boundary.DIRICHLET:
            for name, ends in self.boundary_residue(grid).items():
                logger.debug("clamping %s to 0 on the boundary (|value| %.3g)", name, ends)
            u[0] = u[-1] = v[0] = v[-1] = 0.0
        else:
            u[-1] = u[0]
            v[-1] = v[0]
        return u, v

    def validate(self, grid):
        """
        @brief Checks L > scale (1 + max u0) on the grid.
        """
        bound = self.scale * (1.0 + float(np.max(grid.sample(self.u0))))
        if not self.L > bound:
            raise PreconditionError(f"L={self.L} must exceed scale*(1 + max u0)={bound:.6g}")

    def forcing(self, u, dW, dt, nu):
        """
        @brief Step forcing dt² c1 u + nu (c2 u + f(u)) dW on the nodes.
        """
        noise = np.append(dW, dW[0])
        sigma = self.params.c2 * u + self.nonlinearity(u, self.params)
        return dt**2 * self.params.c1 * u + nu * sigma * noise


@dataclass
class PathResult:
    """
    @brief Checkpoint history of one stochastic path, truncated at sigma_L.
    """
    seed: int
    times: np.ndarray
    sup_norm: np.ndarray
    phi: np.ndarray
    sup_u_sq: np.ndarray
    L: float
    sigma_L: float | None = None
    blown_up: bool = False
    overflow: bool = False
    fields: np.ndarray | None = field(default=None, repr=False)

    def rows(self):
        return zip(self.times.tolist(), self.sup_norm.tolist(), self.phi.tolist(), self.sup_u_sq.tolist())

    def sidecar(self):
        return {
            "seed": self.seed,
            "sigma_L": self.sigma_L,
            "blown_up": self.blown_up,
            "overflow": self.overflow,
        }

    def write(self, directory, stem=None):
        """
        @brief Writes <stem>.csv and <stem>.json under directory.
        """
        stem = stem or f"path-{self.seed}"
        csv_path = write_csv(f"{directory}/{stem}.csv", ("t", "sup_norm", "phi", "sup_u_sq"), self.rows())
        json_path = write_json(f"{directory}/{stem}.json", self.sidecar())
        return csv_path, json_path


def sigma_L_of(path, L_query):
    """
    @brief First checkpoint time with sup-norm >= L_query, None when never reached.

    @details
    An overflowed path has blown up at sigma_L, so any level above its last
    recorded sup-norm is reached there.
    """
    hits = np.nonzero(path.sup_norm >= L_query)[0]
    if hits.size:
        return float(path.times[hits[0]])
    if path.overflow:
        return path.sigma_L
    return None


def time_rows(horizon, dt):
    """
    @brief Number of steps that fit in [0, horizon] (the lattice has one more time level).
    """
    return int(math.floor(horizon / dt + 1e-9))


def simulate_path(spec, grid, dt, seed, keep_fields=False):
    """
    @brief Simulates one path and records it at every checkpoint_every steps.

    @param spec SpdeSpec.
    @param grid SpatialGrid over spec.domain.
    @param dt Time step, at most dx.
    @param seed 64-bit noise seed.
    @param keep_fields Store the lattice at each checkpoint.
    @return PathResult.
    @raises ConfigurationError On a CFL violation.
    @raises PreconditionError If L does not clear the scaled initial data.
    """
    nu = courant(dt, grid)
    spec.validate(grid)
    boundary = Boundary(spec.boundary)
    eig = eigenpair(spec.domain)
    n_steps = time_rows(spec.horizon, dt)
    noise = sample_noise(grid, max(n_steps, 1), seed, dt)

    times, sups, phis, fields = [], [], [], []

    def checkpoint(n, state):
        times.append(n * dt)
        sups.append(float(np.max(np.abs(state))))
        phis.append(project(state, eig, grid))
        if keep_fields:
            fields.append(state.copy())

    u, v = spec.initial_fields(grid)
    checkpoint(0, u)
    sigma_L, overflow = None, False
    with np.errstate(over="ignore", invalid="ignore"):
        u_prev = u
        for n in range(n_steps):
            forcing = spec.forcing(u, noise.row(n), dt, nu)
            if n == 0:
                u_next = first_step(u, v, dt, nu, forcing, boundary)
            else:
                u_next = leapfrog_step(u, u_prev, nu, forcing, boundary)
            if not np.all(np.isfinite(u_next)):
                overflow, sigma_L = True, n * dt
                if times[-1] != n * dt:
                    checkpoint(n, u)
                break
            u_prev, u = u, u_next
            sup = float(np.max(np.abs(u)))
            if sup >= spec.L or (n + 1) % spec.checkpoint_every == 0 or n + 1 == n_steps:
                checkpoint(n + 1, u)
            if sup >= spec.L:
                sigma_L = (n + 1) * dt
                break

    sups = np.asarray(sups)
    result = PathResult(
        seed=seed,
        times=np.asarray(times),
        sup_norm=sups,
        phi=np.asarray(phis),
        sup_u_sq=sups**2,
        L=spec.L,
        sigma_L=sigma_L,
        blown_up=sigma_L is not None,
        overflow=overflow,
        fields=np.asarray(fields) if keep_fields else None,
    )
    logger.debug(
        "path seed=%d: sigma_L=%s%s", seed,
        "none" if sigma_L is None else f"{sigma_L:.8g}", " (overflow)" if overflow else "",
    )
    return result
