"""
@file spectral/geometry.py
@brief Interval geometry, the first Dirichlet eigenpair and the wave kernels.

@details
Everything the solvers need to know about D = (0, J):
- the uniform grid and its composite trapezoid weights,
- the first Dirichlet eigenpair and projections onto psi,
- the period-J image kernel S and its Dirichlet (odd reflection) counterpart,
- the linear part I(t, x) of the mild formulation,
- the discrete Laplacian, boundary handling and the lattice propagators of
  the leapfrog operator.

All functions are pure.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from core.exceptions import DomainError, PreconditionError, ShapeError

logger = logging.getLogger(__name__)


class Boundary(str, Enum):
    """
    @brief Boundary behaviour on the ends of D.
    """
    PERIODIC = "periodic"
    DIRICHLET = "dirichlet"


# ───────────────────────────────────────────────
# Domain, grid and eigenpair
# ───────────────────────────────────────────────


@dataclass(frozen=True)
class Interval:
    """
    @brief The spatial domain D = (0, J).
    """
    J: float

    def __post_init__(self):
        if not (math.isfinite(self.J) and self.J > 0):
            raise DomainError(f"interval length must be positive, got J={self.J}")


@dataclass(frozen=True)
class EigenPair:
    """
    @brief First Dirichlet eigenpair of -d²/dx² on (0, J).

    @details
    psi is normalized as a probability density, psi(x) = (pi/2J) sin(pi x/J),
    so that integral of psi over D is exactly 1.
    """
    mu1: float
    J: float

    def psi(self, x):
        """
        @brief Evaluates psi at x (scalar or array).
        """
        x = np.asarray(x, dtype=float)
        return (math.pi / (2.0 * self.J)) * np.sin(math.pi * x / self.J)

    def psi_mass(self, a=0.0, b=None):
        """
        @brief Integral of psi over [a, b] from the closed-form antiderivative.
        """
        b = self.J if b is None else b
        return 0.5 * (math.cos(math.pi * a / self.J) - math.cos(math.pi * b / self.J))


@dataclass(frozen=True)
class SpatialGrid:
    """
    @brief Uniform grid x_j = j*dx, j = 0..nx, on [0, J].
    """
    J: float
    nx: int

    def __post_init__(self):
        Interval(self.J)
        if int(self.nx) != self.nx or self.nx < 8:
            raise DomainError(f"grid needs at least 8 cells, got nx={self.nx}")

    @classmethod
    def over(cls, domain, nx):
        return cls(J=domain.J, nx=nx)

    @property
    def domain(self):
        return Interval(self.J)

    @property
    def dx(self):
        return self.J / self.nx

    @cached_property
    def nodes(self):
        return np.linspace(0.0, self.J, self.nx + 1)

    @cached_property
    def weights(self):
        """
        @brief Composite trapezoid weights on the nodes.
        """
        w = np.full(self.nx + 1, self.dx)
        w[0] = w[-1] = 0.5 * self.dx
        return w

    def check(self, samples):
        """
        @brief Returns samples as a float array, or raises ShapeError on a length mismatch.
        """
        samples = np.asarray(samples, dtype=float)
        if samples.shape[-1:] != (self.nx + 1,):
            raise ShapeError(
                f"expected {self.nx + 1} samples on the grid, got shape {samples.shape}"
            )
        return samples

    def sample(self, func):
        """
        @brief Evaluates a callable on the nodes; constants broadcast to the grid.
        """
        values = np.asarray(func(self.nodes), dtype=float)
        return np.broadcast_to(values, self.nodes.shape).copy()


def eigenpair(domain):
    """
    @brief First Dirichlet eigenpair of D.

    @param domain Interval.
    @return EigenPair with mu1 = (pi/J)^2.
    @raises DomainError If J is not positive.
    """
    if not isinstance(domain, Interval):
        domain = Interval(domain)
    return EigenPair(mu1=(math.pi / domain.J) ** 2, J=domain.J)


def trapezoid(samples, grid):
    """
    @brief Composite trapezoid integral of grid samples over D.
    """
    return float(grid.weights @ grid.check(samples))


def project(field_samples, eig, grid):
    """
    @brief phi = integral of psi*u over D by the trapezoid rule.

    @details
    An exact linear functional of the samples. Works on a single sample vector
    or on a stack of them (last axis is space).

    @param field_samples Samples of u on the grid nodes.
    @param eig EigenPair of the same interval.
    @param grid SpatialGrid.
    @return float, or an array for stacked input.
    @raises ShapeError On a length mismatch or an eigenpair for another interval.
    """
    if not math.isclose(eig.J, grid.J, rel_tol=1e-12):
        raise ShapeError(f"eigenpair for J={eig.J} used on a grid over J={grid.J}")
    samples = grid.check(field_samples)
    weighted = grid.weights * eig.psi(grid.nodes)
    result = samples @ weighted
    return float(result) if np.ndim(result) == 0 else result


# ───────────────────────────────────────────────
# Wave kernels
# ───────────────────────────────────────────────


def min_images(t, J):
    """
    @brief Smallest image count that makes the kernel sums exact for x in [-J, J].
    """
    return max(1, math.ceil((t + J) / J))


def _check_images(t, domain, n_images):
    if t < 0:
        raise DomainError(f"kernel time must be non-negative, got t={t}")
    needed = min_images(t, domain.J)
    if n_images < needed:
        raise PreconditionError(
            f"n_images={n_images} truncates the image sum at t={t}; need at least {needed}"
        )


def kernel_S(t, x, domain, n_images):
    """
    @brief Period-J image kernel S(t, x) = sum_n (1/2) 1_[-t,t](x + nJ).

    @param t Time, t >= 0.
    @param x Position(s) in [-J, J] (differences of points of D).
    @param domain Interval.
    @param n_images Truncation |n| <= n_images, at least ceil((t+J)/J).
    @return float or array matching x.
    @raises PreconditionError If n_images would silently truncate the sum.
    """
    _check_images(t, domain, n_images)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > domain.J * (1 + 1e-12)):
        raise DomainError("kernel_S is defined for x in [-J, J]")
    shifts = np.arange(-n_images, n_images + 1) * domain.J
    hits = np.abs(x[..., None] + shifts) <= t
    value = 0.5 * np.count_nonzero(hits, axis=-1)
    return float(value) if value.ndim == 0 else value


def kernel_G_dirichlet(t, x, y, domain, n_images):
    """
    @brief Dirichlet Green kernel of the wave operator on D by odd reflection.

    @details
    G(t, x, y) = sum_n (1/2)[1{|x - y + 2nJ| <= t} - 1{|x + y + 2nJ| <= t}],
    which vanishes for x on the boundary.
    """
    _check_images(t, domain, n_images)
    x = np.asarray(x, dtype=float)[..., None]
    y = np.asarray(y, dtype=float)[..., None]
    shifts = np.arange(-n_images, n_images + 1) * 2.0 * domain.J
    direct = np.count_nonzero(np.abs(x - y + shifts) <= t, axis=-1)
    mirrored = np.count_nonzero(np.abs(x + y + shifts) <= t, axis=-1)
    value = 0.5 * (direct - mirrored)
    return float(value) if np.ndim(value) == 0 else value


def _cone(z, t, tol):
    # Trapezoid-friendly indicator of |z| <= t: one half on the light-cone edge.
    if t <= 0:
        return np.zeros_like(z)
    a = np.abs(z)
    return np.where(a < t - tol, 1.0, np.where(a <= t + tol, 0.5, 0.0))


def kernel_matrix(t, grid, boundary=Boundary.PERIODIC):
    """
    @brief Matrix K[i, j] = kernel(t, x_i, y_j) for quadrature on the grid.

    @details
    Uses the periodic kernel S(t, x - y) or the Dirichlet kernel G(t, x, y).
    Points on the light-cone edge get weight 1/2 and t = 0 gives the zero
    matrix, so the trapezoid rule treats the jump symmetrically.
    """
    boundary = Boundary(boundary)
    n_images = min_images(t, grid.J)
    x = grid.nodes[:, None, None]
    y = grid.nodes[None, :, None]
    tol = 1e-9 * grid.dx
    if boundary is Boundary.PERIODIC:
        shifts = np.arange(-n_images, n_images + 1) * grid.J
        return 0.5 * _cone(x - y + shifts, t, tol).sum(axis=-1)
    shifts = np.arange(-n_images, n_images + 1) * 2.0 * grid.J
    return 0.5 * (_cone(x - y + shifts, t, tol) - _cone(x + y + shifts, t, tol)).sum(axis=-1)


def extend(func, y, J, boundary=Boundary.PERIODIC):
    """
    @brief Evaluates the periodic (period J) or odd (period 2J) extension of func at y.
    """
    y = np.asarray(y, dtype=float)
    if Boundary(boundary) is Boundary.PERIODIC:
        return np.asarray(func(np.mod(y, J)), dtype=float) * np.ones_like(y)
    r = np.mod(y, 2.0 * J)
    inside = r <= J
    folded = np.where(inside, r, 2.0 * J - r)
    values = np.asarray(func(folded), dtype=float) * np.ones_like(y)
    return np.where(inside, values, -values)


def linear_solution_I(u0, v0, t, x, domain, grid, boundary=Boundary.PERIODIC):
    """
    @brief Linear part I(t, x) of the mild formulation.

    @details
    The K-convolution is the exact traveling-wave average
    (1/2)(u0(x + t) + u0(x - t)) over the extension matching the boundary
    mode; the S-convolution against v0 is the trapezoid rule on the grid.

    @param u0 Callable initial displacement on [0, J].
    @param v0 Callable initial velocity on [0, J].
    @param t Time, t >= 0.
    @param x Position(s) in [0, J].
    @return float or array matching x.
    """
    if t < 0:
        raise DomainError(f"time must be non-negative, got t={t}")
    if not math.isclose(domain.J, grid.J, rel_tol=1e-12):
        raise ShapeError("domain and grid describe different intervals")
    x = np.asarray(x, dtype=float)
    travelling = 0.5 * (
        extend(u0, x + t, domain.J, boundary) + extend(u0, x - t, domain.J, boundary)
    )
    boundary = Boundary(boundary)
    n_images = min_images(t, domain.J)
    tol = 1e-9 * grid.dx
    y = grid.nodes
    xs = x[..., None, None]
    ys = y[:, None]
    if boundary is Boundary.PERIODIC:
        shifts = np.arange(-n_images, n_images + 1) * domain.J
        kernel = 0.5 * _cone(xs - ys + shifts, t, tol).sum(axis=-1)
    else:
        shifts = np.arange(-n_images, n_images + 1) * 2.0 * domain.J
        kernel = 0.5 * (_cone(xs - ys + shifts, t, tol) - _cone(xs + ys + shifts, t, tol)).sum(axis=-1)
    velocity = kernel @ (grid.weights * grid.sample(v0))
    result = travelling + velocity
    return float(result) if np.ndim(result) == 0 else result


# ───────────────────────────────────────────────
# Discrete operator
# ───────────────────────────────────────────────


def second_difference(u, boundary):
    """
    @brief u_{j+1} - 2u_j + u_{j-1} on the nodes (not divided by dx²).

    @details
    Periodic: node nx is the image of node 0. Dirichlet: zero at the end nodes.
    """
    if Boundary(boundary) is Boundary.PERIODIC:
        v = u[:-1]
        d = np.roll(v, -1) - 2.0 * v + np.roll(v, 1)
        return np.append(d, d[0])
    d = np.zeros_like(u)
    d[1:-1] = u[2:] - 2.0 * u[1:-1] + u[:-2]
    return d


def apply_boundary(u, boundary):
    """
    @brief Enforces the boundary mode in place and returns u.
    """
    if Boundary(boundary) is Boundary.PERIODIC:
        u[-1] = u[0]
    else:
        u[0] = 0.0
        u[-1] = 0.0
    return u


def free_nodes(grid, boundary):
    """
    @brief Indices of the nodes that carry independent values.
    """
    if Boundary(boundary) is Boundary.PERIODIC:
        return np.arange(grid.nx)
    return np.arange(1, grid.nx)


def embedding(grid, boundary):
    """
    @brief Matrix mapping free-node values to all nx + 1 nodes.
    """
    free = free_nodes(grid, boundary)
    E = np.zeros((grid.nx + 1, free.size))
    E[free, np.arange(free.size)] = 1.0
    if Boundary(boundary) is Boundary.PERIODIC:
        E[grid.nx, 0] = 1.0
    return E


def lattice_propagators(grid, nu, n_steps, boundary):
    """
    @brief Discrete counterparts Q_0..Q_n of S for the leapfrog operator.

    @details
    With A = 2 + nu² * second difference on the free nodes, Q_0 = 0, Q_1 = I and
    Q_{k+1} = A Q_k - Q_{k-1}. dt * Q_k acts like the integral operator of
    S(k dt, ., .), and the leapfrog solution obeys the discrete Duhamel formula
    u^n = Q_n u^1 - Q_{n-1} u^0 + sum_{m=1}^{n-1} Q_{n-m} dt² F^m.
    Returned matrices act on full node vectors (boundary nodes included).

    @return Array of shape (n_steps + 1, nx + 1, nx + 1).
    """
    free = free_nodes(grid, boundary)
    m = free.size
    D2 = -2.0 * np.eye(m) + np.eye(m, k=1) + np.eye(m, k=-1)
    if Boundary(boundary) is Boundary.PERIODIC:
        D2[0, -1] = D2[-1, 0] = 1.0
    A = 2.0 * np.eye(m) + nu**2 * D2
    E = embedding(grid, boundary)
    R = np.zeros((m, grid.nx + 1))
    R[np.arange(m), free] = 1.0

    out = np.zeros((n_steps + 1, grid.nx + 1, grid.nx + 1))
    previous, current = np.zeros((m, m)), np.eye(m)
    for k in range(1, n_steps + 1):
        out[k] = E @ current @ R
        previous, current = current, A @ current - previous
    return out
