"""
@file detwave/comparison.py
@brief Comparison-set margin of a candidate field against the mild equation.

@details
For a candidate v on the space-time lattice the margin is

    m(t, x) = v(t, x) - [I(t, x) + (S * F(v))(t, x)],
    F(v) = kappa²/4 |v|^r - (c1² + c2²)/2 v,

and v belongs to the comparison set when m > 0 everywhere.

Two quadratures of the bracket are available. "lattice" replays the discrete
Duhamel formula of the leapfrog scheme, I^n = Q_n u^1_hom - Q_{n-1} u^0 and
(S * F)^n = sum_m c_m Q_{n-m} F^m with c_0 = dt²/2 and c_m = dt², through
the propagator recursion itself, so the solved field U satisfies its own
identity to round-off. "continuous" uses the image-sum kernels with the
trapezoid rule in space and time.

For v = U + w with U the solved field, offset_margin_field evaluates the
margin from the forcing increment alone, which keeps offsets far below the
resolution of U visible.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import ConfigurationError, PreconditionError, ShapeError
from detwave.stepping import courant, first_step, leapfrog_step
from spectral.geometry import Boundary, kernel_matrix, linear_solution_I

logger = logging.getLogger(__name__)

KERNELS = ("lattice", "continuous")


@dataclass(frozen=True)
class FieldHistory:
    """
    @brief Lattice samples of a field at uniformly spaced times 0, dt, ..., n dt.
    """
    times: np.ndarray
    values: np.ndarray
    dt: float

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape[0] != self.times.size:
            raise ShapeError(
                f"field history of shape {self.values.shape} does not match {self.times.size} times"
            )

    @classmethod
    def from_record(cls, record, t_f=None):
        """
        @brief Restricts a kept-fields TrajectoryRecord to [0, t_f].

        @raises PreconditionError If fields were not kept or t_f leaves the lifespan.
        @raises ShapeError If the retained checkpoints are not one step apart.
        """
        if record.fields is None:
            raise PreconditionError("the run did not keep its fields")
        last = record.sigma_L if record.blown_up else record.times[-1]
        t_f = last if t_f is None else t_f
        if record.blown_up and not t_f < last:
            raise PreconditionError(f"t_f={t_f} is not inside the lifespan (sigma_L={last})")
        keep = record.times <= t_f * (1 + 1e-12)
        times = record.times[keep]
        if times.size < 2 or not np.allclose(np.diff(times), record.dt, rtol=1e-9, atol=0):
            raise ShapeError("comparison needs every step on [0, t_f] at the original dt")
        return cls(times=times, values=record.fields[keep], dt=record.dt)

    def shifted(self, offsets):
        """
        @brief New history with offsets(t) added to every node at time t.
        """
        offsets = np.asarray(offsets, dtype=float)
        return FieldHistory(self.times, self.values + offsets[:, None], self.dt)


def _check_lattice(U, v, grid):
    if U.values.shape != v.values.shape or not np.array_equal(U.times, v.times):
        raise ShapeError(f"lattices differ: {U.values.shape} vs {v.values.shape}")
    grid.check(U.values)


def _replay(u0, v0, grid, dt, boundary, forcing_history):
    # z^0 = u0, z^1 = first step, z^{n+1} = A z^n - z^{n-1} + dt² F^n
    nu = courant(dt, grid)
    out = np.empty_like(forcing_history)
    out[0] = u0
    if len(out) == 1:
        return out
    out[1] = first_step(u0, v0, dt, nu, dt**2 * forcing_history[0], boundary)
    for n in range(1, len(out) - 1):
        out[n + 1] = leapfrog_step(out[n], out[n - 1], nu, dt**2 * forcing_history[n], boundary)
    return out


def lattice_duhamel(problem, grid, dt, forcing_history):
    """
    @brief I^n + sum_m c_m Q_{n-m} F^m for every n, by the propagator recursion.

    @details
    Equivalent to summing lattice_propagators products, at O(n nx) cost:
    z^0 = u0, z^1 = u^1_hom + (dt²/2) F^0, z^{n+1} = A z^n - z^{n-1} + dt² F^n.

    @param forcing_history Array (n+1, nx+1) of F(v) at each time level.
    @return Array of the same shape.
    """
    u0, v0 = problem.initial_fields(grid)
    return _replay(u0, v0, grid, dt, Boundary(problem.boundary), forcing_history)


def continuous_duhamel(problem, grid, times, forcing_history):
    """
    @brief I(t, x) + (S * F)(t, x) from the image kernels and trapezoid quadrature.
    """
    boundary = Boundary(problem.boundary)
    weights = grid.weights
    out = np.empty_like(forcing_history)
    for n, t in enumerate(times):
        out[n] = linear_solution_I(problem.u0, problem.v0, t, grid.nodes, problem.domain, grid, boundary)
        if n == 0:
            continue
        dt = times[1] - times[0]
        acc = np.zeros(grid.nx + 1)
        for m in range(n):
            # The s = t endpoint drops out since the kernel vanishes at lag 0.
            w = 0.5 * dt if m == 0 else dt
            acc += w * (kernel_matrix(t - times[m], grid, boundary) @ (weights * forcing_history[m]))
        out[n] += acc
    if boundary is Boundary.DIRICHLET:
        out[:, 0] = out[:, -1] = 0.0
    return out


def margin_field(U, v, problem, grid, kernel="lattice"):
    """
    @brief m(t, x) on the whole lattice.

    @param U Solved FieldHistory (fixes the lattice).
    @param v Candidate FieldHistory on the same lattice.
    @raises ShapeError On a lattice mismatch.
    @raises ConfigurationError On an unknown kernel.
    """
    if kernel not in KERNELS:
        raise ConfigurationError(f"unknown kernel {kernel!r}; choose from {', '.join(KERNELS)}")
    _check_lattice(U, v, grid)
    forcing = problem.forcing(v.values)
    if kernel == "lattice":
        bracket = lattice_duhamel(problem, grid, U.dt, forcing)
    else:
        bracket = continuous_duhamel(problem, grid, U.times, forcing)
    return v.values - bracket


def comparison_margin(U, v, problem, grid, kernel="lattice"):
    """
    @brief Minimum of m(t, x) over the lattice.
    """
    margins = margin_field(U, v, problem, grid, kernel=kernel)
    low = float(np.min(margins))
    n, j = np.unravel_index(int(np.argmin(margins)), margins.shape)
    logger.debug("comparison margin %.6g at t=%.6g, x=%.6g", low, U.times[n], grid.nodes[j])
    return low


def witness_offset(U, problem, t_f=None):
    """
    @brief f0(t) = exp{[r kappa²/4 (M+1)^(r-1) - (c1² + c2²)/2] J (t - t_f)} at the lattice times.
    """
    params = problem.params
    t_f = U.times[-1] if t_f is None else t_f
    M = float(np.max(U.values[U.times <= t_f * (1 + 1e-12)]))
    rate = params.r * 0.25 * params.kappa**2 * (M + 1.0) ** (params.r - 1.0) - params.lambda_c
    return np.exp(rate * problem.domain.J * (U.times - t_f))


def comparison_witness(U, problem, t_f=None):
    """
    @brief The witness v1 = U + f0 of a nonempty comparison set, M = max U on [0, t_f].
    """
    f0 = witness_offset(U, problem, t_f)
    if not math.isfinite(float(f0[0])) or f0[0] <= 0:
        raise PreconditionError("witness offset underflows at t = 0; shorten t_f")
    return U.shifted(f0)


def offset_margin_field(U, offsets, problem, grid):
    """
    @brief m(t, x) of v = U + w(t) on the lattice, from the increment alone.

    @details
    Because U solves the leapfrog scheme, the replayed bracket of U is U itself
    and the margin of U + w reduces to

        m = w - (S * [F(U + w) - F(U)]),

    the convolution being the lattice Duhamel sum started from zero data. The
    increment is never added to U, so offsets far below one ulp of U (the
    witness near t = 0) still produce a meaningful margin.

    @param offsets w at each lattice time.
    @raises ShapeError If offsets do not match the lattice times.
    """
    offsets = np.asarray(offsets, dtype=float)
    if offsets.shape != U.times.shape:
        raise ShapeError(f"{offsets.size} offsets for {U.times.size} lattice times")
    grid.check(U.values)
    boundary = Boundary(problem.boundary)
    w = np.broadcast_to(offsets[:, None], U.values.shape)
    increment = problem.forcing_increment(U.values, w)
    zero = np.zeros(grid.nx + 1)
    response = _replay(zero, zero, grid, U.dt, boundary, increment)
    return w - response


def witness_margin(U, problem, grid, t_f=None):
    """
    @brief Minimum margin of the witness U + f0 over the lattice on [0, t_f].

    @raises PreconditionError If f0 underflows at t = 0.
    """
    f0 = witness_offset(U, problem, t_f)
    if not math.isfinite(float(f0[0])) or f0[0] <= 0:
        raise PreconditionError("witness offset underflows at t = 0; shorten t_f")
    margins = offset_margin_field(U, f0, problem, grid)
    low = float(np.min(margins))
    n, j = np.unravel_index(int(np.argmin(margins)), margins.shape)
    logger.debug("witness margin %.6g at t=%.6g, x=%.6g (f0(0)=%.3g)", low, U.times[n], grid.nodes[j], f0[0])
    return low
