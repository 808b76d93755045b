"""
@file detwave/stepping.py
@brief The explicit leapfrog update shared by the deterministic and stochastic solvers.

@details
With nu = dt/dx and a forcing array already scaled to the step,

    u^{n+1} = 2u^n - u^{n-1} + nu² (u_{j+1} - 2u_j + u_{j-1}) + forcing^n,
    u^1     = u^0 + dt v^0 + (nu²/2)(u0_{j+1} - 2u0_j + u0_{j-1}) + forcing^0 / 2.
"""

from core.exceptions import ConfigurationError
from spectral.geometry import apply_boundary, second_difference


def courant(dt, grid):
    """
    @brief nu = dt/dx after checking 0 < dt <= dx.

    @raises ConfigurationError On a CFL violation.
    """
    if not dt > 0:
        raise ConfigurationError(f"time step must be positive, got dt={dt}")
    nu = dt / grid.dx
    if nu > 1.0 + 1e-12:
        raise ConfigurationError(f"CFL violated: dt/dx = {nu:.6g} > 1")
    return min(nu, 1.0)


def first_step(u0, v0, dt, nu, forcing, boundary):
    u1 = u0 + dt * v0 + 0.5 * nu**2 * second_difference(u0, boundary) + 0.5 * forcing
    return apply_boundary(u1, boundary)


def leapfrog_step(u, u_prev, nu, forcing, boundary):
    u_next = 2.0 * u - u_prev + nu**2 * second_difference(u, boundary) + forcing
    return apply_boundary(u_next, boundary)


def halve_previous(u, u_prev, nu, forcing, boundary):
    """
    @brief Level t - dt/2 from levels t and t - dt, for restarting at half the step.

    @details
    u(t - dt/2) = (u + u_prev)/2 - dt² a/8 to third order, with dt² a given by
    the step increment nu² * second difference + forcing.
    """
    increment = nu**2 * second_difference(u, boundary) + forcing
    return apply_boundary(0.5 * (u + u_prev) - 0.125 * increment, boundary)
