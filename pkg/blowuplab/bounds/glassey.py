"""
@file bounds/glassey.py
@brief Glassey comparison ODE: phi'' = h(phi), phi(0) = alpha, phi'(0) = beta.

@details
h(s) = kappa²/4 |s|^r - lambda1 s. The trajectory is integrated with classical
RK4 and a step that shrinks with the growth rate of phi, so the steps per
decade stay bounded as phi runs off to infinity. Blow-up is declared when phi
reaches a finite cap; the crossing time is interpolated linearly on the step
that brackets it.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from core.exceptions import HypothesisError, ParameterError, SolverStallError

logger = logging.getLogger(__name__)

MAX_STEPS = 5_000_000


def _h(s, lambda1, kappa, r):
    return 0.25 * kappa * kappa * abs(s) ** r - lambda1 * s


def _H(s, alpha, lambda1, kappa, r):
    # Antiderivative of h vanishing at alpha.
    c = 0.25 * kappa * kappa / (r + 1.0)
    return c * (s ** (r + 1) - alpha ** (r + 1)) - 0.5 * lambda1 * (s - alpha) * (s + alpha)


def _crossing(t0, t1, p0, p1, level):
    # p0 < level <= p1 on the bracketing step
    return t0 + (level - p0) / (p1 - p0) * (t1 - t0)


@dataclass(frozen=True)
class OdeTrajectory:
    """
    @brief Sampled solution of the Glassey ODE.

    @details
    blowup_time is the time phi first reaches cap, or None when the horizon
    ran out first. The last sample is the first step at or past the cap.
    """
    times: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    cap: float
    blowup_time: float | None
    alpha: float
    beta: float
    lambda1: float
    kappa: float
    r: float

    @property
    def blown_up(self):
        return self.blowup_time is not None

    def energy(self):
        """
        @brief (1/2) phi'² - H(phi), conserved along exact trajectories.
        """
        H = _H(self.phi, self.alpha, self.lambda1, self.kappa, self.r)
        return 0.5 * self.dphi**2 - H

    def energy_drift(self):
        """
        @brief max_n |E_n - E_0| / ((1/2) phi'_n² + |H(phi_n)|).
        """
        E = self.energy()
        H = _H(self.phi, self.alpha, self.lambda1, self.kappa, self.r)
        scale = 0.5 * self.dphi**2 + np.abs(H)
        scale = np.where(scale > 0, scale, 1.0)
        return float(np.max(np.abs(E - E[0]) / scale))

    def hitting_time(self, level):
        """
        @brief First time phi reaches level, interpolated inside the step; None if never.
        """
        if self.phi[0] >= level:
            return float(self.times[0])
        above = np.nonzero(self.phi >= level)[0]
        if above.size == 0:
            return None
        i = int(above[0])
        return _crossing(
            self.times[i - 1], self.times[i], self.phi[i - 1], self.phi[i], level,
        )


def glassey_ode(alpha, beta, lambda1, kappa, r, cap=1e6, dt=1e-2, horizon=None, step_fraction=1e-2):
    """
    @brief Integrates phi'' = h(phi) from (alpha, beta) until phi >= cap.

    @param cap Finite blow-up level.
    @param dt Largest step; near blow-up the step is
              min(dt, eta phi/|phi'|, eta sqrt(phi/|h(phi)|)) with eta = step_fraction.
    @param horizon Final time when no blow-up occurs (default 1e3 * max(1, dt)).
    @return OdeTrajectory.
    @raises ParameterError If r <= 1, kappa < 0 or dt <= 0.
    @raises HypothesisError If beta <= 0 or h(alpha) < 0.
    @raises SolverStallError If the step underflows before the cap.
    """
    if not r > 1:
        raise ParameterError(f"nonlinearity exponent must exceed 1, got r={r}")
    if not kappa >= 0:
        raise ParameterError(f"kappa must be non-negative, got kappa={kappa}")
    if not dt > 0:
        raise ParameterError(f"dt must be positive, got dt={dt}")
    if not beta > 0:
        raise HypothesisError(f"beta must be positive, got beta={beta}")
    if not alpha > 0:
        raise HypothesisError(f"alpha must be positive, got alpha={alpha}")
    if _h(alpha, lambda1, kappa, r) < 0:
        # h(s)/s is increasing, so h(alpha) >= 0 gives h >= 0 on [alpha, inf).
        raise HypothesisError(f"h is negative at alpha={alpha:.6g}")
    horizon = 1e3 * max(1.0, dt) if horizon is None else horizon

    def rhs(p, v):
        return v, _h(p, lambda1, kappa, r)

    t, p, v = 0.0, float(alpha), float(beta)
    times, phis, dphis = [t], [p], [v]
    blowup_time = None
    for _ in range(MAX_STEPS):
        if t >= horizon:
            break
        accel = abs(_h(p, lambda1, kappa, r))
        step = min(dt, horizon - t)
        if v != 0:
            step = min(step, step_fraction * p / abs(v))
        if accel > 0:
            step = min(step, step_fraction * math.sqrt(p / accel))
        if step < 1e-14 * (1.0 + t):
            raise SolverStallError(f"step underflow at t={t:.12g}, phi={p:.6g}")

        k1p, k1v = rhs(p, v)
        k2p, k2v = rhs(p + 0.5 * step * k1p, v + 0.5 * step * k1v)
        k3p, k3v = rhs(p + 0.5 * step * k2p, v + 0.5 * step * k2v)
        k4p, k4v = rhs(p + step * k3p, v + step * k3v)
        p_new = p + step / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)
        v_new = v + step / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        t_new = t + step
        if p_new >= cap:
            blowup_time = _crossing(t, t_new, p, p_new, cap)
            times.append(t_new)
            phis.append(p_new)
            dphis.append(v_new)
            break
        t, p, v = t_new, p_new, v_new
        times.append(t)
        phis.append(p)
        dphis.append(v)
    else:
        raise SolverStallError(f"no blow-up or horizon after {MAX_STEPS} steps")

    logger.debug(
        "glassey ODE: %d steps, blow-up time %s", len(times) - 1,
        "none" if blowup_time is None else f"{blowup_time:.10g}",
    )
    return OdeTrajectory(
        times=np.asarray(times),
        phi=np.asarray(phis),
        dphi=np.asarray(dphis),
        cap=cap,
        blowup_time=blowup_time,
        alpha=alpha,
        beta=beta,
        lambda1=lambda1,
        kappa=kappa,
        r=r,
    )


class CapCheck(NamedTuple):
    t_cap: float | None
    t_double_cap: float | None
    relative_change: float | None
    energy_drift: float


def cap_doubling_check(alpha, beta, lambda1, kappa, r, cap=1e6, **kwargs):
    """
    @brief Hitting times of cap and 2*cap on one run, and their relative change.

    @details
    The last accepted sample lies past 2*cap, so both crossings are
    interpolated from the same trajectory.
    """
    trajectory = glassey_ode(alpha, beta, lambda1, kappa, r, cap=2.0 * cap, **kwargs)
    t_cap = trajectory.hitting_time(cap)
    t_double = trajectory.blowup_time
    change = None
    if t_cap is not None and t_double is not None:
        change = abs(t_double - t_cap) / t_double
    return CapCheck(t_cap, t_double, change, trajectory.energy_drift())
