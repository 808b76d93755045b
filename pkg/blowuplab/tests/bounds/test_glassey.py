"""
@file tests/bounds/test_glassey.py
@brief The Glassey comparison ODE against the quadrature.
"""

import numpy as np
import pytest

from bounds.glassey import cap_doubling_check, glassey_ode
from bounds.quadrature import blowup_time_T, hitting_time_integral
from core.exceptions import HypothesisError, ParameterError

EXAMPLE = dict(alpha=2.0, beta=1.0, lambda1=1.0, kappa=2.0, r=2.0)


@pytest.fixture(scope="module")
def trajectory():
    return glassey_ode(**EXAMPLE, cap=1e6)


def test_free_motion_never_blows_up():
    trajectory = glassey_ode(alpha=1.0, beta=0.5, lambda1=0.0, kappa=0.0, r=2.0, horizon=10.0)
    assert not trajectory.blown_up
    assert trajectory.times[-1] == pytest.approx(10.0)
    assert trajectory.phi[-1] == pytest.approx(6.0, rel=1e-12)


def test_hitting_time_close_to_T(trajectory):
    T = blowup_time_T(**EXAMPLE).T
    assert trajectory.blown_up
    assert trajectory.blowup_time <= T
    assert trajectory.blowup_time == pytest.approx(T, rel=1e-2)


def test_energy_is_conserved(trajectory):
    assert trajectory.energy_drift() < 1e-6


def test_phi_increases(trajectory):
    assert np.all(np.diff(trajectory.phi) > 0)
    assert np.all(trajectory.dphi > 0)


@pytest.mark.parametrize("level", [10.0, 1e2, 1e3])
def test_ode_matches_hitting_time_integral(trajectory, level):
    expected = hitting_time_integral(**EXAMPLE, level=level).value
    assert trajectory.hitting_time(level) == pytest.approx(expected, rel=5e-3)


@pytest.mark.parametrize("level", [10.0, 1e3, 1e6])
def test_crossing_lies_on_the_bracketing_chord(trajectory, level):
    t = trajectory.hitting_time(level)
    i = int(np.argmax(trajectory.phi >= level))
    t0, t1 = trajectory.times[i - 1 : i + 1]
    p0, p1 = trajectory.phi[i - 1 : i + 1]
    assert t0 < t <= t1
    assert p0 + (p1 - p0) * (t - t0) / (t1 - t0) == pytest.approx(level, rel=1e-12)


def test_blowup_time_is_the_cap_crossing(trajectory):
    assert trajectory.hitting_time(trajectory.cap) == trajectory.blowup_time
    assert trajectory.times[-2] < trajectory.blowup_time <= trajectory.times[-1]


def test_undamped_slow_start():
    params = dict(alpha=1.0, beta=0.001, lambda1=0.0, kappa=2.0, r=2.0)
    trajectory = glassey_ode(**params, cap=1e6)
    expected = hitting_time_integral(**params, level=1e6).value
    assert trajectory.blowup_time == pytest.approx(expected, rel=5e-3)


def test_hitting_time_grows_with_cap():
    check = cap_doubling_check(**EXAMPLE, cap=1e6)
    T = blowup_time_T(**EXAMPLE).T
    assert check.t_cap < check.t_double_cap <= T
    assert 0 < check.relative_change < 1e-2
    assert check.energy_drift < 1e-6


def test_rejects_zero_beta():
    with pytest.raises(HypothesisError):
        glassey_ode(**dict(EXAMPLE, beta=0.0))


def test_rejects_negative_h_at_alpha():
    with pytest.raises(HypothesisError):
        glassey_ode(**dict(EXAMPLE, alpha=0.5))


def test_rejects_bad_step():
    with pytest.raises(ParameterError):
        glassey_ode(**EXAMPLE, dt=0.0)
