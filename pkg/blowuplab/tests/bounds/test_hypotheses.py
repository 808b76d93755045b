"""
@file tests/bounds/test_hypotheses.py
@brief H1/H2 checks, derived constants and the BoundReport document.
"""

import json
import math

import numpy as np
import pytest

from bounds.hypotheses import (
    BoundReport,
    PhysParams,
    blowup_threshold,
    check_hypotheses,
    compute_alpha_beta,
    compute_bound_report,
    require_admissible,
)
from core.exceptions import HypothesisError, ParameterError
from tests.factories import PhysParamsFactory

zero = lambda x: np.zeros_like(x)  # noqa: E731
one = lambda x: np.ones_like(x)  # noqa: E731


def test_alpha_beta_of_zero_data(domain, grid):
    assert compute_alpha_beta(zero, zero, domain, grid) == (0.0, 0.0)


def test_alpha_beta_of_constant_data(domain, grid):
    alpha, beta = compute_alpha_beta(one, one, domain, grid)
    assert alpha == pytest.approx(1.0, abs=1e-4)
    assert beta == pytest.approx(1.0, abs=1e-4)


def test_alpha_beta_of_example(domain, grid, example_data):
    alpha, beta = compute_alpha_beta(*example_data, domain, grid)
    assert alpha == pytest.approx(math.pi, rel=1e-12)
    assert beta == pytest.approx(math.pi / 4, rel=1e-12)


def test_example_satisfies_both_hypotheses(domain, grid, params, example_data):
    report = check_hypotheses(*example_data, params, domain, grid)
    assert report.mu1 == pytest.approx(1.0)
    assert report.lambda1 == pytest.approx(1.0)
    assert report.threshold == pytest.approx(1.0)
    assert report.h1_ok and report.h2_ok
    assert report.T is None


def test_zero_velocity_fails_h1(domain, grid, params, example_data):
    u0, _ = example_data
    report = check_hypotheses(u0, zero, params, domain, grid)
    assert not report.h1_ok
    assert not report.h2_ok


def test_weak_nonlinearity_fails_h2(domain, grid, example_data):
    report = check_hypotheses(*example_data, PhysParamsFactory(kappa=0.01), domain, grid)
    assert report.threshold == pytest.approx(4.0 / 0.01**2)
    assert report.h1_ok
    assert not report.h2_ok


def test_negative_displacement_fails_h1(domain, grid, params):
    report = check_hypotheses(lambda x: -np.sin(x), np.sin, params, domain, grid)
    assert not report.h1_ok


def test_lambda1_includes_noise_coefficients(domain, grid, example_data):
    report = check_hypotheses(*example_data, PhysParamsFactory(c1=1.0, c2=1.0), domain, grid)
    assert report.lambda1 == pytest.approx(2.0)
    assert report.lambda1 >= report.mu1


@pytest.mark.parametrize("r", [1.0, 0.5])
def test_params_reject_small_exponent(r):
    with pytest.raises(ParameterError):
        PhysParams(kappa=1.0, r=r)


def test_hypotheses_reject_vanishing_kappa(domain, grid, example_data):
    with pytest.raises(ParameterError):
        check_hypotheses(*example_data, PhysParamsFactory(kappa=0.0), domain, grid)


def test_threshold_overflow_is_infinite():
    assert blowup_threshold(1e300, 1e-300, 1.0001) == math.inf


def test_threshold_without_damping():
    assert blowup_threshold(0.0, 2.0, 2.0) == 0.0


def test_report_document_fields(domain, grid, params, example_data):
    report = compute_bound_report(*example_data, params, domain, grid)
    document = json.loads(report.to_json())
    assert set(document) == {"mu1", "lambda1", "alpha", "beta", "threshold", "h1_ok", "h2_ok", "T", "T_error"}
    assert 0 < document["T"] < math.inf
    assert document["T_error"] >= 0


def test_unreachable_threshold_serializes_as_null():
    report = BoundReport(
        mu1=1.0, lambda1=1e300, alpha=0.5, beta=0.0, threshold=math.inf, h1_ok=True, h2_ok=False,
    )
    text = report.to_json()
    assert "Infinity" not in text
    document = json.loads(text)
    assert document["threshold"] is None
    assert document["T"] is None


def test_report_without_h2_has_no_time(domain, grid, example_data):
    report = compute_bound_report(*example_data, PhysParamsFactory(kappa=0.01), domain, grid)
    assert report.T is None
    with pytest.raises(HypothesisError, match="H2"):
        require_admissible(report)


def test_require_admissible_names_both():
    report = BoundReport(1.0, 1.0, 0.0, 0.0, 1.0, False, False)
    with pytest.raises(HypothesisError, match="H1, H2"):
        require_admissible(report)
