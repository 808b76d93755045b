"""
@file tests/montecarlo/test_campaign.py
@brief Campaign folding: reproducibility, moment curves, the comparison margin and artifacts.
"""

import csv
import dataclasses
import json
import math

import numpy as np
import pytest

from core.config import RunConfig
from core.exceptions import ConfigurationError, DomainError, PathCrashError
from core.runs import execute_campaign
from montecarlo.campaign import (
    Campaign,
    McSummary,
    run_campaign,
    trimmed_vs_comparison,
    write_campaign_artifacts,
)
from spde.engine import SpdeSpec, simulate_path
from spde.noise import derive_seed
from spectral.geometry import Boundary, Interval, SpatialGrid
from tests.factories import PhysParamsFactory, RunDocumentFactory


def make_campaign(n_paths=32, master_seed=99, delta=0.0, f_choice="power", nx=32, **flags):
    grid = SpatialGrid(J=math.pi, nx=nx)
    spec = SpdeSpec(
        domain=Interval(math.pi),
        params=PhysParamsFactory(),
        u0=lambda x: 4.0 * np.sin(x),
        v0=np.sin,
        T_bound=1.0,
        epsilon=0.5,
        L=1e3,
        f_choice=f_choice,
    )
    return Campaign(
        spec=spec, grid=grid, dt=0.5 * grid.dx, n_paths=n_paths,
        master_seed=master_seed, delta=delta, **flags,
    )


@pytest.fixture(scope="module")
def summary():
    return run_campaign(make_campaign(n_paths=48, delta=0.25), workers=2)


def test_rejects_small_campaigns():
    with pytest.raises(DomainError):
        make_campaign(n_paths=29)


def test_rejects_large_delta():
    with pytest.raises(DomainError):
        make_campaign(delta=0.4)


def test_rejects_seed_outside_64_bits():
    with pytest.raises(DomainError):
        make_campaign(master_seed=2**64)


def test_zero_noise_never_blows_up():
    result = run_campaign(make_campaign(f_choice="zero", comparison=False), workers=1)
    assert result.n_blowup == 0
    assert result.p_hat == 0.0
    assert result.ci_low == 0.0
    assert all(s is None for s in result.sigma_L)


def test_boundary_clamp_is_reported_once_per_campaign(mocker):
    logger = mocker.patch("spde.engine.logger")
    campaign = make_campaign(n_paths=30, f_choice="zero", comparison=False)
    campaign = dataclasses.replace(campaign, spec=dataclasses.replace(campaign.spec, boundary=Boundary.DIRICHLET))
    run_campaign(campaign, workers=2)
    assert logger.warning.call_count == 1
    assert "u(0)" in logger.warning.call_args.args
    clamps = [c for c in logger.debug.call_args_list if c.args[0].startswith("clamping")]
    assert len(clamps) == 30


@pytest.mark.parametrize("workers", [2, 8])
def test_worker_count_does_not_change_the_summary(workers):
    campaign = make_campaign(n_paths=30)
    assert run_campaign(campaign, workers=workers).to_json() == run_campaign(campaign, workers=1).to_json()


def test_interval_brackets_estimate(summary):
    assert summary.ci_low <= summary.p_hat <= summary.ci_high
    assert summary.p_hat == summary.n_blowup / summary.n_paths


def test_trimmed_below_untrimmed(summary):
    trimmed = np.asarray(summary.trimmed_curve)
    untrimmed = np.asarray(summary.untrimmed_curve)
    assert np.all(trimmed <= untrimmed)


def test_pointwise_below_trimmed(summary):
    # sup_x E[u²] never exceeds E[sup_x u²] over the same kept paths
    pointwise = np.asarray(summary.pointwise_curve)
    trimmed = np.asarray(summary.trimmed_curve)
    assert np.all(pointwise <= trimmed * (1.0 + 1e-12))


def test_curves_share_checkpoints(summary):
    n = len(summary.times)
    assert len(summary.trimmed_curve) == len(summary.comparison_curve) == n
    assert summary.times[0] == 0.0
    assert summary.times[-1] <= summary.horizon


def test_margin_shrinks_with_trimming(summary):
    untrimmed = trimmed_vs_comparison(summary, curve="untrimmed")
    trimmed = trimmed_vs_comparison(summary)
    both = np.isfinite(untrimmed) & np.isfinite(trimmed)
    assert np.all(trimmed[both] <= untrimmed[both])


def test_margin_of_zero_curves():
    hand_built = McSummary(
        n_paths=30, n_blowup=0, p_hat=0.0, ci_low=0.0, ci_high=0.1, delta=0.0, horizon=1.0,
        T_bound=0.5, master_seed=0, spec_hash="0" * 64, boundary="periodic",
        times=[0.0, 0.5, 1.0], trimmed_curve=[0.0] * 3, untrimmed_curve=[0.0] * 3,
        pointwise_curve=None, comparison_curve=[0.0] * 3, sigma_quantiles={}, sigma_min=None,
        sigma_L=[None] * 30,
    )
    assert trimmed_vs_comparison(hand_built).tolist() == [0.0, 0.0, 0.0]


def test_margin_needs_comparison_curve():
    result = run_campaign(make_campaign(f_choice="zero", comparison=False, pointwise=False), workers=1)
    with pytest.raises(ConfigurationError):
        trimmed_vs_comparison(result)


def test_unknown_margin_curve(summary):
    with pytest.raises(ConfigurationError):
        trimmed_vs_comparison(summary, curve="median")


def test_crashing_path_aborts_with_its_seed(mocker):
    campaign = make_campaign(n_paths=30, master_seed=5)
    bad_seed = derive_seed(5, 3)

    def flaky(spec, grid, dt, seed, keep_fields=False):
        if seed == bad_seed:
            raise FloatingPointError("overflow in step")
        return simulate_path(spec, grid, dt, seed, keep_fields=keep_fields)

    mocker.patch("montecarlo.campaign.simulate_path", side_effect=flaky)
    with pytest.raises(PathCrashError) as excinfo:
        run_campaign(campaign, workers=1)
    assert excinfo.value.seed == bad_seed


# ───────────────────────────────────────────────
# Artifacts
# ───────────────────────────────────────────────


def test_artifacts_are_written(tmp_path, summary):
    campaign = make_campaign(n_paths=48, delta=0.25)
    directory = write_campaign_artifacts(campaign, summary, tmp_path)
    assert directory == tmp_path / "run-99"
    for name in ("summary.json", "sigma_histogram.csv", "margin.csv", "manifest.json"):
        assert (directory / name).is_file()

    manifest = json.loads((directory / "manifest.json").read_text())
    assert manifest["spec_hash"] == summary.spec_hash == campaign.spec_hash()
    with open(directory / "margin.csv", newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["t", "trimmed", "untrimmed", "pointwise", "comparison", "margin"]
    assert len(rows) == len(summary.times) + 1
    with open(directory / "sigma_histogram.csv", newline="") as handle:
        counts = [int(row["count"]) for row in csv.DictReader(handle)]
    assert sum(counts) == sum(1 for s in summary.sigma_L if s is not None)


def test_rerun_writes_identical_summary(tmp_path):
    campaign = make_campaign(n_paths=30)
    first = write_campaign_artifacts(campaign, run_campaign(campaign, workers=1), tmp_path / "a")
    second = write_campaign_artifacts(campaign, run_campaign(campaign, workers=4), tmp_path / "b")
    assert (first / "summary.json").read_bytes() == (second / "summary.json").read_bytes()


def test_kept_paths(tmp_path):
    run_campaign(make_campaign(n_paths=30, comparison=False), workers=2, paths_dir=tmp_path)
    assert (tmp_path / "path-00000.csv").is_file()
    assert (tmp_path / "path-00029.json").is_file()


def test_desk_scale_blowup_probability_is_positive(tmp_path):
    config = RunConfig.from_document(
        RunDocumentFactory(nx=128, n_paths=512, master_seed=20240601, output_dir=str(tmp_path))
    )
    result, directory = execute_campaign(config)
    assert result.n_blowup >= 1
    assert result.ci_low > 0.0
    assert json.loads((directory / "summary.json").read_text())["ci_low"] > 0.0
