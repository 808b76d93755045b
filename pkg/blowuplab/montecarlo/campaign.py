"""
@file montecarlo/campaign.py
@brief Monte Carlo campaigns over stochastic paths and their summaries.

@details
A campaign runs n_paths independent paths with seeds derived from the master
seed, then folds the results in path-index order. The fold estimates the
blow-up probability before T + epsilon with a Wilson interval, the
delta-trimmed second-moment curves and the sigma_L statistics, and attaches
the deterministic comparison curve of the unscaled data.

Paths run on a thread pool. Every path owns its noise and lattice, and the
fold only starts once all paths are back, so the summary does not depend on
the number of workers.
"""

import hashlib
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import django
import numpy as np
from django.conf import settings

import blowuplab
from core.artifacts import dumps, write_csv, write_json
from core.exceptions import ConfigurationError, DomainError, PathCrashError
from detwave.solver import DetProblem, solve_det
from detwave.stepping import courant
from montecarlo.stats import MAX_DELTA, trimmed_mask, wilson_interval
from spde.engine import simulate_path, time_rows
from spde.noise import derive_seed
from spectral.geometry import Boundary

logger = logging.getLogger(__name__)

MIN_PATHS = 30
QUANTILES = (0.1, 0.25, 0.5, 0.75, 0.9)
HISTOGRAM_BINS = 20


@dataclass(frozen=True)
class Campaign:
    """
    @brief A Monte Carlo experiment on one SpdeSpec.

    @details
    labels carries the descriptors the campaign was configured from (initial
    data descriptors and the like); they enter the spec hash.
    """
    spec: object
    grid: object
    dt: float
    n_paths: int
    master_seed: int
    delta: float = 0.0
    pointwise: bool = True
    comparison: bool = True
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.delta <= MAX_DELTA:
            raise DomainError(f"delta must lie in [0, 1/3], got {self.delta}")
        if self.n_paths < MIN_PATHS:
            raise DomainError(f"a campaign needs at least {MIN_PATHS} paths, got {self.n_paths}")
        if not 0 <= self.master_seed < 2**64:
            raise DomainError(f"master_seed must be a 64-bit unsigned value, got {self.master_seed}")

    @property
    def n_steps(self):
        return time_rows(self.spec.horizon, self.dt)

    def checkpoint_steps(self):
        """
        @brief Step indices of the common checkpoints (always including the last step).
        """
        steps = list(range(0, self.n_steps + 1, self.spec.checkpoint_every))
        if steps[-1] != self.n_steps:
            steps.append(self.n_steps)
        return np.asarray(steps)

    def describe(self):
        spec = self.spec
        return {
            "J": spec.domain.J,
            "c1": spec.params.c1,
            "c2": spec.params.c2,
            "kappa": spec.params.kappa,
            "r": spec.params.r,
            "f_choice": spec.f_choice,
            "boundary": Boundary(spec.boundary).value,
            "T_bound": spec.T_bound,
            "epsilon": spec.epsilon,
            "L": spec.L,
            "checkpoint_every": spec.checkpoint_every,
            "nx": self.grid.nx,
            "dt": self.dt,
            "n_paths": self.n_paths,
            "master_seed": self.master_seed,
            "delta": self.delta,
            "labels": self.labels,
        }

    def spec_hash(self):
        canonical = json.dumps(self.describe(), sort_keys=True, separators=(",", ":"), default=str)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class PathOutcome:
    """
    @brief What the fold needs from one path, aligned to the campaign checkpoints.
    """
    index: int
    seed: int
    sigma_L: float | None
    overflow: bool
    key: float
    sup_sq: np.ndarray
    u_sq: np.ndarray | None


@dataclass
class McSummary:
    """
    @brief Aggregate of a campaign. Curves are sampled at `times`; inf marks a
    curve that a blown-up path (or the comparison solution) has left.
    """
    n_paths: int
    n_blowup: int
    p_hat: float
    ci_low: float
    ci_high: float
    delta: float
    horizon: float
    T_bound: float
    master_seed: int
    spec_hash: str
    boundary: str
    times: list
    trimmed_curve: list
    untrimmed_curve: list
    pointwise_curve: list | None
    comparison_curve: list | None
    sigma_quantiles: dict
    sigma_min: float | None
    sigma_L: list

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return dumps(self.to_dict())


# ───────────────────────────────────────────────
# Paths
# ───────────────────────────────────────────────


def _align(values, path_steps, steps, blown_up, fill_shape=()):
    # Checkpoints past the end of a blown-up path are infinite.
    lookup = {int(n): i for i, n in enumerate(path_steps)}
    out = np.full((steps.size,) + fill_shape, np.inf if blown_up else np.nan)
    for k, n in enumerate(steps):
        i = lookup.get(int(n))
        if i is not None:
            out[k] = values[i]
    return out


def run_path(campaign, index, paths_dir=None):
    """
    @brief Simulates path `index` and reduces it to a PathOutcome.

    @raises PathCrashError If anything inside the path raises.
    """
    seed = derive_seed(campaign.master_seed, index)
    try:
        path = simulate_path(campaign.spec, campaign.grid, campaign.dt, seed, keep_fields=campaign.pointwise)
        if paths_dir is not None:
            path.write(paths_dir, stem=f"path-{index:05d}")
    except Exception as exc:
        logger.error("path %d (seed %d) crashed: %s", index, seed, exc)
        raise PathCrashError(seed, f"path {index} with seed {seed} crashed: {exc}") from exc

    steps = campaign.checkpoint_steps()
    path_steps = np.rint(path.times / campaign.dt).astype(int)
    sup_sq = _align(path.sup_u_sq, path_steps, steps, path.blown_up)
    u_sq = None
    if campaign.pointwise:
        u_sq = _align(path.fields**2, path_steps, steps, path.blown_up, (campaign.grid.nx + 1,))
    key = math.inf if path.overflow else float(np.max(path.sup_norm))
    return PathOutcome(index, seed, path.sigma_L, path.overflow, key, sup_sq, u_sq)


def _map_paths(campaign, workers, paths_dir):
    indices = range(campaign.n_paths)
    if workers <= 1:
        return [run_path(campaign, i, paths_dir) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda i: run_path(campaign, i, paths_dir), indices))


# ───────────────────────────────────────────────
# Campaign
# ───────────────────────────────────────────────


def comparison_curve(campaign):
    """
    @brief sup_x U(t) of the deterministic problem with the unscaled data at the campaign checkpoints.
    """
    spec = campaign.spec
    problem = DetProblem(spec.domain, spec.params, spec.u0, spec.v0)
    record = solve_det(
        problem, campaign.grid, campaign.dt, spec.horizon, spec.L,
        checkpoint_every=spec.checkpoint_every, max_halvings=0,
    )
    record_steps = np.rint(record.times / campaign.dt).astype(int)
    return _align(record.sup_norm, record_steps, campaign.checkpoint_steps(), record.blown_up)


def _quantiles(samples):
    if not samples:
        return {f"q{int(q * 100):02d}": None for q in QUANTILES}
    values = np.quantile(np.asarray(samples), QUANTILES)
    return {f"q{int(q * 100):02d}": float(v) for q, v in zip(QUANTILES, values)}


def run_campaign(campaign, workers=None, paths_dir=None):
    """
    @brief Runs every path and folds the outcomes into an McSummary.

    @param workers Thread count (settings default).
    @param paths_dir Directory for per-path CSV and JSON files, or None.
    @raises PathCrashError If any path crashes; the campaign is aborted.
    """
    workers = settings.BLOWUPLAB["WORKERS"] if workers is None else max(1, int(workers))
    spec = campaign.spec
    courant(campaign.dt, campaign.grid)
    spec.validate(campaign.grid)
    spec.warn_boundary_clamp(campaign.grid)
    horizon = spec.horizon
    logger.info(
        "campaign start: %d paths, master seed %d, horizon %.6g, %d workers",
        campaign.n_paths, campaign.master_seed, horizon, workers,
    )
    outcomes = _map_paths(campaign, workers, paths_dir)

    sigmas = [o.sigma_L for o in outcomes]
    n_blowup = sum(1 for s in sigmas if s is not None and s < horizon)
    ci_low, ci_high = wilson_interval(n_blowup, campaign.n_paths)
    p_hat = n_blowup / campaign.n_paths

    keys = np.array([o.key for o in outcomes])
    keep = trimmed_mask(keys, campaign.delta)
    sup_sq = np.stack([o.sup_sq for o in outcomes])
    with np.errstate(invalid="ignore"):
        trimmed = np.sum(sup_sq[keep], axis=0) / campaign.n_paths
        untrimmed = np.sum(sup_sq, axis=0) / campaign.n_paths
        pointwise = None
        if campaign.pointwise:
            u_sq = np.stack([o.u_sq for o in outcomes])
            pointwise = np.max(np.sum(u_sq[keep], axis=0) / campaign.n_paths, axis=-1)

    comparison = comparison_curve(campaign) if campaign.comparison else None
    kept_sigmas = [s for s, k in zip(sigmas, keep) if k and s is not None]
    times = campaign.checkpoint_steps() * campaign.dt

    summary = McSummary(
        n_paths=campaign.n_paths,
        n_blowup=n_blowup,
        p_hat=p_hat,
        ci_low=ci_low,
        ci_high=ci_high,
        delta=campaign.delta,
        horizon=horizon,
        T_bound=spec.T_bound,
        master_seed=campaign.master_seed,
        spec_hash=campaign.spec_hash(),
        boundary=Boundary(spec.boundary).value,
        times=times.tolist(),
        trimmed_curve=trimmed.tolist(),
        untrimmed_curve=untrimmed.tolist(),
        pointwise_curve=None if pointwise is None else pointwise.tolist(),
        comparison_curve=None if comparison is None else comparison.tolist(),
        sigma_quantiles=_quantiles([s for s in sigmas if s is not None]),
        sigma_min=min(kept_sigmas) if kept_sigmas else None,
        sigma_L=sigmas,
    )
    logger.info(
        "campaign done: %d/%d blow-ups, p_hat=%.4g, 95%% CI [%.4g, %.4g]",
        n_blowup, campaign.n_paths, p_hat, ci_low, ci_high,
    )
    return summary


def trimmed_vs_comparison(summary, curve="trimmed"):
    """
    @brief E_delta[sup_x u²](t) - sup_x U(t) at each checkpoint.

    @param curve "trimmed" (the campaign delta) or "untrimmed" (delta = 0).
    @raises ConfigurationError If the summary has no comparison curve.
    """
    if summary.comparison_curve is None:
        raise ConfigurationError("summary carries no comparison curve")
    if curve not in ("trimmed", "untrimmed"):
        raise ConfigurationError(f"unknown curve {curve!r}")
    moments = np.asarray(getattr(summary, f"{curve}_curve"), dtype=float)
    comparison = np.asarray(summary.comparison_curve, dtype=float)
    if moments.shape != comparison.shape:
        raise ConfigurationError("moment and comparison curves are sampled differently")
    with np.errstate(invalid="ignore"):
        return moments - comparison


# ───────────────────────────────────────────────
# Artifacts
# ───────────────────────────────────────────────


def run_directory(output_dir, master_seed):
    return Path(output_dir) / f"run-{master_seed}"


def manifest(campaign, summary):
    return {
        "spec_hash": summary.spec_hash,
        "grid": {"J": campaign.grid.J, "nx": campaign.grid.nx, "dx": campaign.grid.dx},
        "dt": campaign.dt,
        "config": campaign.describe(),
        "versions": {
            "blowuplab": blowuplab.__version__,
            "django": django.get_version(),
            "numpy": np.__version__,
        },
    }


def sigma_histogram(summary, bins=HISTOGRAM_BINS):
    """
    @brief (bin_low, bin_high, count) rows of the hitting times over [0, horizon].
    """
    samples = [s for s in summary.sigma_L if s is not None]
    counts, edges = np.histogram(samples, bins=bins, range=(0.0, summary.horizon))
    return [(float(edges[i]), float(edges[i + 1]), int(counts[i])) for i in range(bins)]


def write_campaign_artifacts(campaign, summary, output_dir):
    """
    @brief Writes summary.json, sigma_histogram.csv, margin.csv and manifest.json.

    @return The run directory.
    """
    directory = run_directory(output_dir, campaign.master_seed)
    write_json(directory / "summary.json", summary.to_dict())
    write_csv(directory / "sigma_histogram.csv", ("bin_low", "bin_high", "count"), sigma_histogram(summary))
    margin = (
        trimmed_vs_comparison(summary)
        if summary.comparison_curve is not None
        else np.full(len(summary.times), np.nan)
    )
    comparison = summary.comparison_curve or [None] * len(summary.times)
    pointwise = summary.pointwise_curve or [None] * len(summary.times)
    rows = zip(
        summary.times, summary.trimmed_curve, summary.untrimmed_curve, pointwise, comparison, margin.tolist(),
    )
    write_csv(
        directory / "margin.csv",
        ("t", "trimmed", "untrimmed", "pointwise", "comparison", "margin"),
        rows,
    )
    write_json(directory / "manifest.json", manifest(campaign, summary))
    return directory

