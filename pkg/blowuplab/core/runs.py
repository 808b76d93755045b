"""
@file core/runs.py
@brief The runs behind the management commands and the Celery task.

@details
Each run validates everything it can before the first file is written, so a
configuration error never leaves partial output behind. T always comes from
the bound computation; the stochastic runs refuse to start without it.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

from django.conf import settings

from bounds.glassey import cap_doubling_check
from bounds.hypotheses import require_admissible
from core.artifacts import write_json
from core.exceptions import HypothesisError
from detwave.solver import solve_det
from detwave.stepping import courant
from montecarlo.campaign import run_campaign, run_directory, write_campaign_artifacts
from spde.engine import simulate_path
from spde.noise import derive_seed

logger = logging.getLogger(__name__)

DET_STEM = "det_solve"


@dataclass(frozen=True)
class DetOutcome:
    record: object
    report: object
    horizon: float
    csv_path: Path
    json_path: Path


@dataclass(frozen=True)
class SpdeOutcome:
    path: object
    report: object
    csv_path: Path
    json_path: Path


def run_bound(config):
    """
    @brief BoundReport of the configured initial data (T only when H2 holds).
    """
    return config.bound_report()


def _require_T(report):
    require_admissible(report)
    if report.T is None:
        raise HypothesisError("no finite blow-up time bound; the stochastic runs need T")
    return report.T


def run_det(config):
    """
    @brief Deterministic Dirichlet solve up to the configured horizon.

    @details
    Writes det_solve.csv (t, sup_norm, phi) and det_solve.json (the record
    summary, the T used and the horizon) under output_dir.
    """
    report = run_bound(config)
    grid, dt = config.grid, config.dt
    courant(dt, grid)
    horizon = config.det_horizon(report.T)
    record = solve_det(
        config.det_problem(), grid, dt, horizon, config.L,
        checkpoint_every=config.checkpoint_every,
        max_halvings=settings.BLOWUPLAB["MAX_HALVINGS"],
    )
    directory = Path(config.output_dir)
    csv_path = record.write_csv(directory / f"{DET_STEM}.csv")
    document = record.summary()
    document.update({"T": report.T, "T_error": report.T_error, "horizon": horizon})
    json_path = write_json(directory / f"{DET_STEM}.json", document)
    logger.info("det solve: sigma_L=%s, T=%s, horizon %.6g", record.sigma_L, report.T, horizon)
    return DetOutcome(record, report, horizon, csv_path, json_path)


def run_spde_path(config, seed=None):
    """
    @brief One stochastic path; the default seed is the one path 0 of the campaign uses.
    """
    report = run_bound(config)
    spec = config.spde_spec(_require_T(report))
    grid, dt = config.grid, config.dt
    courant(dt, grid)
    spec.validate(grid)
    spec.warn_boundary_clamp(grid)
    seed = derive_seed(config.master_seed, 0) if seed is None else seed
    path = simulate_path(spec, grid, dt, seed)
    csv_path, json_path = path.write(Path(config.output_dir), stem=f"spde-{seed}")
    logger.info("spde path seed %d: sigma_L=%s", seed, path.sigma_L)
    return SpdeOutcome(path, report, Path(csv_path), Path(json_path))


def execute_campaign(config, workers=None, keep_paths=False, record=False):
    """
    @brief Bound, campaign and artifacts; optionally stores a CampaignRecord.

    @return Tuple (McSummary, run directory).
    """
    from montecarlo.models import CampaignRecord

    report = run_bound(config)
    campaign = config.campaign(_require_T(report))
    workers = workers if workers is not None else config.workers
    paths_dir = run_directory(config.output_dir, config.master_seed) / "paths" if keep_paths else None
    summary = run_campaign(campaign, workers=workers, paths_dir=paths_dir)
    directory = write_campaign_artifacts(campaign, summary, config.output_dir)
    if record:
        CampaignRecord.from_summary(summary)
    return summary, directory


def run_ode_check(config, cap=None):
    """
    @brief Glassey ODE hitting times at cap and 2*cap against the quadrature T.
    """
    report = require_admissible(run_bound(config))
    params = config.params
    lab = settings.BLOWUPLAB
    cap = lab["ODE_CAP"] if cap is None else cap
    check = cap_doubling_check(
        report.alpha, report.beta, report.lambda1, params.kappa, params.r,
        cap=cap, dt=lab["ODE_DT"], step_fraction=lab["ODE_STEP_FRACTION"],
    )
    relative = None
    if check.t_cap is not None and report.T:
        relative = abs(check.t_cap - report.T) / report.T
    return {
        "T": report.T,
        "T_error": report.T_error,
        "cap": cap,
        "t_cap": check.t_cap,
        "t_2cap": check.t_double_cap,
        "cap_relative_change": check.relative_change,
        "relative_diff_T": relative,
        "energy_drift": check.energy_drift,
    }
