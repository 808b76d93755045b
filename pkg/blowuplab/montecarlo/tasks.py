"""
@file montecarlo/tasks.py
@brief Celery task definitions for Monte Carlo campaigns.
"""

from celery import shared_task


@shared_task
def run_campaign_task(document, output_dir=None, workers=None, keep_paths=False, record=True):
    """
    @brief Runs a campaign from a configuration document in the background.

    @details
    Parses the document, computes the bound, runs the campaign, writes the
    artifacts and optionally stores a CampaignRecord.

    @param document dict: Run configuration (the JSON document).
    @return str: One-line summary with the run directory.
    """
    from core.config import RunConfig
    from core.runs import execute_campaign

    config = RunConfig.from_document(document)
    if output_dir is not None:
        config = config.with_overrides(output_dir=output_dir)
    summary, directory = execute_campaign(config, workers=workers, keep_paths=keep_paths, record=record)
    return (
        f"{summary.n_blowup}/{summary.n_paths} paths blew up "
        f"(p_hat={summary.p_hat:.4g}, CI [{summary.ci_low:.4g}, {summary.ci_high:.4g}]) -> {directory}"
    )
