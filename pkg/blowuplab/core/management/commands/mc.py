from core.management.base import LabCommand
from core.runs import execute_campaign
from montecarlo.tasks import run_campaign_task


class Command(LabCommand):
    """
    @brief Runs a Monte Carlo campaign inline or hands it to a Celery worker.
    """

    help = "Estimate the blow-up probability before T + epsilon"

    def add_run_arguments(self, parser):
        parser.add_argument("--workers", type=int, help="Number of path threads.")
        parser.add_argument("--keep-paths", dest="keep_paths", action="store_true", help="Write every path under paths/.")
        parser.add_argument("--record", action="store_true", help="Store a CampaignRecord row.")
        parser.add_argument("--queue", action="store_true", help="Dispatch to a Celery worker.")

    def run(self, config, options):
        if options.get("queue"):
            result = run_campaign_task.delay(
                config.to_document(),
                workers=options.get("workers"),
                keep_paths=options.get("keep_paths", False),
                record=options.get("record", False),
            )
            self.stdout.write(self.style.SUCCESS(f"campaign queued as task {result.id}"))
            return
        summary, directory = execute_campaign(
            config,
            workers=options.get("workers"),
            keep_paths=options.get("keep_paths", False),
            record=options.get("record", False),
        )
        self.stdout.write(f"p_hat={summary.p_hat:.6g} ci=[{summary.ci_low:.6g}, {summary.ci_high:.6g}]")
        self.stdout.write(
            self.style.SUCCESS(f"{summary.n_blowup}/{summary.n_paths} paths blew up -> {directory}")
        )
