from core.management.base import LabCommand
from core.runs import run_spde_path


class Command(LabCommand):
    """
    @brief One stochastic path. --seed is the path seed here; without it the
    seed of path 0 of the configured campaign is used.
    """

    help = "Simulate one path of the stochastic wave equation"
    seed_is_master = False

    def run(self, config, options):
        outcome = run_spde_path(config, seed=options.get("seed"))
        self.stdout.write(f"path: {outcome.csv_path}")
        self.stdout.write(self.style.SUCCESS(f"seed={outcome.path.seed} sigma_L={outcome.path.sigma_L}"))
