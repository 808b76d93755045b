from core.management.base import LabCommand
from core.runs import run_det


class Command(LabCommand):
    help = "Solve the deterministic problem with Dirichlet ends and write the sup-norm history"

    def run(self, config, options):
        outcome = run_det(config)
        self.stdout.write(f"trajectory: {outcome.csv_path}")
        self.stdout.write(
            self.style.SUCCESS(f"sigma_L={outcome.record.sigma_L} T={outcome.report.T} -> {outcome.json_path}")
        )
