from django.core.management.base import CommandError

from core.exceptions import ExitStatus
from core.management.base import LabCommand
from core.runs import run_bound


class Command(LabCommand):
    """
    @brief Prints the BoundReport as JSON; exits 2 when H1 or H2 fails.
    """

    help = "Check H1/H2 and compute the blow-up time bound T"

    def run(self, config, options):
        report = run_bound(config)
        self.emit(report.to_dict())
        if not report.admissible:
            failed = [name for name, ok in (("H1", report.h1_ok), ("H2", report.h2_ok)) if not ok]
            raise CommandError(f"hypotheses not satisfied: {', '.join(failed)}", returncode=ExitStatus.HYPOTHESIS)
