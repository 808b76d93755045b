from core.management.base import LabCommand
from core.runs import run_ode_check


class Command(LabCommand):
    help = "Compare the Glassey ODE blow-up with the quadrature bound T"

    def add_run_arguments(self, parser):
        parser.add_argument("--cap", type=float, help="Blow-up level of the ODE (default from settings).")

    def run(self, config, options):
        self.emit(run_ode_check(config, cap=options.get("cap")))
