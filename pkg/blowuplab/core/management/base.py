"""
@file core/management/base.py
@brief Base class of the lab management commands.

@details
Every command takes --config and the shared overrides, and turns a LabError
into a CommandError carrying the error's exit status.
"""

from django.core.management.base import BaseCommand, CommandError

from core.artifacts import dumps
from core.config import RunConfig
from core.exceptions import LabError


class LabCommand(BaseCommand):
    """
    @brief Shared flags and error mapping; subclasses implement run().
    """

    # Whether --seed overrides the campaign master seed.
    seed_is_master = True

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True, help="Path of the JSON run configuration.")
        parser.add_argument("--output-dir", dest="output_dir", help="Directory for every output file.")
        parser.add_argument("--seed", type=int, help="Master seed of the run.")
        parser.add_argument("--cfl", type=float, help="Override of dt/dx.")
        parser.add_argument("--nx", type=int, help="Override of the number of spatial cells.")
        self.add_run_arguments(parser)

    def add_run_arguments(self, parser):
        pass

    def load_config(self, options):
        config = RunConfig.load(options["config"])
        return config.with_overrides(
            output_dir=options.get("output_dir"),
            master_seed=options.get("seed") if self.seed_is_master else None,
            cfl=options.get("cfl"),
            nx=options.get("nx"),
        )

    def emit(self, document):
        self.stdout.write(dumps(document))

    def handle(self, *args, **options):
        try:
            config = self.load_config(options)
            return self.run(config, options)
        except LabError as exc:
            raise CommandError(str(exc), returncode=int(exc.exit_status)) from exc

    def run(self, config, options):
        raise NotImplementedError("subclasses of LabCommand must provide a run() method")
