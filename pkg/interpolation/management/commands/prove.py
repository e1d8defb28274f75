from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from syntax.formulas import TRUE
from syntax.normalize import prepare_inputs
from tableaux.prover import prove
from tableaux.serializers import dumps_tableau
from tableaux.tableau import leaf_close

from interpolation.cli import NOT_PROVED_EXIT, InterpolationCommand, describe, input_error


class Command(InterpolationCommand):
    help = 'Prove a formula valid, or the first formula to entail the second, and print the closed tableau'

    def add_arguments(self, parser):
        parser.add_argument('f', help="Formula file")
        parser.add_argument('g', nargs='?', help="Formula file entailed by the first")
        super().add_arguments(parser)

    def handle(self, *args, **options):
        config = self.get_config(options)
        f = self.read_formula(options['f'], equality=config.equality)
        if options['g']:
            g = self.read_formula(options['g'], equality=config.equality)
        else:
            f, g = TRUE, f
        try:
            inputs = prepare_inputs(f, g)
        except ValidationError as exc:
            raise input_error(describe(exc))

        result = prove(inputs.clauses, config.limits, config.prover, goal=inputs.g_clauses)
        if not result:
            raise CommandError(f"Not proved: {result}", returncode=NOT_PROVED_EXIT)
        self.stdout.write(dumps_tableau(leaf_close(result)))
