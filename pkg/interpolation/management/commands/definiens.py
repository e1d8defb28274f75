from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from syntax.formulas import render

from interpolation.cli import NOT_PROVED_EXIT, InterpolationCommand, describe, input_error
from interpolation.pipeline import definiens


class Command(InterpolationCommand):
    help = 'Compute an explicit definition of a predicate that a formula defines implicitly'

    def add_arguments(self, parser):
        parser.add_argument('f', help="Formula file")
        parser.add_argument('predicate', help="Name of the predicate to define")
        super().add_arguments(parser)

    def handle(self, *args, **options):
        config = self.get_config(options)
        f = self.read_formula(options['f'], equality=config.equality)
        try:
            report = definiens(f, options['predicate'], config)
        except ValidationError as exc:
            raise input_error(describe(exc))

        if not report.proved:
            raise CommandError(f"No definiens found: {report.limit} limit reached", returncode=NOT_PROVED_EXIT)
        self.stdout.write(render(report.interpolant))
        self.report_verification(report.verification, report.interpolant)
