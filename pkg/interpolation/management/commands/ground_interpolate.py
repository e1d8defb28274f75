from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from syntax.formulas import render

from interpolation.cli import NOT_PROVED_EXIT, InterpolationCommand, describe, input_error
from interpolation.pipeline import cti_ground


class Command(InterpolationCommand):
    help = 'Compute a ground interpolant of two ground formulas, optionally from a given tableau'

    def add_arguments(self, parser):
        parser.add_argument('f', help="Formula file of the first input")
        parser.add_argument('g', help="Formula file of the second input")
        parser.add_argument('--tableau', metavar='FILE', help="Closed tableau to extract from instead of proving")
        parser.add_argument('--emit-tableau', metavar='FILE', help="Write the annotated tableau")
        super().add_arguments(parser)

    def handle(self, *args, **options):
        config = self.get_config(options)
        f = self.read_formula(options['f'])
        g = self.read_formula(options['g'])
        tableau = self.read_tableau(options['tableau']) if options['tableau'] else None
        try:
            report = cti_ground(f, g, config, tableau=tableau)
        except ValidationError as exc:
            raise input_error(describe(exc))

        if not report.proved:
            raise CommandError(f"Not proved: {report.limit} limit reached", returncode=NOT_PROVED_EXIT)
        if options['emit_tableau'] and report.tableau is not None:
            self.write_tableau(options['emit_tableau'], report.tableau, report.annotations)
        self.stdout.write(render(report.interpolant))
        self.report_verification(report.verification, report.interpolant)
