from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from syntax.formulas import render

from interpolation.cli import NOT_PROVED_EXIT, InterpolationCommand, describe, input_error
from interpolation.pipeline import ctif


class Command(InterpolationCommand):
    help = 'Compute a Craig-Lyndon interpolant of two first-order formulas'

    def add_arguments(self, parser):
        parser.add_argument('f', help="Formula file of the first input")
        parser.add_argument('g', help="Formula file of the second input, entailed by the first")
        parser.add_argument('--emit-tableau', metavar='FILE', help="Write the annotated ground tableau")
        super().add_arguments(parser)

    def handle(self, *args, **options):
        config = self.get_config(options)
        f = self.read_formula(options['f'], equality=config.equality)
        g = self.read_formula(options['g'], equality=config.equality)
        try:
            report = ctif(f, g, config)
        except ValidationError as exc:
            raise input_error(describe(exc))

        if not report.proved:
            raise CommandError(f"Not proved: {report.limit} limit reached", returncode=NOT_PROVED_EXIT)
        if options['verbosity'] >= 2:
            self.stderr.write(f"ground interpolant: {render(report.ground_interpolant)}")
            self.stderr.write(f"F symbols: {', '.join(sorted(map(str, report.fset)))}")
            self.stderr.write(f"G symbols: {', '.join(sorted(map(str, report.gset)))}")
            if report.ambiguous:
                paths = ', '.join('.'.join(map(str, path)) or 'root' for path in report.ambiguous)
                self.stderr.write(f"ambiguous sides at: {paths}")
        if options['emit_tableau'] and report.tableau is not None:
            self.write_tableau(options['emit_tableau'], report.tableau, report.annotations)
        self.stdout.write(render(report.interpolant))
        self.report_verification(report.verification, report.interpolant)
