from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from interpolation.cli import NOT_PROVED_EXIT, VERIFICATION_EXIT, InterpolationCommand, describe, input_error
from interpolation.verification import verify


class Command(InterpolationCommand):
    help = 'Check that a formula is a Craig-Lyndon interpolant of two others'

    def add_arguments(self, parser):
        parser.add_argument('f', help="Formula file of the first input")
        parser.add_argument('g', help="Formula file of the second input")
        parser.add_argument('h', help="Formula file of the candidate interpolant")
        super().add_arguments(parser)

    def handle(self, *args, **options):
        config = self.get_config(options)
        f, g, h = (self.read_formula(options[key], equality=config.equality) for key in ('f', 'g', 'h'))
        try:
            report = verify(f, g, h, config)
        except ValidationError as exc:
            raise input_error(describe(exc))

        self.stdout.write(report.render(interpolant=h), ending='')
        if report.failed:
            raise CommandError("Not an interpolant", returncode=VERIFICATION_EXIT)
        if not report.confirmed:
            raise CommandError("Entailment not confirmed within the limits", returncode=NOT_PROVED_EXIT)
