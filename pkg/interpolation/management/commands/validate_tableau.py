from django.core.management.base import CommandError

from tableaux.tableau import validate

from interpolation.cli import VERIFICATION_EXIT, InterpolationCommand


class Command(InterpolationCommand):
    help = 'Check a tableau in the exchange format against its clause sets'
    config_options = False

    def add_arguments(self, parser):
        parser.add_argument('tableau', help="Tableau JSON file")
        parser.add_argument('--permutations', action='store_true',
                            help="Accept clause instances whose literal order differs")
        parser.add_argument('--require-targets', action='store_true', help="Report leaves without target")
        parser.add_argument('--require-sides', action='store_true', help="Report clauses without side")

    def handle(self, *args, **options):
        tableau = self.read_tableau(options['tableau'])
        report = validate(
            tableau,
            permutations=options['permutations'],
            require_targets=options['require_targets'],
            require_sides=options['require_sides'],
        )
        if report.ok:
            self.stdout.write('ok')
            return
        for violation in report.violations:
            self.stdout.write(violation)
        raise CommandError(f"{len(report.violations)} violation(s)", returncode=VERIFICATION_EXIT)
