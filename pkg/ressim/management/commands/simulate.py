import json

from django.core.exceptions import ValidationError
from rest_framework import serializers

from syntax.formulas import render

from interpolation.cli import InterpolationCommand, describe, input_error
from ressim.deduction import METHODS, OPT_HUANG
from ressim.serializers import load_deduction
from ressim.translate import render_ct_map, simulate


class Command(InterpolationCommand):
    help = 'Interpolate from a resolution deduction tree by translating it into a clausal tableau'
    config_options = False

    def add_arguments(self, parser):
        parser.add_argument('tree', help="Deduction tree JSON file")
        parser.add_argument('--method', choices=METHODS, default='huang')
        parser.add_argument('--derive-labels', action='store_true',
                            help="Compute the opt-huang provenance labels when the file has none")
        parser.add_argument('--emit-tableau', metavar='FILE', help="Write the annotated translated tableau")
        parser.add_argument('--show-map', action='store_true',
                            help="Print the tree path to tableau path mapping on stderr")

    def handle(self, *args, **options):
        path = options['tree']
        try:
            deduction = load_deduction(self.read_json(path))
        except serializers.ValidationError as exc:
            raise input_error(f"{path}: {describe(exc)}")
        if options['method'] == OPT_HUANG and deduction.labels is None and not options['derive_labels']:
            raise input_error(f"{path} has no provenance labels; give --derive-labels")

        try:
            result = simulate(
                deduction.root, deduction.f_clauses, deduction.g_clauses, options['method'],
                labeling=deduction.labels, derive_labels=options['derive_labels'],
            )
        except ValidationError as exc:
            raise input_error(describe(exc))

        if options['emit_tableau']:
            self.write_tableau(options['emit_tableau'], result.tableau, result.annotations)
        if options['show_map']:
            self.stderr.write(json.dumps(render_ct_map(result.ct_map), indent=2))
        self.stdout.write(render(result.interpolant))
