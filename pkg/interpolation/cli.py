"""
Shared plumbing of the interpolation management commands and the
`python -m interpolation` entry point, which accepts the hyphenated subcommand names.
"""
import json
import logging
import os
import sys

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from syntax.parser import parse_file
from tableaux.serializers import dumps_tableau, flatten_errors, load_tableau

from .forms import InterpolationConfigForm

logger = logging.getLogger(__name__)

NOT_PROVED_EXIT = 1
INPUT_ERROR_EXIT = 2
VERIFICATION_EXIT = 3

SUBCOMMANDS = {
    'interpolate': 'interpolate',
    'ground-interpolate': 'ground_interpolate',
    'simulate': 'simulate',
    'prove': 'prove',
    'verify': 'verify',
    'validate-tableau': 'validate_tableau',
    'definiens': 'definiens',
}


def input_error(message):
    return CommandError(message, returncode=INPUT_ERROR_EXIT)


def describe(exc):
    if isinstance(exc, ValidationError):
        return '; '.join(exc.messages)
    if isinstance(exc, serializers.ValidationError):
        return '; '.join(flatten_errors(exc.detail))
    return str(exc)


class InterpolationCommand(BaseCommand):
    """Base for commands that read formula files and take the interpolation options."""

    config_options = True

    def add_arguments(self, parser):
        if not self.config_options:
            return
        parser.add_argument('--side-policy', help="f, g or map=FILE (JSON object node path -> F|G)")
        parser.add_argument('--grounding', help="least-constant or map=FILE (JSON object variable -> term)")
        parser.add_argument('--target', help="nearest or same-side")
        parser.add_argument('--c0-side', help="f or g")
        parser.add_argument('--equality', action='store_true', help="Treat = as a predicate with axioms")
        parser.add_argument('--equality-placement', help="auto, f, g or both")
        parser.add_argument('--verify', action='store_true', help="Verify the interpolant")
        parser.add_argument('--no-simplify', action='store_true', help="Skip truth-value simplification")
        parser.add_argument('--max-depth', help="Prover depth bound")
        parser.add_argument('--timeout-ms', help="Prover time bound in milliseconds")
        parser.add_argument('--max-inferences', help="Prover inference bound")
        parser.add_argument('--start-clauses', help="g, f, negative or all")

    def get_config(self, options):
        fields = InterpolationConfigForm.base_fields
        form = InterpolationConfigForm(data={
            name: options[name] for name in fields if options.get(name) not in (None, False)
        })
        if not form.is_valid():
            lines = [f"--{field.replace('_', '-')}: {message}"
                     for field, messages in form.errors.items() for message in messages]
            raise input_error('\n'.join(lines))
        return form.to_config()

    def read_formula(self, path, equality=False):
        try:
            return parse_file(path, equality=equality)
        except OSError as exc:
            raise input_error(f"Cannot read {path}: {exc.strerror}")
        except ValidationError as exc:
            raise input_error(f"{path}: {describe(exc)}")

    def read_json(self, path):
        try:
            with open(path, encoding='utf-8') as handle:
                return json.load(handle)
        except OSError as exc:
            raise input_error(f"Cannot read {path}: {exc.strerror}")
        except json.JSONDecodeError as exc:
            raise input_error(f"{path} is not valid JSON: {exc}")

    def read_tableau(self, path):
        try:
            return load_tableau(self.read_json(path))
        except serializers.ValidationError as exc:
            raise input_error(f"{path}: {describe(exc)}")

    def write_tableau(self, path, tableau, annotations=None):
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(dumps_tableau(tableau, annotations) + '\n')
        logger.info(f"Tableau written to {path}")

    def report_verification(self, verification, interpolant):
        if verification is None:
            return
        self.stderr.write(verification.render(interpolant=interpolant), ending='')
        if verification.failed:
            raise CommandError("Verification failed", returncode=VERIFICATION_EXIT)


def main(argv=None):
    """Run one subcommand; returns the process exit code."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'InterpolEEZ.settings')
    import django
    from django.core.management import call_command

    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        sys.stderr.write(f"usage: python -m interpolation {{{','.join(SUBCOMMANDS)}}} ...\n")
        return INPUT_ERROR_EXIT
    django.setup()
    try:
        call_command(SUBCOMMANDS[argv[0]], *argv[1:])
    except CommandError as exc:
        sys.stderr.write(f"{exc}\n")
        return getattr(exc, 'returncode', 1)
    return 0
