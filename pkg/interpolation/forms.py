import json
import logging
from dataclasses import replace

from django import forms
from django.core.exceptions import ValidationError

from syntax.normalize import PLACEMENTS
from syntax.parser import parse_term
from tableaux.prover import ALL_CLAUSES, FROM_F, FROM_G, NEGATIVE_CLAUSES, ProverPolicy
from tableaux.tableau import F, G, LEAST_CONSTANT, NEAREST, PREFER_F, PREFER_G, SAME_SIDE, GroundingPolicy

from .config import InterpolationConfig

logger = logging.getLogger(__name__)

MAP_PREFIX = 'map='

TARGET_CHOICES = [(NEAREST, 'nearest ancestor'), (SAME_SIDE, 'nearest ancestor of the same side')]
C0_CHOICES = [('f', 'F'), ('g', 'G')]
START_CHOICES = [('g', 'G clauses'), ('f', 'F clauses'), ('negative', 'negative clauses'), ('all', 'all clauses')]
PLACEMENT_CHOICES = [(placement, placement) for placement in PLACEMENTS]

START_POLICIES = {'g': FROM_G, 'f': FROM_F, 'negative': NEGATIVE_CLAUSES, 'all': ALL_CLAUSES}


def _load_map(value, field):
    path = value[len(MAP_PREFIX):]
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ValidationError(f"Cannot read {field} map {path}: {exc.strerror}", code='invalid')
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{field} map {path} is not valid JSON: {exc}", code='invalid')
    if not isinstance(data, dict) or not all(isinstance(v, str) for v in data.values()):
        raise ValidationError(f"{field} map {path} must be a JSON object of strings", code='invalid')
    return data


class InterpolationConfigForm(forms.Form):
    """
    Command-line options of the interpolation commands. Options that are not
    given keep the values from settings.
    """
    side_policy = forms.CharField(required=False)
    grounding = forms.CharField(required=False)
    target = forms.ChoiceField(choices=TARGET_CHOICES, required=False)
    c0_side = forms.ChoiceField(choices=C0_CHOICES, required=False)
    equality = forms.BooleanField(required=False)
    equality_placement = forms.ChoiceField(choices=PLACEMENT_CHOICES, required=False)
    verify = forms.BooleanField(required=False)
    no_simplify = forms.BooleanField(required=False)
    max_depth = forms.IntegerField(min_value=1, required=False)
    timeout_ms = forms.IntegerField(min_value=1, required=False)
    max_inferences = forms.IntegerField(min_value=1, required=False)
    start_clauses = forms.ChoiceField(choices=START_CHOICES, required=False)

    def clean_side_policy(self):
        value = (self.cleaned_data.get('side_policy') or '').strip()
        if not value:
            return None
        if value.lower() in ('f', PREFER_F.lower()):
            return PREFER_F
        if value.lower() in ('g', PREFER_G.lower()):
            return PREFER_G
        if value.startswith(MAP_PREFIX):
            mapping = _load_map(value, 'side')
            wrong = sorted(path for path, side in mapping.items() if side.upper() not in (F, G))
            if wrong:
                raise ValidationError(f"Side map entries must be F or G: {', '.join(wrong)}", code='invalid')
            return {path: side.upper() for path, side in mapping.items()}
        raise ValidationError("Side policy must be f, g or map=FILE", code='invalid')

    def clean_grounding(self):
        value = (self.cleaned_data.get('grounding') or '').strip()
        if not value:
            return None
        if value == LEAST_CONSTANT:
            return GroundingPolicy()
        if value.startswith(MAP_PREFIX):
            mapping = _load_map(value, 'grounding')
            return GroundingPolicy.explicit({name: parse_term(text) for name, text in mapping.items()})
        raise ValidationError("Grounding must be least-constant or map=FILE", code='invalid')

    def clean(self):
        cleaned_data = super().clean()
        if cleaned_data.get('equality_placement') and not cleaned_data.get('equality'):
            self.add_error('equality_placement', "Axiom placement needs --equality")
        return cleaned_data

    def to_config(self):
        """InterpolationConfig from settings with the given options applied."""
        data = self.cleaned_data
        base = InterpolationConfig.from_settings()
        changes = {}
        if data.get('side_policy') is not None:
            changes['side_policy'] = data['side_policy']
        if data.get('grounding') is not None:
            changes['grounding'] = data['grounding']
        if data.get('target'):
            changes['target_policy'] = data['target']
        if data.get('c0_side'):
            changes['c0_side'] = data['c0_side'].upper()
        if data.get('equality'):
            changes['equality'] = True
        if data.get('equality_placement'):
            changes['equality_placement'] = data['equality_placement']
        if data.get('verify'):
            changes['verify'] = True
        if data.get('no_simplify'):
            changes['simplify'] = False

        limits = {key: data[key] for key in ('max_depth', 'timeout_ms', 'max_inferences') if data.get(key)}
        if limits:
            changes['limits'] = replace(base.limits, **limits)
        if data.get('start_clauses'):
            changes['prover'] = ProverPolicy(START_POLICIES[data['start_clauses']], base.prover.use_regularity)
        config = base.with_options(**changes)
        logger.debug(f"Configuration: {config}")
        return config
