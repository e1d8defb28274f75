import json
import logging
from typing import NamedTuple

from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from syntax.formulas import Clause, render
from syntax.parser import check_arities
from tableaux.serializers import ClauseField, LiteralField
from tableaux.tableau import parse_path, path_string

from .deduction import PROVENANCES, DTNode

logger = logging.getLogger(__name__)


class DeductionInput(NamedTuple):
    f_clauses: tuple
    g_clauses: tuple
    root: DTNode
    labels: dict = None


class DTNodeSerializer(serializers.Serializer):
    """One deduction-tree node: {"clause": [literals], "pivot", "children": [left, right]}."""
    clause = serializers.ListField(child=LiteralField(), allow_empty=True)
    pivot = LiteralField(allow_null=True, required=False, default=None)
    children = serializers.ListField(child=serializers.DictField(), required=False, default=list)

    def validate_pivot(self, value):
        if value is not None and not value.positive:
            raise serializers.ValidationError("A pivot is an atom, not a negated literal.")
        return value

    def validate_children(self, value):
        nodes, errors = [], {}
        for index, item in enumerate(value):
            child = DTNodeSerializer(data=item, context=self.context)
            if child.is_valid():
                nodes.append(child.validated_data)
            else:
                errors[index] = child.errors
        if errors:
            raise serializers.ValidationError(errors)
        return tuple(nodes)

    def validate(self, attrs):
        pivot = attrs.get('pivot')
        return DTNode(
            clause=Clause(tuple(attrs['clause'])),
            pivot=None if pivot is None else pivot.atom,
            children=attrs.get('children', ()),
        )

    def to_representation(self, node):
        data = {'clause': [render(lit) for lit in node.clause.literals]}
        if node.pivot is not None:
            data['pivot'] = render(node.pivot)
        if node.children:
            data['children'] = [DTNodeSerializer(child).data for child in node.children]
        return data


class DeductionTreeSerializer(serializers.Serializer):
    f_clauses = serializers.ListField(child=ClauseField())
    g_clauses = serializers.ListField(child=ClauseField())
    root = DTNodeSerializer()
    labels = serializers.DictField(
        child=serializers.ListField(child=serializers.ChoiceField(choices=PROVENANCES)),
        required=False, allow_null=True, default=None,
    )

    def validate_labels(self, value):
        if value is None:
            return None
        labels = {}
        for key, tags in value.items():
            try:
                labels[parse_path(key)] = tuple(tags)
            except ValueError:
                raise serializers.ValidationError(f"{key!r} is not a node path.")
        return labels

    def validate(self, attrs):
        try:
            check_arities(tuple(attrs['f_clauses']) + tuple(attrs['g_clauses']))
        except DjangoValidationError as exc:
            raise serializers.ValidationError(list(exc.messages))
        return DeductionInput(
            f_clauses=tuple(attrs['f_clauses']),
            g_clauses=tuple(attrs['g_clauses']),
            root=attrs['root'],
            labels=attrs.get('labels'),
        )

    def to_representation(self, deduction):
        data = {
            'f_clauses': [render(clause) for clause in deduction.f_clauses],
            'g_clauses': [render(clause) for clause in deduction.g_clauses],
            'root': DTNodeSerializer(deduction.root).data,
        }
        if deduction.labels:
            data['labels'] = {path_string(path): list(tags) for path, tags in sorted(deduction.labels.items())}
        return data


def load_deduction(data):
    """DeductionInput from a dict or JSON string; raises
    rest_framework.serializers.ValidationError on malformed input."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise serializers.ValidationError({'json': [str(exc)]})
    serializer = DeductionTreeSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data


def dumps_deduction(deduction):
    return json.dumps(DeductionTreeSerializer(deduction).data, indent=2)


