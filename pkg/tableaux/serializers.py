import json
import logging

from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from syntax.formulas import render
from syntax.parser import check_arities, parse_clause, parse_literal

from .tableau import SIDES, Tableau, TabNode

logger = logging.getLogger(__name__)


def _as_drf_error(exc):
    return serializers.ValidationError(list(exc.messages))


class LiteralField(serializers.Field):
    default_error_messages = {'invalid': 'A literal must be given as a string.'}

    def to_internal_value(self, data):
        if not isinstance(data, str):
            self.fail('invalid')
        try:
            return parse_literal(data, equality=True)
        except DjangoValidationError as exc:
            raise _as_drf_error(exc)

    def to_representation(self, value):
        return render(value)


class ClauseField(serializers.Field):
    default_error_messages = {'invalid': 'A clause must be given as a string.'}

    def to_internal_value(self, data):
        if not isinstance(data, str):
            self.fail('invalid')
        try:
            return parse_clause(data, equality=True)
        except DjangoValidationError as exc:
            raise _as_drf_error(exc)

    def to_representation(self, value):
        return render(value)


class TabNodeSerializer(serializers.Serializer):
    """
    One tableau node: {"literal", "side", "target", "children"}. An "ipol"
    entry is written when the serializer context carries annotations and is
    ignored on input, so annotated dumps import as plain tableaux.
    """
    literal = LiteralField(allow_null=True, required=False, default=None)
    side = serializers.ChoiceField(choices=SIDES, allow_null=True, required=False, default=None)
    target = serializers.IntegerField(min_value=1, allow_null=True, required=False, default=None)
    children = serializers.ListField(child=serializers.DictField(), required=False, default=list)

    def validate_children(self, value):
        nodes, errors = [], {}
        for index, item in enumerate(value):
            child = TabNodeSerializer(data=item, context=self.context)
            if child.is_valid():
                nodes.append(child.validated_data)
            else:
                errors[index] = child.errors
        if errors:
            raise serializers.ValidationError(errors)
        return tuple(nodes)

    def validate(self, attrs):
        return TabNode(
            literal=attrs.get('literal'),
            side=attrs.get('side'),
            children=attrs.get('children', ()),
            target=attrs.get('target'),
        )

    def to_representation(self, node):
        node_path = self.context.get('path', ())
        data = {
            'literal': None if node.literal is None else render(node.literal),
            'side': node.side,
            'target': node.target,
        }
        annotations = self.context.get('annotations')
        if annotations is not None and node_path in annotations:
            data['ipol'] = render(annotations[node_path])
        data['children'] = [
            TabNodeSerializer(child, context={**self.context, 'path': node_path + (index,)}).data
            for index, child in enumerate(node.children)
        ]
        return data


class TableauSerializer(serializers.Serializer):
    f_clauses = serializers.ListField(child=ClauseField())
    g_clauses = serializers.ListField(child=ClauseField(), required=False, default=list)
    root = TabNodeSerializer()

    def validate_root(self, value):
        if value.literal is not None:
            raise serializers.ValidationError("The root node carries no literal.")
        return value

    def validate(self, attrs):
        literals = [node.literal for node in _nodes(attrs['root']) if node.literal is not None]
        try:
            check_arities(tuple(attrs['f_clauses']) + tuple(attrs['g_clauses']) + tuple(literals))
        except DjangoValidationError as exc:
            raise _as_drf_error(exc)
        return Tableau(
            root=attrs['root'],
            for_f=tuple(attrs['f_clauses']),
            for_g=tuple(attrs.get('g_clauses', ())),
        )

    def to_representation(self, tableau):
        return {
            'f_clauses': [render(clause) for clause in tableau.for_f],
            'g_clauses': [render(clause) for clause in tableau.for_g],
            'root': TabNodeSerializer(tableau.root, context={**self.context, 'path': ()}).data,
        }


def _nodes(root):
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(node.children)


def load_tableau(data):
    """Tableau from the exchange format given as a dict or a JSON string;
    raises rest_framework.serializers.ValidationError on malformed input."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise serializers.ValidationError({'json': [str(exc)]})
    serializer = TableauSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    logger.debug(f"Imported tableau with {len(serializer.validated_data.clauses)} clauses")
    return serializer.validated_data


def dump_tableau(tableau, annotations=None):
    context = {} if annotations is None else {'annotations': annotations}
    return TableauSerializer(tableau, context=context).data


def dumps_tableau(tableau, annotations=None):
    return json.dumps(dump_tableau(tableau, annotations), indent=2)


def flatten_errors(errors, prefix=''):
    """Serializer errors as "field: message" lines, nested keys dotted."""
    lines = []
    if isinstance(errors, dict):
        for key, value in errors.items():
            lines.extend(flatten_errors(value, f"{prefix}.{key}" if prefix else str(key)))
    elif isinstance(errors, list):
        for item in errors:
            lines.extend(flatten_errors(item, prefix))
    else:
        lines.append(f"{prefix}: {errors}" if prefix else str(errors))
    return lines