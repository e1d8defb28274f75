"""
Inductive interpolant extraction from two-sided, leaf-closed ground tableaux.
"""
import logging
from dataclasses import dataclass

from django.core.exceptions import ValidationError

from syntax.formulas import FALSE, NEGATIVE, POSITIVE, TRUE, And, Or, complement, literals_of, render
from syntax.simplify import tv_and, tv_or
from syntax.truthtable import TruthTable

from .tableau import F, G, path, path_string

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtractionOptions:
    simplify: bool = True
    annotate: bool = False


def _leaf_value(node, target_node):
    """Value of a closing leaf from its side and the side of its target."""
    if (node.side, target_node.side) == (F, F):
        return FALSE
    if (node.side, target_node.side) == (F, G):
        return node.literal.as_formula()
    if (node.side, target_node.side) == (G, F):
        return complement(node.literal).as_formula()
    return TRUE


def _missing(what, node_path, node):
    return ValidationError(
        "Node %(path)s (%(label)s) has no %(what)s",
        code='target' if what == 'target' else 'side',
        params={'path': path_string(node_path) or 'root', 'label': node.label(), 'what': what},
    )


def _ipol(node, ancestors, node_path, opts, annotations):
    if node.is_leaf:
        if not ancestors:
            raise ValidationError("A tableau without clauses has no interpolant", code='open_branch')
        if node.side is None:
            raise _missing('side', node_path, node)
        if node.target is None:
            raise _missing('target', node_path, node)
        target_node = ancestors[node.target]
        if target_node.side is None:
            raise _missing('side', node_path[:node.target], target_node)
        value = _leaf_value(node, target_node)
    else:
        inner = ancestors + (node,)
        values = [
            _ipol(child, inner, node_path + (index,), opts, annotations)
            for index, child in enumerate(node.children)
        ]
        side = node.children[0].side
        if side is None:
            raise _missing('side', node_path + (0,), node.children[0])
        if opts.simplify:
            combine = tv_or if side == F else tv_and
        else:
            combine = Or if side == F else And
        value = values[0]
        for item in values[1:]:
            value = combine(value, item)
    if annotations is not None:
        annotations[node_path] = value
    return value


def ipol(root, opts=None, ancestors=(), node_path=()):
    """
    Interpolant value of the node root of a two-sided leaf-closed ground
    tableau. When root is not the tableau root, ancestors must hold the nodes
    above it, outermost first, so that targets can be looked up.
    """
    opts = opts or ExtractionOptions()
    return _ipol(root, tuple(ancestors), tuple(node_path), opts, None)


def annotate(root, opts=None):
    """Interpolant of the root together with the value of every node, keyed by node path."""
    opts = opts or ExtractionOptions(annotate=True)
    annotations = {}
    value = _ipol(root, (), (), opts, annotations)
    logger.debug(f"Extracted {render(value)} over {len(annotations)} nodes")
    return value, annotations


def opposite_side_leaves(root):
    """Leaves whose target carries the other side; these are the only leaves
    contributing literals to the interpolant."""
    found = []

    def visit(node, ancestors, node_path):
        if node.is_leaf and ancestors:
            if ancestors[node.target].side != node.side:
                found.append(node_path)
            return
        for index, child in enumerate(node.children):
            visit(child, ancestors + (node,), node_path + (index,))

    visit(root, (), ())
    return found


def _flipped(literals):
    return {(atom, NEGATIVE if sign == POSITIVE else POSITIVE) for atom, sign in literals}


def invariant_violations(tableau, annotations, budget=None):
    """
    Nodes whose value H breaks one of: F-clauses and the F part of the branch
    entail H; H and the G-clauses and the G part of the branch are jointly
    unsatisfiable; every literal of H occurs in both the F context and the
    negated G context. Truth tables decide the entailments.
    """
    violations = []
    for node_path, value in sorted(annotations.items()):
        f_part = path(tableau.root, node_path, F)
        g_part = path(tableau.root, node_path, G)
        table = TruthTable.over(tableau.for_f, tableau.for_g, f_part, g_part, value, budget=budget)
        if not table.entails((tableau.for_f, f_part), value):
            violations.append((node_path, 'F context does not entail the value'))
        if table.mask((value, tableau.for_g, g_part)):
            violations.append((node_path, 'value is consistent with the G context'))
        allowed = literals_of((tableau.for_f, f_part)) & _flipped(literals_of((tableau.for_g, g_part)))
        if not literals_of(value) <= allowed:
            violations.append((node_path, 'value has literals outside the shared context'))
    return violations
