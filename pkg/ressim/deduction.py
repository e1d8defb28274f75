"""
Resolution deduction trees over ground clauses and the partial interpolants
computed on them directly.

A tree node's path is the tuple of child indices from the root, like tableau
paths. Inner nodes resolve upon a positive pivot atom: the left child holds
the pivot, the right child its negation, duplicate literals are merged.
"""
import logging
from dataclasses import dataclass

from django.core.exceptions import ValidationError

from syntax.formulas import FALSE, TRUE, Clause, Literal, Not, render
from syntax.simplify import tv_and, tv_or
from tableaux.tableau import F, G, ValidationReport, path_string

logger = logging.getLogger(__name__)

TRANSPARENT = 'transparent'

HUANG = 'huang'
HKPYM = 'hkpym'
MCMILLAN = 'mcmillan'
OPT_HUANG = 'opt-huang'
METHODS = (HUANG, HKPYM, MCMILLAN, OPT_HUANG)

BOTH = 'FG'
PROVENANCES = (F, G, BOTH)


@dataclass(frozen=True)
class DTNode:
    clause: Clause = Clause()
    pivot: object = None
    children: tuple = ()

    @property
    def is_leaf(self):
        return not self.children

    @property
    def left(self):
        return self.children[0]

    @property
    def right(self):
        return self.children[1]

    def label(self):
        return render(self.clause)


def tree_walk(root):
    """Yield (path, node) depth-first, left to right."""
    stack = [((), root)]
    while stack:
        path, node = stack.pop()
        yield path, node
        for index in range(len(node.children) - 1, -1, -1):
            stack.append((path + (index,), node.children[index]))


def tree_size(root):
    return sum(1 for _ in tree_walk(root))


def resolvent(left, right, pivot):
    """Binary resolvent of two clauses upon pivot, duplicates merged, left literals first."""
    positive, negative = Literal(pivot, True), Literal(pivot, False)
    literals = []
    for lit in left.literals:
        if lit != positive and lit not in literals:
            literals.append(lit)
    for lit in right.literals:
        if lit != negative and lit not in literals:
            literals.append(lit)
    return Clause(tuple(literals))


def _key(clause):
    return frozenset(clause.literals)


class ClauseIndex:
    """The input clauses of both sides, looked up by literal set."""

    def __init__(self, f_clauses, g_clauses):
        self.f_clauses = tuple(f_clauses)
        self.g_clauses = tuple(g_clauses)
        self._sides = {}
        for side, clauses in ((G, self.g_clauses), (F, self.f_clauses)):
            for clause in clauses:
                self._sides[_key(clause)] = (side, clause)

    def side_of(self, clause):
        found = self._sides.get(_key(clause))
        return found[0] if found else None

    def input_clause(self, clause):
        """The input clause with the literals of clause, in its own order."""
        return self._sides[_key(clause)][1]

    def shared(self):
        f_keys = {_key(clause) for clause in self.f_clauses}
        return [clause for clause in self.g_clauses if _key(clause) in f_keys]


@dataclass(frozen=True)
class Coloring:
    """Atom classification by the clause sets the atom occurs in."""
    f_atoms: frozenset
    g_atoms: frozenset

    def of(self, atom):
        in_f, in_g = atom in self.f_atoms, atom in self.g_atoms
        if in_f and in_g:
            return TRANSPARENT
        if in_f:
            return F
        if in_g:
            return G
        raise ValueError(f"Atom {render(atom)} occurs in neither clause set")

    def is_transparent(self, atom):
        return self.of(atom) == TRANSPARENT


def _atoms(clauses):
    return frozenset(lit.atom for clause in clauses for lit in clause.literals)


def coloring(f_clauses, g_clauses):
    return Coloring(_atoms(f_clauses), _atoms(g_clauses))


def validate_tree(root, f_clauses, g_clauses):
    """Collect every violation of the deduction-tree conditions, keyed by node path."""
    report = ValidationReport()
    index = ClauseIndex(f_clauses, g_clauses)
    for clause in index.shared():
        report.add((), root, f"clause {render(clause)} is in both clause sets")
    if root.clause.literals:
        report.add((), root, "root clause is not empty")

    for path, node in tree_walk(root):
        if len(set(node.clause.literals)) != len(node.clause.literals):
            report.add(path, node, "clause has duplicate literals")
        if node.is_leaf:
            if node.pivot is not None:
                report.add(path, node, "leaf carries a pivot")
            if index.side_of(node.clause) is None:
                report.add(path, node, "leaf clause is not an input clause")
            continue
        if len(node.children) != 2:
            report.add(path, node, "inner node needs exactly two children")
            continue
        if node.pivot is None:
            report.add(path, node, "inner node has no pivot")
            continue
        if Literal(node.pivot, True) not in node.left.clause.literals:
            report.add(path, node, f"left child does not contain {render(node.pivot)}")
            continue
        if Literal(node.pivot, False) not in node.right.clause.literals:
            report.add(path, node, f"right child does not contain ~{render(node.pivot)}")
            continue
        expected = resolvent(node.left.clause, node.right.clause, node.pivot)
        if _key(expected) != _key(node.clause):
            report.add(path, node, f"clause is not the resolvent upon {render(node.pivot)}: "
                                   f"expected {render(expected)}")
    return report


def check_tree(root, f_clauses, g_clauses):
    report = validate_tree(root, f_clauses, g_clauses)
    if not report.ok:
        raise ValidationError("Invalid deduction tree: %(first)s", code='tree', params={'first': report.first})
    return report


def _union(*tags):
    sides = set()
    for tag in tags:
        sides |= set(tag)
    return BOTH if sides == {F, G} else sides.pop()


def derive_provenance(root, f_clauses, g_clauses):
    """
    Provenance of every literal occurrence: leaf literals carry the side of
    their clause, a resolvent literal the union of the provenances of the
    occurrences merged into it. Keyed by tree path, aligned with node.clause.
    """
    index = ClauseIndex(f_clauses, g_clauses)
    labels = {}

    def visit(node, path):
        if node.is_leaf:
            side = index.side_of(node.clause)
            tags = {lit: side for lit in node.clause.literals}
        else:
            left, right = visit(node.left, path + (0,)), visit(node.right, path + (1,))
            positive, negative = Literal(node.pivot, True), Literal(node.pivot, False)
            tags = {}
            for lit in node.clause.literals:
                merged = [left[lit]] if lit in left and lit != positive else []
                if lit in right and lit != negative:
                    merged.append(right[lit])
                tags[lit] = _union(*merged)
        labels[path] = tuple(tags[lit] for lit in node.clause.literals)
        return tags

    visit(root, ())
    return labels


def check_labeling(root, labeling):
    """Labels must cover every node, one tag per literal."""
    if labeling is None:
        raise ValidationError("Method opt-huang needs a provenance labeling", code='labeling')
    for path, node in tree_walk(root):
        tags = labeling.get(path)
        if tags is None or len(tags) != len(node.clause.literals):
            raise ValidationError("Labeling does not fit node %(path)s (%(clause)s)", code='labeling',
                                  params={'path': path_string(path) or 'root', 'clause': node.label()})
        wrong = [tag for tag in tags if tag not in PROVENANCES]
        if wrong:
            raise ValidationError("Unknown provenance %(tag)s at node %(path)s", code='labeling',
                                  params={'tag': wrong[0], 'path': path_string(path) or 'root'})


def pivot_provenance(node, path, labeling):
    """Provenances of the pivot occurrence in the left child and of its negation in the right."""
    left_tags = labeling[path + (0,)]
    right_tags = labeling[path + (1,)]
    left = left_tags[node.left.clause.literals.index(Literal(node.pivot, True))]
    right = right_tags[node.right.clause.literals.index(Literal(node.pivot, False))]
    return left, right


def resolution_case(node, path, method, colors, labeling=None):
    """
    How a resolution step is interpolated: a single cut of side F or G, or
    one of the stacked shapes (upper side, lower side) of the transparent
    cases. Returns (kind, upper, lower) with kind 'single', 'stacked' or
    'optimized'.
    """
    color = colors.of(node.pivot)
    if method == OPT_HUANG:
        left, right = pivot_provenance(node, path, labeling)
        if BOTH in (left, right):
            return 'stacked', F, G
        if left == right:
            return 'single', left, None
        return 'optimized', left, right
    if color == F:
        return 'single', F, None
    if color == G or method == MCMILLAN:
        return 'single', G, None
    if method == HKPYM:
        return 'stacked', G, F
    return 'stacked', F, G


def _combine(kind, upper, atom, left, right):
    positive, negative = atom, Not(atom)
    if kind == 'single':
        return tv_or(left, right) if upper == F else tv_and(left, right)
    if kind == 'stacked' and upper == F:
        return tv_or(tv_and(left, negative), tv_and(positive, right))
    if kind == 'stacked':
        return tv_and(tv_or(left, positive), tv_or(negative, right))
    if upper == F:
        return tv_or(left, tv_and(positive, right))
    return tv_and(left, tv_or(negative, right))


def _leaf_value(clause, side, method, colors):
    if method != MCMILLAN or side == G:
        return FALSE if side == F else TRUE
    value = FALSE
    for lit in clause.literals:
        value = tv_or(value, lit.as_formula() if colors.is_transparent(lit.atom) else FALSE)
    return value


def partial_interpolant(root, f_clauses, g_clauses, method=HUANG, labeling=None):
    """
    Partial interpolant of every node of a validated tree for the given
    method; returns (value of the root, {path: value}).
    """
    if method not in METHODS:
        raise ValueError(f"Unknown method {method}")
    if method == OPT_HUANG:
        check_labeling(root, labeling)
    index = ClauseIndex(f_clauses, g_clauses)
    colors = coloring(f_clauses, g_clauses)
    annotations = {}

    def visit(node, path):
        if node.is_leaf:
            clause = index.input_clause(node.clause)
            value = _leaf_value(clause, index.side_of(clause), method, colors)
        else:
            kind, upper, _ = resolution_case(node, path, method, colors, labeling)
            left, right = visit(node.left, path + (0,)), visit(node.right, path + (1,))
            value = _combine(kind, upper, node.pivot, left, right)
        annotations[path] = value
        return value

    value = visit(root, ())
    logger.debug(f"Partial interpolant ({method}) {render(value)}")
    return value, annotations


def huang_pi(root, f_clauses, g_clauses):
    value, _ = partial_interpolant(root, f_clauses, g_clauses, HUANG)
    return value
