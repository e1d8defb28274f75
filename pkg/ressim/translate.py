"""
Translation of resolution deduction trees into two-sided clausal tableaux
whose extracted interpolants reproduce the resolution-based methods.

Every tree node M maps to a tableau node ct(M). A resolution step upon A
becomes one cut (children ~A above ct(M1) and A above ct(M2)), or two levels
of cuts where the pivot is shared by both sides. Leaf clauses are spelled out
as closing leaves below ct(M).
"""
import logging
from typing import NamedTuple

from django.core.exceptions import ValidationError

from syntax.formulas import FALSE, TRUE, Clause, Literal, complement, render
from tableaux.extract import ExtractionOptions, annotate
from tableaux.tableau import F, G, Tableau, TabNode, count_nodes, path_string, validate

from .deduction import (
    HUANG, MCMILLAN, METHODS, OPT_HUANG, ClauseIndex, check_labeling, check_tree, coloring,
    derive_provenance, resolution_case, tree_size,
)

logger = logging.getLogger(__name__)


class Simulation(NamedTuple):
    tableau: Tableau
    interpolant: object
    annotations: dict
    ct_map: dict


def cut_clause(atom):
    return Clause((Literal(atom, False), Literal(atom, True)))


def cut_clauses(atoms):
    """All cut clauses ~A | A over the atoms."""
    return tuple(cut_clause(atom) for atom in sorted(atoms, key=render))


class _Translator:
    def __init__(self, root, f_clauses, g_clauses, method, labeling):
        self.root = root
        self.index = ClauseIndex(f_clauses, g_clauses)
        self.colors = coloring(f_clauses, g_clauses)
        self.method = method
        self.labeling = labeling
        self.cuts = {F: [], G: []}
        self.ct_map = {}

    def _cut(self, atom, side):
        allowed = self.colors.f_atoms if side == F else self.colors.g_atoms
        if atom not in allowed:
            raise ValidationError("A cut upon %(atom)s cannot take side %(side)s", code='labeling',
                                  params={'atom': render(atom), 'side': side})
        clause = cut_clause(atom)
        if clause not in self.cuts[side]:
            self.cuts[side].append(clause)

    def _leaf_target(self, lit, side, ancestors):
        """Same-side complementary ancestor where there is one, nearest for McMillan."""
        wanted = complement(lit)
        candidates = [index for index in range(len(ancestors) - 1, 0, -1) if ancestors[index][0] == wanted]
        if not candidates:
            raise ValidationError("Literal %(lit)s is never resolved upon", code='tree',
                                  params={'lit': render(lit)})
        if self.method != MCMILLAN:
            same = [index for index in candidates if ancestors[index][1] == side]
            if same:
                return same[0]
            logger.warning(f"No complementary ancestor of side {side} for {render(lit)}")
        return candidates[0]

    def translate(self, node, tree_path, literal, side, ancestors, tableau_path):
        """ct(node) carrying literal and side below the given (literal, side) ancestors."""
        here = ancestors + ((literal, side),)
        depth = len(here) - 1
        self.ct_map[tree_path] = tableau_path

        if node.is_leaf:
            clause = self.index.input_clause(node.clause)
            clause_side = self.index.side_of(clause)
            children = tuple(
                TabNode(lit, clause_side, target=self._leaf_target(lit, clause_side, here))
                for lit in clause.literals
            )
            return TabNode(literal, side, children)

        kind, upper, lower = resolution_case(node, tree_path, self.method, self.colors, self.labeling)
        atom = node.pivot
        negative, positive = Literal(atom, False), Literal(atom, True)
        left_path, right_path = tree_path + (0,), tree_path + (1,)
        self._cut(atom, upper)

        if kind == 'single':
            children = (
                self.translate(node.left, left_path, negative, upper, here, tableau_path + (0,)),
                self.translate(node.right, right_path, positive, upper, here, tableau_path + (1,)),
            )
        elif kind == 'stacked':
            self._cut(atom, lower)
            below_negative = here + ((negative, upper),)
            below_positive = here + ((positive, upper),)
            children = (
                TabNode(negative, upper, (
                    self.translate(node.left, left_path, negative, lower, below_negative, tableau_path + (0, 0)),
                    TabNode(positive, lower, target=depth + 1),
                )),
                TabNode(positive, upper, (
                    TabNode(negative, lower, target=depth + 1),
                    self.translate(node.right, right_path, positive, lower, below_positive, tableau_path + (1, 1)),
                )),
            )
        else:
            self._cut(atom, lower)
            below_positive = here + ((positive, upper),)
            children = (
                self.translate(node.left, left_path, negative, upper, here, tableau_path + (0,)),
                TabNode(positive, upper, (
                    TabNode(negative, lower, target=depth + 1),
                    self.translate(node.right, right_path, positive, lower, below_positive, tableau_path + (1, 1)),
                )),
            )
        return TabNode(literal, side, children)


def ct_translate(root, f_clauses, g_clauses, method=HUANG, labeling=None):
    """
    Tableau for the input clauses plus the cut clauses it uses, together with
    the mapping from tree paths to the paths of their ct nodes.
    """
    if method not in METHODS:
        raise ValueError(f"Unknown method {method}")
    check_tree(root, f_clauses, g_clauses)
    if method == OPT_HUANG:
        check_labeling(root, labeling)

    translator = _Translator(root, f_clauses, g_clauses, method, labeling)
    if root.is_leaf:
        tableau_root = TabNode()
        translator.ct_map[()] = ()
    else:
        tableau_root = translator.translate(root, (), None, None, (), ())
    tableau = Tableau(
        root=tableau_root,
        for_f=tuple(f_clauses) + tuple(translator.cuts[F]),
        for_g=tuple(g_clauses) + tuple(translator.cuts[G]),
    )
    report = validate(tableau, require_sides=True)
    if not report.ok:
        raise ValidationError("Translated tableau is invalid: %(first)s", code='tableau',
                              params={'first': report.first})
    logger.debug(f"Translated {tree_size(root)} tree nodes into {count_nodes(tableau_root)} tableau nodes")
    return tableau, translator.ct_map


def simulate(root, f_clauses, g_clauses, method=HUANG, labeling=None, derive_labels=False):
    """
    Translate the tree and extract the interpolant of the tableau. With
    derive_labels, opt-huang works on the provenance computed from the tree.
    """
    if method == OPT_HUANG and labeling is None and derive_labels:
        check_tree(root, f_clauses, g_clauses)
        labeling = derive_provenance(root, f_clauses, g_clauses)
    tableau, ct_map = ct_translate(root, f_clauses, g_clauses, method, labeling)
    if tableau.root.is_leaf:
        side = ClauseIndex(f_clauses, g_clauses).side_of(root.clause)
        value = FALSE if side == F else TRUE
        annotations = {(): value}
    else:
        value, annotations = annotate(tableau.root, ExtractionOptions(annotate=True))
    logger.info(f"Simulated {method}: {render(value)}")
    return Simulation(tableau, value, annotations, ct_map)


def render_ct_map(ct_map):
    return {path_string(tree_path): path_string(tableau_path) for tree_path, tableau_path in sorted(ct_map.items())}
