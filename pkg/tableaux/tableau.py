"""
Clausal tableaux with optional side labels and closing targets.

A node's target is the depth index of its designated complementary ancestor
on the branch: the root has index 0, its children index 1, and so on. Keeping
the index instead of an object reference lets tableaux stay immutable values
that compare structurally.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from django.core.exceptions import ValidationError

from syntax.formulas import (
    Clause, Fn, Literal, complement, conjoin, render, vocabulary,
)
from syntax.substitution import Substitution, apply, is_instance

logger = logging.getLogger(__name__)

F = 'F'
G = 'G'
SIDES = (F, G)

PREFER_F = 'prefer-F'
PREFER_G = 'prefer-G'

NEAREST = 'nearest'
SAME_SIDE = 'same-side'
TARGET_POLICIES = (NEAREST, SAME_SIDE)

LEAST_CONSTANT = 'least-constant'
EXPLICIT_MAP = 'explicit-map'
FRESH_CONSTANT = 'c0'


@dataclass(frozen=True)
class TabNode:
    literal: Literal = None
    side: str = None
    children: tuple = ()
    target: int = None

    @property
    def is_leaf(self):
        return not self.children

    def label(self):
        return 'root' if self.literal is None else render(self.literal)


@dataclass(frozen=True)
class Tableau:
    root: TabNode
    for_f: tuple = ()
    for_g: tuple = ()
    fresh_constant: str = None
    stats: object = field(default=None, compare=False)
    grounding: tuple = field(default=(), compare=False)

    @property
    def clauses(self):
        return tuple(self.for_f) + tuple(self.for_g)


@dataclass(frozen=True)
class GroundingPolicy:
    kind: str = LEAST_CONSTANT
    mapping: dict = field(default_factory=dict)

    @classmethod
    def explicit(cls, mapping):
        return cls(EXPLICIT_MAP, dict(mapping))


class SideAssignment(NamedTuple):
    tableau: Tableau
    ambiguous: tuple


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    @property
    def first(self):
        return self.violations[0] if self.violations else None

    def add(self, path, node, message):
        self.violations.append(f"node {path_string(path) or 'root'} ({node.label()}): {message}")


def path_string(path):
    return '.'.join(str(index) for index in path)


def parse_path(text):
    text = text.strip()
    return tuple(int(part) for part in text.split('.')) if text else ()


def walk(root):
    """Yield (path, node, ancestors) depth-first, left to right; ancestors run
    from the root down to the parent."""
    stack = [((), root, ())]
    while stack:
        path, node, ancestors = stack.pop()
        yield path, node, ancestors
        inner = ancestors + (node,)
        for index in range(len(node.children) - 1, -1, -1):
            stack.append((path + (index,), node.children[index], inner))


def node_at(root, path):
    node = root
    for index in path:
        node = node.children[index]
    return node


def branch(root, path):
    """Nodes from the root down to the node at path, both included."""
    nodes = [root]
    for index in path:
        nodes.append(nodes[-1].children[index])
    return nodes


def leaves(root):
    return [(path, node, ancestors) for path, node, ancestors in walk(root) if node.is_leaf and ancestors]


def count_nodes(root):
    return sum(1 for _ in walk(root))


def clause_of(node):
    if node.is_leaf:
        raise ValueError(f"Leaf {node.label()} has no clause")
    return Clause(tuple(child.literal for child in node.children))


def _complementary(node, ancestors):
    """Depth indices of ancestors carrying the complement, nearest first."""
    if node.literal is None:
        return []
    wanted = complement(node.literal)
    return [index for index in range(len(ancestors) - 1, 0, -1) if ancestors[index].literal == wanted]


def _open_branch_error(ancestors, node):
    labels = ' -> '.join(n.label() for n in ancestors + (node,))
    return ValidationError("Tableau is not closed; open branch: %(branch)s",
                           code='open_branch', params={'branch': labels})


def _has_empty_clause(tableau):
    return any(not clause.literals for clause in tableau.clauses)


def leaf_close(tableau):
    """Cut every branch at its first closing node; closing leaves without a
    valid target get the nearest complementary ancestor."""
    def close(node, ancestors):
        candidates = _complementary(node, ancestors)
        if candidates:
            target = node.target if node.target in candidates else candidates[0]
            return replace(node, children=(), target=target)
        if node.is_leaf:
            if not ancestors and _has_empty_clause(tableau):
                return node
            raise _open_branch_error(ancestors, node)
        inner = ancestors + (node,)
        return replace(node, children=tuple(close(child, inner) for child in node.children))

    return replace(tableau, root=close(tableau.root, ()))


def compute_default_targets(tableau, policy=NEAREST, keep_existing=False):
    """Set the target of every leaf. Under same-side, the nearest complementary
    ancestor with the leaf's side wins when there is one."""
    if policy not in TARGET_POLICIES:
        raise ValidationError("Unknown target policy %(policy)s", code='target', params={'policy': policy})

    def retarget(node, ancestors):
        if node.is_leaf:
            if not ancestors:
                return node
            candidates = _complementary(node, ancestors)
            if not candidates:
                raise _open_branch_error(ancestors, node)
            if keep_existing and node.target in candidates:
                return node
            target = candidates[0]
            if policy == SAME_SIDE and node.side is not None:
                same = [index for index in candidates if ancestors[index].side == node.side]
                if same:
                    target = same[0]
            return replace(node, target=target)
        inner = ancestors + (node,)
        return replace(node, children=tuple(retarget(child, inner) for child in node.children))

    return replace(tableau, root=retarget(tableau.root, ()))


def path(root, node_path, side):
    """Conjunction of the literals on the branch to node_path that have the given side."""
    literals = []
    for node in branch(root, node_path)[1:]:
        if node.side is None:
            raise ValidationError("Node %(label)s has no side", code='side', params={'label': node.label()})
        if node.side == side:
            literals.append(node.literal.as_formula())
    return conjoin(literals)


def path_literals(root, node_path, side):
    return [node.literal for node in branch(root, node_path)[1:] if node.side == side]


def _map_literals(node, fn):
    return replace(
        node,
        literal=None if node.literal is None else fn(node.literal),
        children=tuple(_map_literals(child, fn) for child in node.children),
    )


def tableau_variables(root):
    names = set()
    for _, node, _ in walk(root):
        if node.literal is not None:
            names |= vocabulary(node.literal).free_vars
    return sorted(names)


def signature(tableau):
    """Function symbols of the tableau's clause sets."""
    return vocabulary(tableau.clauses).functions


def ground(tableau, policy=None):
    """
    Instantiate every rigid variable with a ground term over the signature of
    the clause sets; c0 is added to the signature only if it has no constant.
    """
    policy = policy or GroundingPolicy()
    variables = tableau_variables(tableau.root)
    if not variables:
        return tableau
    symbols = signature(tableau)
    constants = sorted(symbol.name for symbol in symbols if symbol.arity == 0)
    allowed = set(symbols)
    fresh = None
    if not constants:
        allowed.add(Fn(FRESH_CONSTANT).symbol)

    bindings = {}
    for name in variables:
        term = policy.mapping.get(name) if policy.kind == EXPLICIT_MAP else None
        if term is None:
            if constants:
                term = Fn(constants[0])
            else:
                term = Fn(FRESH_CONSTANT)
        outside = vocabulary(term).functions - allowed
        if vocabulary(term).free_vars or outside:
            raise ValidationError(
                "Grounding term %(term)s for %(var)s is not a ground term over the signature",
                code='signature', params={'term': render(term), 'var': name},
            )
        if not constants and FRESH_CONSTANT in {s.name for s in vocabulary(term).functions}:
            fresh = FRESH_CONSTANT
        bindings[name] = term

    if fresh:
        logger.warning(f"Signature has no constant; introduced {fresh} for grounding")
    logger.debug("Grounding bindings: " + ', '.join(f"{k}->{render(v)}" for k, v in bindings.items()))
    substitution = Substitution(bindings)
    grounded = replace(
        tableau,
        root=_map_literals(tableau.root, lambda lit: apply(substitution, lit)),
        fresh_constant=fresh or tableau.fresh_constant,
        grounding=tuple(sorted(bindings.items())),
    )
    report = validate(grounded, require_targets=False)
    assert report.ok, report.first
    return grounded


def _instance_of_any(clause, clauses, permutations):
    return any(is_instance(clause, candidate, permutations) for candidate in clauses)


def assign_sides(tableau, inputs=None, policy=PREFER_F, permutations=False):
    """
    Label the children of every inner node with F or G according to which
    clause set their clause is an instance of. Clauses that are instances of
    both are resolved by policy: prefer-F, prefer-G, or a mapping from node
    paths to sides, falling back to prefer-F.
    """
    f_clauses = inputs.f_clauses if inputs is not None else tableau.for_f
    g_clauses = inputs.g_clauses if inputs is not None else tableau.for_g
    explicit = policy if isinstance(policy, dict) else {}
    default = policy if policy in (PREFER_F, PREFER_G) else PREFER_F
    ambiguous = []

    def label(node, node_path):
        if node.is_leaf:
            return node
        clause = clause_of(node)
        in_f = _instance_of_any(clause, f_clauses, permutations)
        in_g = _instance_of_any(clause, g_clauses, permutations)
        if not (in_f or in_g):
            raise ValidationError(
                "Clause %(clause)s at node %(path)s is an instance of neither clause set",
                code='side', params={'clause': render(clause), 'path': path_string(node_path) or 'root'},
            )
        wanted = explicit.get(path_string(node_path))
        if wanted is not None and not (in_f if wanted == F else in_g):
            raise ValidationError(
                "Clause %(clause)s at node %(path)s cannot take side %(side)s",
                code='side', params={'clause': render(clause), 'path': path_string(node_path) or 'root',
                                     'side': wanted},
            )
        if in_f and in_g:
            ambiguous.append(node_path)
            side = wanted or (F if default == PREFER_F else G)
            logger.debug(f"Ambiguous clause {render(clause)} at {path_string(node_path) or 'root'} -> {side}")
        else:
            side = F if in_f else G
        children = tuple(
            replace(label(child, node_path + (index,)), side=side)
            for index, child in enumerate(node.children)
        )
        return replace(node, children=children)

    sided = replace(tableau, root=label(tableau.root, ()), for_f=tuple(f_clauses), for_g=tuple(g_clauses))
    return SideAssignment(sided, tuple(ambiguous))


def validate(tableau, permutations=False, require_targets=True, require_sides=False):
    """Check the clause-instance, side, closing and target conditions; every
    violation is collected, the first one is available as report.first."""
    report = ValidationReport()
    f_clauses, g_clauses = tableau.for_f, tableau.for_g
    for node_path, node, ancestors in walk(tableau.root):
        if not ancestors:
            if node.literal is not None:
                report.add(node_path, node, "root carries a literal")
        elif node.literal is None:
            report.add(node_path, node, "non-root node without literal")
            continue

        if node.children:
            if any(child.literal is None for child in node.children):
                continue
            clause = clause_of(node)
            sides = {child.side for child in node.children}
            if len(sides) > 1:
                report.add(node_path, node, "children do not share one side")
            side = next(iter(sides))
            if side is None:
                if require_sides:
                    report.add(node_path, node, "children have no side")
                if not _instance_of_any(clause, f_clauses + g_clauses, permutations):
                    report.add(node_path, node, f"clause {render(clause)} is not an instance of an input clause")
            elif len(sides) == 1:
                pool = f_clauses if side == F else g_clauses
                if not _instance_of_any(clause, pool, permutations):
                    report.add(node_path, node,
                               f"clause {render(clause)} is not an instance of a {side} clause")
            continue

        if not ancestors:
            if not _has_empty_clause(tableau):
                report.add(node_path, node, "tableau has no clauses below the root")
            continue
        candidates = _complementary(node, ancestors)
        if not candidates:
            report.add(node_path, node, "leaf is not closing")
        elif node.target is None:
            if require_targets:
                report.add(node_path, node, "leaf has no target")
        elif node.target not in candidates:
            report.add(node_path, node, f"target {node.target} is not a complementary strict ancestor")
    return report
