import json
from dataclasses import replace
from pathlib import Path

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from rest_framework import serializers

from syntax.formulas import Clause, render
from syntax.parser import parse_clause, parse_literal
from syntax.truthtable import TruthTable

from tableaux.extract import (
    ExtractionOptions, annotate, invariant_violations, ipol, opposite_side_leaves,
)
from tableaux.prover import (
    MAX_DEPTH, MAX_INFERENCES, NotProved, ProofLimits, ProverPolicy, prove,
)
from tableaux.serializers import dump_tableau, load_tableau
from tableaux.tableau import (
    F, G, PREFER_G, SAME_SIDE, GroundingPolicy, Tableau, TabNode, assign_sides,
    clause_of, compute_default_targets, ground, leaf_close, leaves, node_at,
    path, tableau_variables, validate, walk,
)

FIXTURES = Path(__file__).resolve().parent / 'fixtures'


def load_fixture(name):
    with open(FIXTURES / name, encoding='utf-8') as handle:
        return load_tableau(json.load(handle))


def clauses(*texts):
    return tuple(parse_clause(text) for text in texts)


def node(text, side=None, children=(), target=None):
    return TabNode(parse_literal(text), side, tuple(children), target)


def replace_at(root, node_path, **changes):
    if not node_path:
        return replace(root, **changes)
    index = node_path[0]
    children = list(root.children)
    children[index] = replace_at(children[index], node_path[1:], **changes)
    return replace(root, children=tuple(children))


THREE_CLAUSE_F = clauses('a | e', '~a | b', '~a | c')
THREE_CLAUSE_G = clauses('~b | ~c | d', '~d', '~e')


class TableauStructureTests(SimpleTestCase):
    def test_clause_of_follows_child_order(self):
        bottom_up = load_fixture('three_clause_bottom_up.json')
        top_down = load_fixture('three_clause_top_down.json')
        self.assertEqual(render(clause_of(bottom_up.root)), 'a | e')
        self.assertEqual(render(clause_of(top_down.root)), '~d')
        inner = TabNode(children=(node('p'), node('~q'), node('r')))
        self.assertEqual(render(clause_of(inner)), 'p | ~q | r')

    def test_clause_of_leaf_is_an_error(self):
        with self.assertRaises(ValueError):
            clause_of(node('p'))

    def test_fixtures_validate(self):
        for name in ('three_clause_bottom_up.json', 'three_clause_top_down.json'):
            report = validate(load_fixture(name), require_sides=True)
            self.assertTrue(report.ok, report.violations)

    def test_wrong_target_is_reported(self):
        tableau = load_fixture('three_clause_bottom_up.json')
        # ~a at 0.1.0 closes against a at depth 1; depth 2 holds b
        report = validate(replace(tableau, root=replace_at(tableau.root, (0, 1, 0), target=2)))
        self.assertFalse(report.ok)
        self.assertIn('node 0.1.0 (~a)', report.first)

    def test_leaf_without_complement_is_reported(self):
        tableau = Tableau(
            TabNode(children=(node('p', children=(node('q', target=1),)),)),
            for_f=clauses('p', 'q'),
        )
        report = validate(tableau)
        self.assertFalse(report.ok)
        self.assertIn('not closing', report.first)

    def test_path_projections(self):
        tableau = load_fixture('three_clause_top_down.json')
        target = (0, 1, 0, 1)
        self.assertEqual(render(node_at(tableau.root, target).literal), 'e')
        self.assertEqual(render(path(tableau.root, target, F)), '~a & e')
        self.assertEqual(render(path(tableau.root, target, G)), '~d & ~c')
        self.assertEqual(render(path(tableau.root, (), F)), '$true')

    def test_path_needs_sides(self):
        tableau = load_fixture('shared_clause.json')
        with self.assertRaises(ValidationError) as raised:
            path(tableau.root, (0,), F)
        self.assertEqual(raised.exception.code, 'side')

    def test_branch_literals_partition_by_side(self):
        tableau = load_fixture('three_clause_bottom_up.json')
        for node_path, current, ancestors in walk(tableau.root):
            if not ancestors:
                continue
            on_branch = [n.literal for n in ancestors[1:]] + [current.literal]
            f_part = [n.literal for n in ancestors[1:] + (current,) if n.side == F]
            g_part = [n.literal for n in ancestors[1:] + (current,) if n.side == G]
            self.assertEqual(sorted(map(render, on_branch)), sorted(map(render, f_part + g_part)))


class ClosingTests(SimpleTestCase):
    def test_leaf_close_keeps_leaf_closed_tableau(self):
        tableau = load_fixture('three_clause_bottom_up.json')
        self.assertEqual(leaf_close(tableau).root, tableau.root)

    def test_leaf_close_prunes_below_closing_node(self):
        below = node('q', children=(node('~q'),))
        tableau = Tableau(
            TabNode(children=(node('p', children=(node('~p', children=(below,)),)),)),
            for_f=clauses('p', '~p | q'),
        )
        closed = leaf_close(tableau)
        leaf = closed.root.children[0].children[0]
        self.assertTrue(leaf.is_leaf)
        self.assertEqual(leaf.target, 1)

    def test_leaf_close_names_open_branch(self):
        tableau = Tableau(TabNode(children=(node('p'),)), for_f=clauses('p'))
        with self.assertRaises(ValidationError) as raised:
            leaf_close(tableau)
        self.assertEqual(raised.exception.code, 'open_branch')
        self.assertIn('root -> p', raised.exception.messages[0])

    def test_nearest_and_same_side_targets(self):
        # ~q(F) above ~q(G) above q(F): nearest picks the G node, same-side the F node
        leaf = node('q', F)
        inner = node('~q', G, children=(leaf, node('r', G, children=(node('~r', G),))))
        top = node('~q', F, children=(inner, node('s', F, children=(node('~s', F),))))
        tableau = Tableau(TabNode(children=(top, node('q', F, children=(node('~q', F),)))))
        nearest = compute_default_targets(tableau)
        same_side = compute_default_targets(tableau, SAME_SIDE)
        self.assertEqual(node_at(nearest.root, (0, 0, 0)).target, 2)
        self.assertEqual(node_at(same_side.root, (0, 0, 0)).target, 1)

    def test_depth_one_pair_targets_root_child(self):
        tableau = Tableau(TabNode(children=(node('p', children=(node('~p'),)),)))
        self.assertEqual(node_at(compute_default_targets(tableau).root, (0, 0)).target, 1)

    def test_unknown_target_policy(self):
        with self.assertRaises(ValidationError):
            compute_default_targets(load_fixture('three_clause_bottom_up.json'), 'furthest')


class GroundingTests(SimpleTestCase):
    def tableau_with(self, literal, complement_literal, f_clauses):
        return Tableau(
            TabNode(children=(node(literal, children=(node(complement_literal, target=1),)),)),
            for_f=clauses(*f_clauses),
        )

    def test_ground_tableau_unchanged(self):
        tableau = load_fixture('three_clause_bottom_up.json')
        self.assertIs(ground(tableau), tableau)

    def test_least_constant(self):
        tableau = self.tableau_with('p(X)', '~p(X)', ['p(X)', '~p(Y)', 'q(b)', 'q(a)'])
        grounded = ground(tableau)
        self.assertEqual(render(node_at(grounded.root, (0,)).literal), 'p(a)')
        self.assertIsNone(grounded.fresh_constant)

    def test_constant_free_signature_introduces_c0(self):
        tableau = self.tableau_with('p(f(X))', '~p(f(X))', ['p(f(X))', '~p(Y)'])
        with self.assertLogs('tableaux', level='WARNING'):
            grounded = ground(tableau)
        self.assertEqual(render(node_at(grounded.root, (0,)).literal), 'p(f(c0))')
        self.assertEqual(grounded.fresh_constant, 'c0')
        self.assertEqual(tableau_variables(grounded.root), [])

    def test_explicit_map_outside_signature(self):
        tableau = self.tableau_with('p(X)', '~p(X)', ['p(X)', '~p(Y)', 'q(a)'])
        policy = GroundingPolicy.explicit({'X': parse_literal('q(zz)').atom.args[0]})
        with self.assertRaises(ValidationError) as raised:
            ground(tableau, policy)
        self.assertEqual(raised.exception.code, 'signature')


class SideAssignmentTests(SimpleTestCase):
    def test_prefer_f_and_prefer_g(self):
        tableau = load_fixture('shared_clause.json')
        by_f = assign_sides(tableau)
        by_g = assign_sides(tableau, policy=PREFER_G)
        self.assertEqual(by_f.ambiguous, ((0,),))
        self.assertEqual(render(ipol(by_f.tableau.root)), 'c')
        self.assertEqual(render(ipol(by_g.tableau.root)), 'b')

    def test_explicit_map(self):
        tableau = load_fixture('shared_clause.json')
        sided = assign_sides(tableau, policy={'0': G})
        self.assertEqual(render(ipol(sided.tableau.root)), 'b')

    def test_shape_and_labels_untouched(self):
        tableau = load_fixture('shared_clause.json')
        sided = assign_sides(tableau).tableau
        strip = lambda root: [(p, n.literal, n.target) for p, n, _ in walk(root)]
        self.assertEqual(strip(sided.root), strip(tableau.root))

    def test_clause_of_neither_side(self):
        tableau = replace(load_fixture('shared_clause.json'), for_g=clauses('~c', '~d'))
        tableau = replace(tableau, for_f=clauses('a', 'b'))
        with self.assertRaises(ValidationError) as raised:
            assign_sides(tableau)
        self.assertEqual(raised.exception.code, 'side')


class ExtractionTests(SimpleTestCase):
    def test_fixture_interpolants(self):
        self.assertEqual(render(ipol(load_fixture('three_clause_bottom_up.json').root)), '(b & c) | e')
        self.assertEqual(render(ipol(load_fixture('three_clause_top_down.json').root)), '(e | b) & (e | c)')

    def test_leaf_table(self):
        for leaf_side, target_side, expected in ((F, F, '$false'), (F, G, 'p'), (G, F, '~p'), (G, G, '$true')):
            tableau = TabNode(children=(node('~p', target_side, children=(node('p', leaf_side, target=1),)),))
            self.assertEqual(render(ipol(tableau.children[0].children[0], ancestors=(tableau, tableau.children[0]))),
                             expected)

    def test_missing_target(self):
        tableau = TabNode(children=(node('~p', F, children=(node('p', G),)),))
        with self.assertRaises(ValidationError) as raised:
            ipol(tableau)
        self.assertEqual(raised.exception.code, 'target')

    def test_unsimplified_extraction_keeps_truth_values(self):
        root = load_fixture('three_clause_bottom_up.json').root
        value = ipol(root, ExtractionOptions(simplify=False))
        self.assertIn('$false', render(value))

    def test_node_invariants_on_fixtures(self):
        for name in ('three_clause_bottom_up.json', 'three_clause_top_down.json'):
            tableau = load_fixture(name)
            _, annotations = annotate(tableau.root)
            self.assertEqual(invariant_violations(tableau, annotations), [])

    def test_root_entailments(self):
        tableau = load_fixture('three_clause_bottom_up.json')
        h = ipol(tableau.root)
        table = TruthTable.over(THREE_CLAUSE_F, THREE_CLAUSE_G, h)
        self.assertTrue(table.entails(THREE_CLAUSE_F, h))
        self.assertEqual(table.mask((h, THREE_CLAUSE_G)), 0)

    def test_contributing_leaves(self):
        tableau = load_fixture('three_clause_bottom_up.json')
        self.assertEqual(opposite_side_leaves(tableau.root), [(0, 1, 1, 0), (0, 1, 1, 1), (1, 0)])


class ProverTests(SimpleTestCase):
    def test_complementary_units(self):
        result = prove(clauses('p', '~p'))
        self.assertTrue(result)
        self.assertEqual(len(list(walk(result.root))), 3)
        self.assertTrue(validate(result).ok)

    def test_three_clause_set(self):
        result = prove(THREE_CLAUSE_F + THREE_CLAUSE_G, goal=THREE_CLAUSE_G)
        self.assertTrue(validate(result).ok, validate(result).violations)
        self.assertEqual(leaf_close(result).root, result.root)
        self.assertGreaterEqual(result.stats.depth, max(len(p) for p, _, _ in leaves(result.root)))

    def test_rigid_unifier(self):
        f_clauses, g_clauses = clauses('p(X, f(X))'), clauses('~p(g, X)')
        result = prove(f_clauses + g_clauses, goal=g_clauses)
        literals = sorted(render(n.literal) for _, n, a in walk(result.root) if a)
        self.assertEqual(literals, ['p(g, f(g))', '~p(g, f(g))'])

    def test_satisfiable_set_is_not_proved(self):
        result = prove(clauses('p | q', '~p'), ProofLimits(max_depth=4))
        self.assertIsInstance(result, NotProved)
        self.assertFalse(result)
        self.assertEqual(result.limit, MAX_DEPTH)

    def test_inference_limit(self):
        cf = clauses('p(X) | ~p(f(X))', '~p(a) | p(f(f(a)))', 'q')
        result = prove(cf, ProofLimits(max_depth=12, max_inferences=50))
        self.assertFalse(result)
        self.assertIn(result.limit, (MAX_INFERENCES, MAX_DEPTH))

    def test_deterministic(self):
        cf = THREE_CLAUSE_F + THREE_CLAUSE_G
        first = prove(cf, goal=THREE_CLAUSE_G)
        second = prove(cf, goal=THREE_CLAUSE_G)
        self.assertEqual(dump_tableau(first), dump_tableau(second))

    def test_start_clause_policies_all_succeed(self):
        for start in ('from-G', 'from-F', 'negative-clauses', 'all'):
            result = prove(THREE_CLAUSE_F + THREE_CLAUSE_G, policy=ProverPolicy(start_clauses=start), goal=THREE_CLAUSE_G)
            self.assertTrue(validate(result).ok, start)

    def test_ground_instance_is_unsatisfiable(self):
        cf = clauses('p(X) | q(X)', '~p(a)', '~q(Y) | r(Y)', '~r(a)')
        result = ground(prove(cf))
        used = [clause_of(n) for _, n, _ in walk(result.root) if n.children and n.literal is not None]
        used.append(clause_of(result.root))
        table = TruthTable.over(tuple(used))
        self.assertEqual(table.mask(tuple(used)), 0)

    def test_empty_clause(self):
        result = prove((Clause(()),) + clauses('p'))
        self.assertTrue(result)
        self.assertTrue(result.root.is_leaf)
        self.assertTrue(validate(result).ok)


class SerializerTests(SimpleTestCase):
    def test_annotated_dump_reimports(self):
        tableau = load_fixture('three_clause_top_down.json')
        _, annotations = annotate(tableau.root)
        dumped = dump_tableau(tableau, annotations)
        self.assertEqual(dumped['root']['ipol'], '(e | b) & (e | c)')
        self.assertEqual(dumped['root']['children'][0]['children'][2]['ipol'], '$true')
        self.assertEqual(load_tableau(json.loads(json.dumps(dumped))), tableau)

    def test_bad_literal(self):
        with self.assertRaises(serializers.ValidationError) as raised:
            load_tableau({'f_clauses': ['p'], 'root': {'children': [{'literal': 'p &', 'side': 'F'}]}})
        self.assertIn('root', raised.exception.detail)

    def test_bad_side(self):
        with self.assertRaises(serializers.ValidationError):
            load_tableau({'f_clauses': ['p'], 'root': {'children': [{'literal': 'p', 'side': 'H'}]}})

    def test_arity_clash(self):
        with self.assertRaises(serializers.ValidationError):
            load_tableau({'f_clauses': ['p(a)'], 'root': {'children': [{'literal': 'p', 'side': 'F'}]}})

