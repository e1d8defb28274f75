import json
import random
import tempfile
from io import StringIO
from pathlib import Path

from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from rest_framework import serializers

from syntax.formulas import FALSE, TRUE, Atom, Clause, atoms_of, render
from syntax.parser import parse, parse_clause, parse_literal
from syntax.truthtable import TruthTable
from tableaux.extract import opposite_side_leaves
from tableaux.serializers import load_tableau
from tableaux.tableau import F, G, TabNode, count_nodes, node_at, validate

from ressim.deduction import (
    BOTH, HKPYM, HUANG, MCMILLAN, METHODS, OPT_HUANG, TRANSPARENT, DTNode, coloring,
    derive_provenance, huang_pi, partial_interpolant, resolution_case, tree_size, tree_walk,
    validate_tree,
)
from ressim.engine import random_unsat_pair, refute
from ressim.serializers import dumps_deduction, load_deduction
from ressim.translate import ct_translate, cut_clause, simulate

FIXTURES = Path(__file__).resolve().parent / 'fixtures'

SEED = 20240611


def load_fixture(name):
    with open(FIXTURES / name, encoding='utf-8') as handle:
        return load_deduction(json.load(handle))


def clauses(*texts):
    return tuple(parse_clause(text) for text in texts)


def leaf(text):
    return DTNode(parse_clause(text))


def resolve(pivot, left, right, text='$false'):
    return DTNode(parse_clause(text), Atom(pivot), (left, right))


def node(text, side, children=(), target=None):
    return TabNode(parse_literal(text), side, tuple(children), target)


def formulas(mapping):
    return {path: parse(text) for path, text in mapping.items()}


# Tableau simulating Huang's method on the p, ~p|q / ~q|r, ~r refutation
HUANG_TABLEAU = TabNode(children=(
    node('~r', G, [
        node('~q', F, [
            node('~q', G, [
                node('~p', F, [node('p', F, target=4)]),
                node('p', F, [node('~p', F, target=4), node('q', F, target=2)]),
            ]),
            node('q', G, target=2),
        ]),
        node('q', F, [
            node('~q', G, target=2),
            node('q', G, [node('~q', G, target=3), node('r', G, target=1)]),
        ]),
    ]),
    node('r', G, [node('~r', G, target=1)]),
))

HUANG_VALUES = formulas({
    (): 'q', (0,): 'q',
    (0, 0): '$false', (0, 0, 0): '$false', (0, 0, 0, 0): '$false', (0, 0, 0, 0, 0): '$false',
    (0, 0, 0, 1): '$false', (0, 0, 0, 1, 0): '$false', (0, 0, 0, 1, 1): '$false',
    (0, 0, 1): '~q',
    (0, 1): 'q', (0, 1, 0): 'q', (0, 1, 1): '$true', (0, 1, 1, 0): '$true', (0, 1, 1, 1): '$true',
    (1,): '$true', (1, 0): '$true',
})

MCMILLAN_TABLEAU = TabNode(children=(
    node('~r', G, [
        node('~q', G, [
            node('~p', F, [node('p', F, target=3)]),
            node('p', F, [node('~p', F, target=3), node('q', F, target=2)]),
        ]),
        node('q', G, [node('~q', G, target=2), node('r', G, target=1)]),
    ]),
    node('r', G, [node('~r', G, target=1)]),
))

MCMILLAN_VALUES = formulas({
    (): 'q', (0,): 'q', (0, 0): 'q',
    (0, 0, 0): '$false', (0, 0, 0, 0): '$false',
    (0, 0, 1): 'q', (0, 0, 1, 0): '$false', (0, 0, 1, 1): 'q',
    (0, 1): '$true', (0, 1, 0): '$true', (0, 1, 1): '$true',
    (1,): '$true', (1, 0): '$true',
})


class DeductionTreeTests(SimpleTestCase):
    def setUp(self):
        self.example = load_fixture('chain_refutation.json')

    def test_example_tree_validates(self):
        report = validate_tree(self.example.root, self.example.f_clauses, self.example.g_clauses)
        self.assertTrue(report.ok, report.violations)

    def test_dropped_literal_is_reported(self):
        f_clauses, g_clauses = clauses('p | q', '~p | s'), clauses('~q', '~s')
        broken = resolve('p', leaf('p | q'), leaf('~p | s'), 'q')
        tree = resolve('s', resolve('q', broken, leaf('~q')), leaf('~s'))
        report = validate_tree(tree, f_clauses, g_clauses)
        self.assertFalse(report.ok)
        self.assertTrue(any('node 0.0 (q)' in message and 'not the resolvent upon p' in message
                            for message in report.violations), report.violations)

    def test_merged_resolvent_validates(self):
        f_clauses, g_clauses = clauses('p | q', '~p | q'), clauses('~q')
        tree = resolve('q', resolve('p', leaf('p | q'), leaf('~p | q'), 'q'), leaf('~q'))
        report = validate_tree(tree, f_clauses, g_clauses)
        self.assertTrue(report.ok, report.violations)

    def test_structural_violations(self):
        f_clauses, g_clauses = clauses('p'), clauses('~p', 'p')
        wrong_side = resolve('p', leaf('~p'), leaf('p'))
        messages = validate_tree(wrong_side, f_clauses, g_clauses).violations
        self.assertTrue(any('in both clause sets' in message for message in messages))
        self.assertTrue(any('left child does not contain p' in message for message in messages))

        stray = resolve('p', leaf('p'), leaf('~p'), 'q')
        messages = validate_tree(stray, clauses('p'), clauses('~p')).violations
        self.assertTrue(any('root clause is not empty' in message for message in messages))

        unknown = resolve('p', leaf('p'), leaf('~p | r'), 'r')
        messages = validate_tree(unknown, clauses('p'), clauses('~p')).violations
        self.assertTrue(any('leaf clause is not an input clause' in message for message in messages))

    def test_coloring(self):
        colors = coloring(self.example.f_clauses, self.example.g_clauses)
        self.assertEqual(colors.of(Atom('p')), F)
        self.assertEqual(colors.of(Atom('q')), TRANSPARENT)
        self.assertEqual(colors.of(Atom('r')), G)
        with self.assertRaises(ValueError):
            colors.of(Atom('s'))

    def test_derived_provenance_matches_fixture_labels(self):
        labeled = load_fixture('chain_refutation_labeled.json')
        derived = derive_provenance(labeled.root, labeled.f_clauses, labeled.g_clauses)
        self.assertEqual(derived, labeled.labels)

    def test_merged_occurrences_have_both_provenances(self):
        f_clauses, g_clauses = clauses('p | q'), clauses('~p | q', '~q')
        tree = resolve('q', resolve('p', leaf('p | q'), leaf('~p | q'), 'q'), leaf('~q'))
        labels = derive_provenance(tree, f_clauses, g_clauses)
        self.assertEqual(labels[(0,)], (BOTH,))
        self.assertEqual(resolution_case(tree, (), OPT_HUANG, coloring(f_clauses, g_clauses), labels),
                         ('stacked', F, G))


class PartialInterpolantTests(SimpleTestCase):
    def setUp(self):
        self.example = load_fixture('chain_refutation.json')
        self.args = (self.example.root, self.example.f_clauses, self.example.g_clauses)

    def test_huang_annotations(self):
        value, annotations = partial_interpolant(*self.args, method=HUANG)
        self.assertEqual(render(value), 'q')
        self.assertEqual(annotations, formulas({
            (): 'q', (0,): 'q', (0, 0): '$false', (0, 0, 0): '$false', (0, 0, 1): '$false',
            (0, 1): '$true', (1,): '$true',
        }))
        self.assertEqual(huang_pi(*self.args), value)

    def test_mcmillan_annotations(self):
        value, annotations = partial_interpolant(*self.args, method=MCMILLAN)
        self.assertEqual(render(value), 'q')
        self.assertEqual(annotations, formulas({
            (): 'q', (0,): 'q', (0, 0): 'q', (0, 0, 0): '$false', (0, 0, 1): 'q',
            (0, 1): '$true', (1,): '$true',
        }))

    def test_hkpym_and_optimized(self):
        self.assertEqual(render(partial_interpolant(*self.args, method=HKPYM)[0]), 'q')
        labels = derive_provenance(*self.args)
        self.assertEqual(render(partial_interpolant(*self.args, method=OPT_HUANG, labeling=labels)[0]), 'q')

    def test_leaf_values(self):
        f_clauses, g_clauses = clauses('p'), clauses('~p')
        self.assertEqual(partial_interpolant(leaf('p'), f_clauses, g_clauses)[0], FALSE)
        self.assertEqual(partial_interpolant(leaf('~p'), f_clauses, g_clauses)[0], TRUE)

    def test_opt_huang_needs_labels(self):
        with self.assertRaises(ValidationError) as caught:
            partial_interpolant(*self.args, method=OPT_HUANG)
        self.assertEqual(caught.exception.code, 'labeling')

    def test_unknown_method(self):
        with self.assertRaises(ValueError):
            partial_interpolant(*self.args, method='craig')


class TranslationTests(SimpleTestCase):
    def setUp(self):
        self.example = load_fixture('chain_refutation.json')
        self.args = (self.example.root, self.example.f_clauses, self.example.g_clauses)

    def test_huang_tableau(self):
        result = simulate(*self.args, method=HUANG)
        self.assertEqual(result.tableau.root, HUANG_TABLEAU)
        self.assertEqual(result.annotations, HUANG_VALUES)
        self.assertEqual(render(result.interpolant), 'q')

    def test_huang_ct_mapping(self):
        result = simulate(*self.args, method=HUANG)
        self.assertEqual(result.ct_map, {
            (): (), (0,): (0,), (0, 0): (0, 0, 0), (0, 0, 0): (0, 0, 0, 0), (0, 0, 1): (0, 0, 0, 1),
            (0, 1): (0, 1, 1), (1,): (1,),
        })
        _, expected = partial_interpolant(*self.args, method=HUANG)
        for tree_path, tableau_path in result.ct_map.items():
            self.assertEqual(result.annotations[tableau_path], expected[tree_path], tree_path)

    def test_mcmillan_tableau(self):
        result = simulate(*self.args, method=MCMILLAN)
        self.assertEqual(result.tableau.root, MCMILLAN_TABLEAU)
        self.assertEqual(result.annotations, MCMILLAN_VALUES)
        self.assertEqual(render(result.interpolant), 'q')

    def test_cut_clauses_in_header(self):
        tableau, _ = ct_translate(*self.args, method=HUANG)
        self.assertEqual(tableau.for_f[2:], (cut_clause(Atom('q')), cut_clause(Atom('p'))))
        self.assertEqual(tableau.for_g[2:], (cut_clause(Atom('r')), cut_clause(Atom('q'))))
        self.assertTrue(validate(tableau, require_sides=True).ok)

    def test_hkpym_stacks_the_other_way(self):
        result = simulate(*self.args, method=HKPYM)
        stacked = node_at(result.tableau.root, (0, 0))
        self.assertEqual((render(stacked.literal), stacked.side), ('~q', G))
        self.assertEqual(stacked.children[1], node('q', F, target=2))
        self.assertEqual(render(result.interpolant), 'q')

    def test_optimized_shape(self):
        labeled = load_fixture('chain_refutation_labeled.json')
        result = simulate(labeled.root, labeled.f_clauses, labeled.g_clauses, OPT_HUANG, labeled.labels)
        below = node_at(result.tableau.root, (0,))
        self.assertEqual([(render(child.literal), child.side) for child in below.children],
                         [('~q', F), ('q', F)])
        self.assertEqual(below.children[1].children[0], node('~q', G, target=2))
        self.assertEqual(render(result.interpolant), 'q')

    def test_derived_labels(self):
        result = simulate(*self.args, method=OPT_HUANG, derive_labels=True)
        self.assertEqual(render(result.interpolant), 'q')
        with self.assertRaises(ValidationError):
            simulate(*self.args, method=OPT_HUANG)

    def test_single_resolution(self):
        f_clauses, g_clauses = clauses('p'), clauses('~p')
        tree = resolve('p', leaf('p'), leaf('~p'))
        for method in (HUANG, HKPYM, MCMILLAN):
            result = simulate(tree, f_clauses, g_clauses, method)
            self.assertEqual(render(result.interpolant), 'p', method)

    def test_single_resolution_on_one_side(self):
        f_clauses, g_clauses = clauses('p', '~p'), clauses('q')
        tree = resolve('p', leaf('p'), leaf('~p'))
        result = simulate(tree, f_clauses, g_clauses, HUANG)
        self.assertEqual(count_nodes(result.tableau.root), 5)
        self.assertEqual(result.interpolant, FALSE)

    def test_empty_input_clause(self):
        result = simulate(leaf('$false'), clauses('p'), clauses('$false'), HUANG)
        self.assertEqual(result.interpolant, TRUE)
        self.assertTrue(result.tableau.root.is_leaf)

    def test_invalid_tree(self):
        with self.assertRaises(ValidationError) as caught:
            ct_translate(resolve('p', leaf('p'), leaf('~p'), 'p'), clauses('p'), clauses('~p'))
        self.assertEqual(caught.exception.code, 'tree')


class RandomRefutationTests(SimpleTestCase):
    """Simulations against the direct computations on refutations of random unsatisfiable pairs."""

    CASES = 100

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        rng = random.Random(SEED)
        cls.cases = []
        for _ in range(cls.CASES):
            pair = random_unsat_pair(rng)
            cls.cases.append((pair, refute(pair.f_clauses, pair.g_clauses)))

    def assert_reverse_interpolant(self, h, f_clauses, g_clauses, label):
        table = TruthTable.over(f_clauses, g_clauses, h)
        self.assertTrue(table.entails(tuple(f_clauses), h), label)
        self.assertEqual(table.mask((h, tuple(g_clauses))), 0, label)
        shared = set(atoms_of(f_clauses)) & set(atoms_of(g_clauses))
        self.assertLessEqual(set(atoms_of(h)), shared, label)

    def test_engine_refutes_every_pair(self):
        for (f_clauses, g_clauses), tree in self.cases:
            self.assertIsNotNone(tree)
            self.assertTrue(validate_tree(tree, f_clauses, g_clauses).ok)

    def test_engine_reports_satisfiable_input(self):
        self.assertIsNone(refute(clauses('p | q'), clauses('~p')))

    def test_simulation_matches_partial_interpolants(self):
        for index, ((f_clauses, g_clauses), tree) in enumerate(self.cases):
            labels = derive_provenance(tree, f_clauses, g_clauses)
            for method in METHODS:
                label = f"case {index}, {method}"
                result = simulate(tree, f_clauses, g_clauses, method, labeling=labels)
                value, expected = partial_interpolant(tree, f_clauses, g_clauses, method, labels)
                self.assertEqual(result.interpolant, value, label)
                for tree_path, tableau_path in result.ct_map.items():
                    self.assertEqual(result.annotations[tableau_path], expected[tree_path], label)
                self.assert_reverse_interpolant(result.interpolant, f_clauses, g_clauses, label)

    def test_translation_is_linear(self):
        for index, ((f_clauses, g_clauses), tree) in enumerate(self.cases):
            for method in (HUANG, MCMILLAN):
                tableau, _ = ct_translate(tree, f_clauses, g_clauses, method)
                self.assertLessEqual(count_nodes(tableau.root), 6 * tree_size(tree), f"case {index}")

    def test_only_stacked_cut_leaves_change_sides(self):
        for index, ((f_clauses, g_clauses), tree) in enumerate(self.cases):
            colors = coloring(f_clauses, g_clauses)
            stacked = sum(1 for _, item in tree_walk(tree)
                          if not item.is_leaf and colors.of(item.pivot) == TRANSPARENT)
            tableau, _ = ct_translate(tree, f_clauses, g_clauses, HUANG)
            found = opposite_side_leaves(tableau.root)
            self.assertEqual(len(found), 2 * stacked, f"case {index}")
            for leaf_path in found:
                item = node_at(tableau.root, leaf_path)
                self.assertEqual(item.side, G)
                self.assertEqual(item.target, len(leaf_path) - 1)


class SerializerTests(SimpleTestCase):
    def test_fixture_round_trip(self):
        labeled = load_fixture('chain_refutation_labeled.json')
        self.assertEqual(load_deduction(dumps_deduction(labeled)), labeled)

    def test_negated_pivot_is_rejected(self):
        data = {'f_clauses': ['p'], 'g_clauses': ['~p'],
                'root': {'clause': [], 'pivot': '~p', 'children': [{'clause': ['p']}, {'clause': ['~p']}]}}
        with self.assertRaises(serializers.ValidationError) as caught:
            load_deduction(data)
        self.assertIn('root', caught.exception.detail)

    def test_bad_label_path(self):
        data = {'f_clauses': ['p'], 'g_clauses': ['~p'], 'root': {'clause': ['p']}, 'labels': {'x.1': ['F']}}
        with self.assertRaises(serializers.ValidationError):
            load_deduction(data)

    def test_empty_clause_as_empty_list(self):
        loaded = load_deduction({'f_clauses': ['p'], 'g_clauses': ['$false'], 'root': {'clause': []}})
        self.assertEqual(loaded.root.clause, Clause())
        self.assertEqual(loaded.g_clauses, (Clause(),))


class SimulateCommandTests(SimpleTestCase):
    def run_command(self, *args):
        out, err = StringIO(), StringIO()
        call_command('simulate', *args, stdout=out, stderr=err)
        return out.getvalue().strip(), err.getvalue()

    def test_huang(self):
        out, _ = self.run_command(str(FIXTURES / 'chain_refutation.json'), '--method', 'huang')
        self.assertEqual(out, 'q')

    def test_emit_tableau_and_map(self):
        with tempfile.TemporaryDirectory() as directory:
            target = Path(directory) / 'mcmillan.json'
            out, err = self.run_command(str(FIXTURES / 'chain_refutation.json'), '--method', 'mcmillan',
                                        '--emit-tableau', str(target), '--show-map')
            data = json.loads(target.read_text(encoding='utf-8'))
        self.assertEqual(out, 'q')
        self.assertEqual(data['root']['ipol'], 'q')
        self.assertEqual(load_tableau(data).root, MCMILLAN_TABLEAU)
        self.assertEqual(json.loads(err)['0.0'], '0.0')

    def test_opt_huang_labels(self):
        out, _ = self.run_command(str(FIXTURES / 'chain_refutation_labeled.json'), '--method', 'opt-huang')
        self.assertEqual(out, 'q')
        out, _ = self.run_command(str(FIXTURES / 'chain_refutation.json'), '--method', 'opt-huang', '--derive-labels')
        self.assertEqual(out, 'q')
        with self.assertRaises(CommandError) as caught:
            self.run_command(str(FIXTURES / 'chain_refutation.json'), '--method', 'opt-huang')
        self.assertEqual(caught.exception.returncode, 2)

    def test_malformed_file(self):
        with tempfile.TemporaryDirectory() as directory:
            target = Path(directory) / 'tree.json'
            target.write_text('{"f_clauses": ["p"], "root": {}}', encoding='utf-8')
            with self.assertRaises(CommandError) as caught:
                self.run_command(str(target))
        self.assertEqual(caught.exception.returncode, 2)
