import json
import random
import tempfile
from io import StringIO
from pathlib import Path

from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from syntax.formulas import (
    EQUALITY, NEGATIVE, POSITIVE, Exists, Fn, Forall, Not, Symbol, clauses_formula, conjoin, literals_of,
    render, vocabulary,
)
from syntax.parser import parse, parse_file, parse_term
from syntax.truthtable import TruthTable, ground_entails, satisfiable
from tableaux.extract import invariant_violations
from tableaux.serializers import load_tableau
from tableaux.tableau import PREFER_G, GroundingPolicy

from interpolation.cli import INPUT_ERROR_EXIT, NOT_PROVED_EXIT, VERIFICATION_EXIT, main
from interpolation.config import InterpolationConfig
from interpolation.forms import InterpolationConfigForm
from interpolation.lifting import LiftingFront, fg_maximal_terms, lift
from interpolation.pipeline import (
    NOT_PROVED, PROVED, cti_ground, ctif, definability_inputs, definiens, symmetric_interpolants,
)
from interpolation.verification import (
    ORACLE_FAIL, ORACLE_PASS, REFUTATION, TRUTH_TABLE, check_semantic_fo, check_syntactic, verify,
)
from ressim.engine import random_unsat_pair

FIXTURES = Path(__file__).resolve().parent / 'fixtures'
TABLEAU_FIXTURES = Path(__file__).resolve().parent.parent / 'tableaux' / 'fixtures'

SEED = 7151

CONFIRMED = (PROVED, ORACLE_PASS)


def fixture_pair(name):
    return parse_file(FIXTURES / f"{name}_f.p"), parse_file(FIXTURES / f"{name}_g.p")


def load_tableau_fixture(name):
    with open(TABLEAU_FIXTURES / name, encoding='utf-8') as handle:
        return load_tableau(json.load(handle))


def flipped(literals):
    return {(atom, NEGATIVE if sign == POSITIVE else POSITIVE) for atom, sign in literals}


def symbol(name, arity=0):
    return Symbol(name, arity)


SHARED_CLAUSE_PAIR = ('a & b & (b => c)', 'c | ~(b => c) | d')

FIRST_ORDER_CORPUS = [
    ('(a | e) & (~a | b) & (~a | c)', '~((~b | ~c | d) & ~d & ~e)'),
    SHARED_CLAUSE_PAIR,
    ('(![X]: (p(X) => q(X))) & p(a)', 'q(a)'),
    ('![X]: p(X)', '?[X]: p(X)'),
    ('p(a) & q(b)', 'p(a) | r'),
    ('(![X]: (p(X) => q(f(X)))) & p(a)', '?[X]: q(X)'),
    ('?[X]: ![Y]: r(X, Y)', '![Y]: ?[X]: r(X, Y)'),
    ('(![X]: (p(X) => q(X))) & (![X]: (q(X) => s(X)))', '![X]: (p(X) => s(X))'),
    ('(![X]: ![Y]: (r(X, Y) => r(Y, X))) & r(a, b)', 'r(b, a)'),
    ('p & (p => q)', 'q | s'),
    ('![X]: p(X, X)', 'p(a, a)'),
    ('![X]: (p(X) | q(X))', '?[X]: (p(X) | q(X))'),
    ('![X]: ?[Y]: l(X, Y)', '?[Y]: l(a, Y)'),
    ('![X]: (p(X) => q(X))', '![X]: (~q(X) => ~p(X))'),
    ('p(a) & (![X]: (p(X) => p(f(X))))', 'p(f(f(a)))'),
    ('(![X]: r(X)) | s', 'r(b) | s'),
    ('?[X]: (p(X) & q(X))', '(?[X]: p(X)) & (?[X]: q(X))'),
    ('~(?[X]: p(X))', '![X]: ~p(X)'),
    ('(p => q) & (q => r)', 'p => r'),
]

DEFINED = '![X]: (p(X) <=> (q(X) & r(X)))'

EQUALITY_IN_F = [
    ('a = b', 'q(a) => q(b)'),
    ('a = b & p(a)', 'p(b)'),
    ('b = a', 't(a) => t(b)'),
    ('a = b & b = c', 'r(a) => r(c)'),
    ('![X]: (X = a)', 'p(b) => p(a)'),
    ('a = b & b = c', 's(a, c) => s(c, c)'),
]

EQUALITY_IN_G = [
    ('p(a) & ~p(b)', '~(a = b)'),
    ('s(a) & ~s(c)', '~(a = c)'),
    ('(p(a) & ~p(b)) | (q(a) & ~q(b))', '~(a = b)'),
    ('p(a) & ~p(b) & q(c)', '~(a = b) | ~q(c)'),
]


class GroundInterpolationTests(SimpleTestCase):
    def setUp(self):
        self.three_clause = fixture_pair('three_clause')

    def test_bottom_up_tableau(self):
        report = cti_ground(*self.three_clause, tableau=load_tableau_fixture('three_clause_bottom_up.json'))
        self.assertEqual(render(report.interpolant), '(b & c) | e')

    def test_top_down_tableau(self):
        report = cti_ground(*self.three_clause, tableau=load_tableau_fixture('three_clause_top_down.json'))
        self.assertEqual(render(report.interpolant), '(e | b) & (e | c)')

    def test_shared_clause_side_choice(self):
        f, g = (parse(text) for text in SHARED_CLAUSE_PAIR)
        tableau = load_tableau_fixture('shared_clause.json')
        prefer_f = cti_ground(f, g, tableau=tableau)
        prefer_g = cti_ground(f, g, InterpolationConfig.from_settings(side_policy=PREFER_G), tableau=tableau)
        self.assertEqual(render(prefer_f.interpolant), 'c')
        self.assertEqual(render(prefer_g.interpolant), 'b')
        self.assertEqual(prefer_f.ambiguous, prefer_g.ambiguous)
        self.assertTrue(prefer_f.ambiguous)

    def test_proved_interpolant(self):
        f, g = self.three_clause
        report = cti_ground(f, g)
        self.assertTrue(report.proved)
        self.assertTrue(ground_entails(f, report.interpolant))
        self.assertTrue(ground_entails(report.interpolant, g))
        self.assertEqual(invariant_violations(report.tableau, report.annotations), [])

    def test_same_formula(self):
        p = parse('p')
        report = cti_ground(p, p)
        self.assertTrue(ground_entails(p, report.interpolant))
        self.assertTrue(ground_entails(report.interpolant, p))
        self.assertLessEqual(literals_of(report.interpolant), literals_of(p))

    def test_trivial_inputs(self):
        self.assertEqual(render(cti_ground(parse('$false'), parse('p')).interpolant), '$false')
        self.assertEqual(render(cti_ground(parse('p'), parse('$true')).interpolant), '$true')

    def test_not_entailed(self):
        report = cti_ground(parse('p'), parse('q'))
        self.assertEqual(report.status, NOT_PROVED)
        self.assertIsNone(report.interpolant)

    def test_rejected_inputs(self):
        with self.assertRaises(ValidationError) as caught:
            cti_ground(parse('![X]: p(X)'), parse('p(a)'))
        self.assertEqual(caught.exception.code, 'not_ground')
        with self.assertRaises(ValidationError) as caught:
            cti_ground(parse('a = b', equality=True), parse('a = b', equality=True))
        self.assertEqual(caught.exception.code, 'equality')

    def test_tableau_for_other_inputs(self):
        f, g = (parse(text) for text in SHARED_CLAUSE_PAIR)
        with self.assertRaises(ValidationError) as caught:
            cti_ground(f, g, tableau=load_tableau_fixture('three_clause_bottom_up.json'))
        self.assertEqual(caught.exception.code, 'tableau')

    def test_verification_attached(self):
        report = cti_ground(*self.three_clause, InterpolationConfig.from_settings(verify=True))
        self.assertTrue(report.verification.confirmed)
        self.assertEqual(report.verification.method, TRUTH_TABLE)


class RandomGroundTests(SimpleTestCase):
    """Ground interpolants of random unsatisfiable clause-set pairs, checked by truth table."""

    CASES = 200

    def test_random_pairs(self):
        rng = random.Random(SEED)
        for index in range(self.CASES):
            f_clauses, g_clauses = random_unsat_pair(rng)
            f, g = clauses_formula(f_clauses), Not(clauses_formula(g_clauses))
            report = cti_ground(f, g)
            label = f"case {index}: {render(f)} / {render(g)}"
            self.assertTrue(report.proved, label)
            h, tableau = report.interpolant, report.tableau

            table = TruthTable.over(tableau.for_f, tableau.for_g, h)
            self.assertTrue(table.entails(tableau.for_f, h), label)
            self.assertEqual(table.mask((h, tableau.for_g)), 0, label)
            allowed = literals_of(tableau.for_f) & flipped(literals_of(tableau.for_g))
            self.assertLessEqual(literals_of(h), allowed, label)
            self.assertEqual(invariant_violations(tableau, report.annotations), [], label)


class LiftingTests(SimpleTestCase):
    def test_maximal_terms(self):
        h = parse('p(g1, f(g1))')
        self.assertEqual(fg_maximal_terms(h, {symbol('f', 1)}, {symbol('g1'), symbol('g2')}),
                         [parse_term('g1'), parse_term('f(g1)')])
        self.assertEqual(fg_maximal_terms(parse('p(a)'), {symbol('f', 1)}, {symbol('g')}), [])

    def test_subterms_come_first(self):
        h = parse('p(g, f2(g), f1)')
        terms = fg_maximal_terms(h, {symbol('f1'), symbol('f2', 1)}, {symbol('g')})
        self.assertLess(terms.index(parse_term('g')), terms.index(parse_term('f2(g)')))

    def test_front_conditions(self):
        with self.assertRaises(ValidationError) as caught:
            LiftingFront(parse('p(a)'), parse('p(a)'), {symbol('a')}, {symbol('a')}, parse('p(a)'))
        self.assertEqual(caught.exception.code, 'signature')
        with self.assertRaises(ValidationError):
            LiftingFront(parse('p(a)'), parse('p(b)'), {symbol('b')}, set(), parse('p(a)'))

    def test_nothing_to_lift(self):
        h = parse('p(a) & q')
        lifted = lift(LiftingFront(h, h, set(), set(), h))
        self.assertEqual(lifted.prefix, ())
        self.assertEqual(lifted.formula, h)

    def test_function_and_constant(self):
        report = ctif(*fixture_pair('lift_nested'))
        self.assertEqual(render(report.interpolant), '![V1]: ?[V2]: p(V1, V2)')
        self.assertEqual(render(report.ground_interpolant), 'p(g, f(g))')

    def test_prefix_order_constraint(self):
        report = ctif(*fixture_pair('lift_skolem'))
        lifted = report.lifted
        self.assertEqual(len(lifted.prefix), 3)
        quantifiers = dict((name, quantifier) for quantifier, name in lifted.prefix)
        names = [name for _, name in lifted.prefix]
        by_term = {render(term): name for name, term in lifted.replaced}
        universal = by_term['g']
        existential = next(name for text, name in by_term.items() if text.endswith('(g)'))
        self.assertIs(quantifiers[universal], Forall)
        self.assertIs(quantifiers[existential], Exists)
        self.assertLess(names.index(universal), names.index(existential))
        self.assertIs(quantifiers[by_term['f1']], Exists)

    def test_two_universals(self):
        report = ctif(*fixture_pair('lift_two_witnesses'))
        self.assertEqual(render(report.interpolant), '?[V1]: ![V2]: ![V3]: (p(V2, V1) & p(V3, V1))')

    def test_irrelevant_symbols(self):
        report = ctif(*fixture_pair('lift_mixed'))
        self.assertEqual(render(report.interpolant), '![V1]: ?[V2]: p(V1, V2)')

    def test_fresh_constant(self):
        report = ctif(parse('![X]: p(X)'), parse('?[X]: p(X)'))
        self.assertEqual(report.fresh_constant, 'c0')
        self.assertEqual(render(report.ground_interpolant), 'p(c0)')
        self.assertIn(symbol('c0'), report.fset)
        self.assertEqual([render(term) for _, term in report.lifted.replaced], ['c0'])
        self.assertEqual(render(report.lifted.formula), '?[V1]: p(V1)')
        self.assertNotIn('c0', vocabulary(report.interpolant).function_names)
        self.assertEqual(render(report.interpolant), '?[V1]: p(V1)')
        on_g = ctif(parse('![X]: p(X)'), parse('?[X]: p(X)'), InterpolationConfig.from_settings(c0_side='G'))
        self.assertEqual(render(on_g.interpolant), '![V1]: p(V1)')

    def test_user_constant_named_c0(self):
        f = parse('(![X]: (~q(X) | p(c0))) & (![X]: q(X))')
        report = ctif(f, parse('p(c0)'))
        self.assertTrue(report.proved)
        self.assertIsNone(report.fresh_constant)
        self.assertTrue(report.grounding)
        self.assertEqual({render(term) for _, term in report.grounding}, {'c0'})
        self.assertNotIn(symbol('c0'), report.fset | report.gset)
        self.assertEqual(report.lifted.prefix, ())
        self.assertEqual(render(report.lifted.formula), 'p(c0)')

    def test_ground_inputs_match_ground_pipeline(self):
        f, g = fixture_pair('three_clause')
        self.assertEqual(ctif(f, g).interpolant, cti_ground(f, g).interpolant)

    def test_free_variables_stay_free(self):
        report = ctif(parse('p(X) & q'), parse('p(X) | r'))
        self.assertEqual(render(report.interpolant), 'p(X)')

    def test_reserved_constant_names(self):
        with self.assertRaises(ValidationError) as caught:
            ctif(parse('p(fv_a)'), parse('p(fv_a)'))
        self.assertEqual(caught.exception.code, 'reserved')


class FirstOrderCorpusTests(SimpleTestCase):
    def assert_interpolant(self, f, g, label):
        report = ctif(f, g)
        self.assertTrue(report.proved, label)
        h = report.interpolant
        syntactic = check_syntactic(f, g, h)
        self.assertTrue(syntactic.lyndon_ok, f"{label}: {render(h)} {syntactic.violations}")
        left, right, _ = check_semantic_fo(f, g, h)
        self.assertIn(left, CONFIRMED, f"{label}: {render(h)}")
        self.assertIn(right, CONFIRMED, f"{label}: {render(h)}")

    def test_lifting_examples(self):
        for name in ('lift_nested', 'lift_skolem', 'lift_two_witnesses', 'lift_mixed'):
            self.assert_interpolant(*fixture_pair(name), name)

    def test_corpus(self):
        for f_text, g_text in FIRST_ORDER_CORPUS:
            self.assert_interpolant(parse(f_text), parse(g_text), f"{f_text} / {g_text}")

    def test_definability_pair(self):
        self.assert_interpolant(*definability_inputs(parse(DEFINED), 'p'), 'definability')


class EqualityTests(SimpleTestCase):
    def setUp(self):
        self.config = InterpolationConfig.from_settings(equality=True)

    def equality_signs(self, h):
        return {sign for item, sign in vocabulary(h).predicates if item.name == EQUALITY}

    def test_equality_only_in_first_input(self):
        for f_text, g_text in EQUALITY_IN_F:
            f, g = parse(f_text, equality=True), parse(g_text, equality=True)
            report = ctif(f, g, self.config)
            self.assertTrue(report.proved, f_text)
            self.assertLessEqual(self.equality_signs(report.interpolant), {POSITIVE}, render(report.interpolant))

    def test_equality_only_in_second_input(self):
        for f_text, g_text in EQUALITY_IN_G:
            f, g = parse(f_text, equality=True), parse(g_text, equality=True)
            report = ctif(f, g, self.config)
            self.assertTrue(report.proved, g_text)
            self.assertLessEqual(self.equality_signs(report.interpolant), {NEGATIVE}, render(report.interpolant))

    def test_verified_with_axioms(self):
        f, g = parse('a = b', equality=True), parse('q(a) => q(b)', equality=True)
        report = ctif(f, g, self.config.with_options(verify=True))
        self.assertFalse(report.verification.failed, report.verification.violations)
        self.assertTrue(report.verification.syntactic_ok)

    def test_equality_needs_the_mode(self):
        with self.assertRaises(ValidationError) as caught:
            ctif(parse('a = b', equality=True), parse('q(a) => q(b)', equality=True))
        self.assertEqual(caught.exception.code, 'equality')


class DefinabilityTests(SimpleTestCase):
    def test_definiens(self):
        report = definiens(parse(DEFINED), 'p')
        self.assertTrue(report.proved)
        h = report.interpolant
        self.assertLessEqual(vocabulary(h).predicate_names, {'q', 'r'})
        self.assertEqual(vocabulary(h).free_vars, {'X1'})
        left, right, _ = check_semantic_fo(*definability_inputs(parse(DEFINED), 'p'), h)
        self.assertEqual((left, right), (PROVED, PROVED))

    def test_inputs(self):
        first, second = definability_inputs(parse('![X]: (p(X) <=> q(X))'), 'p')
        self.assertEqual(render(first), '(![X]: (p(X) <=> q(X))) & p(X1)')
        self.assertEqual(render(second), '~((![X]: (p_def(X) <=> q(X))) & ~p_def(X1))')

    def test_errors(self):
        f = parse(DEFINED)
        with self.assertRaises(ValidationError) as caught:
            definability_inputs(f, 'z')
        self.assertEqual(caught.exception.code, 'signature')
        with self.assertRaises(ValidationError) as caught:
            definability_inputs(parse('p(X1) & q'), 'p')
        self.assertEqual(caught.exception.code, 'free_variables')
        with self.assertRaises(ValidationError) as caught:
            definability_inputs(parse('p(a) & p_def(a)'), 'p')
        self.assertEqual(caught.exception.code, 'reserved')


class SymmetricInterpolationTests(SimpleTestCase):
    def test_chain(self):
        formulas = [parse('p'), parse('~p | q'), parse('~q')]
        result = symmetric_interpolants(formulas)
        self.assertEqual(result.status, PROVED)
        self.assertEqual(len(result.interpolants), 3)
        for formula, h in zip(formulas, result.interpolants):
            self.assertTrue(ground_entails(formula, h))
        self.assertFalse(satisfiable(conjoin(result.interpolants)))

    def test_satisfiable_input_stops(self):
        result = symmetric_interpolants([parse('p'), parse('q')])
        self.assertEqual(result.status, NOT_PROVED)
        self.assertEqual(result.interpolants, ())

    def test_needs_two_formulas(self):
        with self.assertRaises(ValueError):
            symmetric_interpolants([parse('p')])


class VerificationTests(SimpleTestCase):
    def setUp(self):
        self.f, self.g = fixture_pair('three_clause')

    def test_confirmed(self):
        report = verify(self.f, self.g, parse('(b & c) | e'))
        self.assertEqual(report.verdict, 'confirmed')
        self.assertEqual(report.method, TRUTH_TABLE)

    def test_semantic_failure(self):
        report = verify(parse('p'), parse('p | q'), parse('p & q'))
        self.assertEqual(report.semantic_left, ORACLE_FAIL)
        self.assertEqual(report.verdict, 'failed')

    def test_vocabulary_violations(self):
        check = check_syntactic(parse('p'), parse('p | q'), parse('q'))
        self.assertFalse(check.lyndon_ok)
        self.assertFalse(check.craig_ok)
        self.assertEqual(check.violations,
                         ['predicate q/0 occurs with positive polarity but not so in both inputs'])

    def test_polarity_only_violation(self):
        check = check_syntactic(parse('~p'), parse('p | ~p'), parse('p'))
        self.assertFalse(check.lyndon_ok)
        self.assertTrue(check.craig_ok)

    def test_function_and_variable_violations(self):
        check = check_syntactic(parse('p(f(a), X)'), parse('p(b, Y)'), parse('p(f(a), X)'))
        self.assertIn('function f/1 does not occur in both inputs', check.violations)
        self.assertIn('free variable X does not occur free in both inputs', check.violations)

    def test_first_order_uses_refutation(self):
        left, right, method = check_semantic_fo(parse('![X]: p(X)'), parse('p(a)'), parse('![X]: p(X)'))
        self.assertEqual((left, right, method), (PROVED, PROVED, REFUTATION))

    @override_settings(IPOL_TRUTH_TABLE_ATOMS=1)
    def test_budget_falls_back_to_refutation(self):
        left, right, method = check_semantic_fo(parse('p & q'), parse('p'), parse('p'))
        self.assertEqual(method, REFUTATION)
        self.assertEqual((left, right), (PROVED, PROVED))

    def test_rendered_report(self):
        text = verify(self.f, self.g, parse('(b & c) | e')).render(interpolant=parse('(b & c) | e'))
        self.assertIn('interpolant: (b & c) | e', text)
        self.assertIn('lyndon: ok', text)
        self.assertIn('f |= h: oracle-pass', text)


class ConfigFormTests(SimpleTestCase):
    def test_options_override_settings(self):
        form = InterpolationConfigForm(data={'side_policy': 'g', 'max_depth': '5', 'target': 'same-side'})
        self.assertTrue(form.is_valid(), form.errors)
        config = form.to_config()
        self.assertEqual(config.side_policy, PREFER_G)
        self.assertEqual(config.limits.max_depth, 5)
        self.assertEqual(config.target_policy, 'same-side')
        self.assertEqual(config.limits.timeout_ms, InterpolationConfig.from_settings().limits.timeout_ms)

    def test_invalid_options(self):
        form = InterpolationConfigForm(data={'side_policy': 'h', 'max_depth': '0', 'equality_placement': 'g'})
        self.assertFalse(form.is_valid())
        self.assertEqual(set(form.errors), {'side_policy', 'max_depth', 'equality_placement'})

    def test_map_files(self):
        with tempfile.TemporaryDirectory() as directory:
            sides = Path(directory) / 'sides.json'
            sides.write_text(json.dumps({'0': 'g', '0.1': 'F'}), encoding='utf-8')
            grounding = Path(directory) / 'grounding.json'
            grounding.write_text(json.dumps({'X': 'f(a)'}), encoding='utf-8')
            form = InterpolationConfigForm(data={'side_policy': f"map={sides}", 'grounding': f"map={grounding}"})
            self.assertTrue(form.is_valid(), form.errors)
        config = form.to_config()
        self.assertEqual(config.side_policy, {'0': 'G', '0.1': 'F'})
        self.assertEqual(config.grounding, GroundingPolicy.explicit({'X': Fn('f', (Fn('a'),))}))

    def test_start_clauses(self):
        form = InterpolationConfigForm(data={'start_clauses': 'all'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.to_config().prover.start_clauses, 'all')


class CommandTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def formula_file(self, name, text):
        path = Path(self.directory.name) / name
        path.write_text(text + '\n', encoding='utf-8')
        return str(path)

    def run_command(self, name, *args):
        out, err = StringIO(), StringIO()
        call_command(name, *args, stdout=out, stderr=err)
        return out.getvalue().strip(), err.getvalue()

    def test_interpolate(self):
        out, _ = self.run_command('interpolate', str(FIXTURES / 'lift_nested_f.p'), str(FIXTURES / 'lift_nested_g.p'))
        self.assertEqual(out, '![V1]: ?[V2]: p(V1, V2)')

    def test_interpolate_details_and_tableau(self):
        target = Path(self.directory.name) / 'tableau.json'
        out, err = self.run_command('interpolate', str(FIXTURES / 'lift_nested_f.p'), str(FIXTURES / 'lift_nested_g.p'),
                                    '--emit-tableau', str(target), '--verbosity', '2')
        self.assertIn('ground interpolant: p(g, f(g))', err)
        data = json.loads(target.read_text(encoding='utf-8'))
        self.assertEqual(data['root']['ipol'], 'p(g, f(g))')

    def test_ground_interpolate_with_tableau(self):
        out, _ = self.run_command('ground_interpolate', str(FIXTURES / 'three_clause_f.p'),
                                  str(FIXTURES / 'three_clause_g.p'),
                                  '--tableau', str(TABLEAU_FIXTURES / 'three_clause_top_down.json'))
        self.assertEqual(out, '(e | b) & (e | c)')

    def test_not_proved_exit(self):
        with self.assertRaises(CommandError) as caught:
            self.run_command('interpolate', self.formula_file('f.p', 'p'), self.formula_file('g.p', 'q'))
        self.assertEqual(caught.exception.returncode, NOT_PROVED_EXIT)

    def test_input_error_exit(self):
        with self.assertRaises(CommandError) as caught:
            self.run_command('interpolate', self.formula_file('f.p', 'p &'), self.formula_file('g.p', 'p'))
        self.assertEqual(caught.exception.returncode, INPUT_ERROR_EXIT)
        with self.assertRaises(CommandError) as caught:
            self.run_command('interpolate', str(Path(self.directory.name) / 'missing.p'),
                             self.formula_file('g.p', 'p'))
        self.assertEqual(caught.exception.returncode, INPUT_ERROR_EXIT)
        with self.assertRaises(CommandError) as caught:
            self.run_command('interpolate', self.formula_file('f.p', 'p'), self.formula_file('g.p', 'p'),
                             '--max-depth', '0')
        self.assertEqual(caught.exception.returncode, INPUT_ERROR_EXIT)

    def test_verify(self):
        f, g = str(FIXTURES / 'three_clause_f.p'), str(FIXTURES / 'three_clause_g.p')
        out, _ = self.run_command('verify', f, g, self.formula_file('h.p', '(b & c) | e'))
        self.assertIn('verdict: confirmed', out)
        with self.assertRaises(CommandError) as caught:
            self.run_command('verify', f, g, self.formula_file('wrong.p', 'b & c'))
        self.assertEqual(caught.exception.returncode, VERIFICATION_EXIT)

    def test_verify_flag_on_interpolate(self):
        out, err = self.run_command('interpolate', str(FIXTURES / 'three_clause_f.p'),
                                    str(FIXTURES / 'three_clause_g.p'), '--verify')
        self.assertIn('verdict: confirmed', err)

    def test_prove(self):
        out, _ = self.run_command('prove', self.formula_file('valid.p', '(![X]: p(X)) => p(a)'))
        tableau = load_tableau(out)
        self.assertFalse(tableau.root.is_leaf)

    def test_validate_tableau(self):
        out, _ = self.run_command('validate_tableau', str(TABLEAU_FIXTURES / 'three_clause_bottom_up.json'),
                                  '--require-sides')
        self.assertEqual(out, 'ok')
        with self.assertRaises(CommandError) as caught:
            self.run_command('validate_tableau', str(TABLEAU_FIXTURES / 'shared_clause.json'),
                             '--require-sides')
        self.assertEqual(caught.exception.returncode, VERIFICATION_EXIT)

    def test_definiens(self):
        out, _ = self.run_command('definiens', self.formula_file('def.p', DEFINED), 'p')
        self.assertEqual(vocabulary(parse(out)).free_vars, {'X1'})
        with self.assertRaises(CommandError) as caught:
            self.run_command('definiens', self.formula_file('def.p', DEFINED), 'z')
        self.assertEqual(caught.exception.returncode, INPUT_ERROR_EXIT)

    def test_entry_point(self):
        self.assertEqual(main(['no-such-command']), INPUT_ERROR_EXIT)
        f, g = str(FIXTURES / 'three_clause_f.p'), str(FIXTURES / 'three_clause_g.p')
        self.assertEqual(main(['verify', f, g, self.formula_file('h.p', '(b & c) | e')]), 0)
        self.assertEqual(main(['verify', f, g, self.formula_file('wrong.p', 'e')]), VERIFICATION_EXIT)
