from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from syntax.formulas import (
    FALSE, FUNCTION, NEGATIVE, POSITIVE, PREDICATE, TRUE, And, Atom, Clause,
    Exists, Fn, Forall, Iff, Imp, Literal, Not, Or, Symbol, Var,
    complement, render, vocabulary,
)
from syntax.normalize import (
    axiomatize, clausify, equality_axioms, nnf, prepare_inputs, reflexivity,
    skolemize, substitutivity, symmetry, transitivity,
)
from syntax.parser import parse, parse_clause, parse_literal, parse_term
from syntax.simplify import simplify_equality, simplify_tv
from syntax.substitution import (
    EMPTY, Substitution, apply, compose, instantiate_free, inverse_apply,
    is_instance, replacement_order, unify,
)
from syntax.truthtable import TruthTable, equivalent, first_model, ground_entails

CONSTANTS = ('a', 'b', 'c')
VARIABLES = ('X', 'Y', 'Z')
GROUND_TERMS = (
    Fn('a'), Fn('b'), Fn('f', (Fn('a'),)), Fn('h', (Fn('a'), Fn('f', (Fn('a'),)))),
)


def terms(variables=VARIABLES):
    leaves = st.sampled_from(CONSTANTS).map(Fn)
    if variables:
        leaves = leaves | st.sampled_from(variables).map(Var)
    return st.recursive(leaves, lambda inner: st.one_of(
        st.builds(lambda t: Fn('f', (t,)), inner),
        st.builds(lambda s, t: Fn('h', (s, t)), inner, inner),
    ), max_leaves=5)


def atoms(term_strategy):
    return st.one_of(
        st.just(Atom('r')),
        st.builds(lambda t: Atom('p', (t,)), term_strategy),
        st.builds(lambda s, t: Atom('q', (s, t)), term_strategy, term_strategy),
    )


def formulas(atom_strategy, quantified=False, truth_values=True, max_leaves=8):
    leaves = atom_strategy
    if truth_values:
        leaves = leaves | st.sampled_from((TRUE, FALSE))

    def extend(inner):
        options = [st.builds(Not, inner)]
        options += [st.builds(cls, inner, inner) for cls in (And, Or, Imp, Iff)]
        if quantified:
            options += [st.builds(cls, st.sampled_from(VARIABLES), inner) for cls in (Forall, Exists)]
        return st.one_of(options)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


ground_formulas = formulas(atoms(terms(variables=())))
small_ground_formulas = formulas(atoms(terms(variables=())), max_leaves=6)
pooled_formulas = formulas(atoms(st.sampled_from(GROUND_TERMS)), truth_values=False)
injective_ground_substitutions = st.lists(
    st.sampled_from(GROUND_TERMS), min_size=1, max_size=3, unique=True,
).map(lambda range_terms: Substitution(dict(zip(('U', 'V', 'W'), range_terms))))


def negations_on_atoms_only(f):
    if isinstance(f, Not):
        return isinstance(f.arg, Atom)
    if isinstance(f, (Imp, Iff)):
        return False
    if isinstance(f, (And, Or)):
        return negations_on_atoms_only(f.left) and negations_on_atoms_only(f.right)
    if isinstance(f, (Forall, Exists)):
        return negations_on_atoms_only(f.body)
    return True


def conjuncts(f):
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def ground_out(f, s):
    """Replace the domain variables of s by constants occurring nowhere else."""
    return instantiate_free(f, {name: Fn(f"fresh_{name.lower()}") for name in s.dom})


class VocabularyTests(SimpleTestCase):
    def test_predicate_polarity(self):
        p = Symbol('p', 0, PREDICATE)
        self.assertEqual(vocabulary(parse('p')).predicates, {(p, POSITIVE)})
        self.assertEqual(vocabulary(parse('p | ~p')).predicates, {(p, POSITIVE), (p, NEGATIVE)})

    def test_implication_is_expanded_for_polarity(self):
        predicates = vocabulary(parse('~(p => q)')).predicates
        self.assertEqual(predicates, {(Symbol('p', 0, PREDICATE), POSITIVE),
                                      (Symbol('q', 0, PREDICATE), NEGATIVE)})

    def test_equivalence_has_both_polarities(self):
        names = {(symbol.name, sign) for symbol, sign in vocabulary(parse('p <=> q')).predicates}
        self.assertEqual(names, {('p', '+'), ('p', '-'), ('q', '+'), ('q', '-')})

    def test_functions_and_free_variables(self):
        vocab = vocabulary(parse('p(f(a), X)'))
        self.assertEqual(vocab.functions, {Symbol('f', 1, FUNCTION), Symbol('a', 0, FUNCTION)})
        self.assertEqual(vocab.free_vars, {'X'})

    def test_bound_variables_are_not_free(self):
        self.assertEqual(vocabulary(parse('![X]: p(X, Y)')).free_vars, {'Y'})

    def test_truth_values_have_no_literals(self):
        self.assertEqual(vocabulary(TRUE).literals, frozenset())
        self.assertEqual(vocabulary(FALSE).predicates, frozenset())

    def test_complement_is_an_involution(self):
        lit = parse_literal('~p(a)')
        self.assertEqual(complement(lit), parse_literal('p(a)'))
        self.assertEqual(complement(complement(lit)), lit)

    @given(formulas(atoms(terms()), quantified=True))
    @settings(max_examples=200, deadline=None)
    def test_negation_swaps_polarity(self, f):
        swap = {POSITIVE: NEGATIVE, NEGATIVE: POSITIVE}
        flipped = {(symbol, swap[sign]) for symbol, sign in vocabulary(f).predicates}
        self.assertEqual(vocabulary(Not(f)).predicates, flipped)


class ParserTests(SimpleTestCase):
    def test_connectives(self):
        p = Atom('p')
        self.assertEqual(parse('p & ~p'), And(p, Not(p)))

    def test_quantifier(self):
        x = Var('X')
        self.assertEqual(parse('![X]: p(X, f(X))'), Forall('X', Atom('p', (x, Fn('f', (x,))))))

    def test_variable_lists_nest(self):
        self.assertEqual(parse('?[X, Y]: q(X, Y)'), parse('?[X]: ?[Y]: q(X, Y)'))

    def test_precedence(self):
        a, b, c = Atom('a'), Atom('b'), Atom('c')
        self.assertEqual(parse('a | b & c'), Or(a, And(b, c)))
        self.assertEqual(parse('~a & b'), And(Not(a), b))
        self.assertEqual(parse('a & b => c'), Imp(And(a, b), c))
        self.assertEqual(parse('a => b <=> c'), Iff(Imp(a, b), c))

    def test_associativity(self):
        a, b, c = Atom('a'), Atom('b'), Atom('c')
        self.assertEqual(parse('a & b & c'), And(And(a, b), c))
        self.assertEqual(parse('a | b | c'), Or(Or(a, b), c))
        self.assertEqual(parse('a => b => c'), Imp(a, Imp(b, c)))
        self.assertEqual(parse('a <=> b <=> c'), Iff(a, Iff(b, c)))

    def test_quantifier_scope_is_unary(self):
        self.assertEqual(parse('![X]: p(X) & q'), And(Forall('X', Atom('p', (Var('X'),))), Atom('q')))

    def test_truth_values_and_comments(self):
        self.assertEqual(parse('$true | $false % trailing remark'), Or(TRUE, FALSE))
        self.assertEqual(parse('% header\np\n'), Atom('p'))

    def test_equality_mode(self):
        self.assertEqual(parse('a = f(b)', equality=True), Atom('=', (Fn('a'), Fn('f', (Fn('b'),)))))
        self.assertEqual(parse('a => b', equality=True), Imp(Atom('a'), Atom('b')))
        with self.assertRaises(ValidationError) as ctx:
            parse('a = b')
        self.assertEqual(ctx.exception.code, 'syntax')

    def test_syntax_error_reports_position(self):
        with self.assertRaises(ValidationError) as ctx:
            parse('p(a) &\n  q(')
        self.assertEqual(ctx.exception.code, 'syntax')
        self.assertIn('line', ctx.exception.params)
        self.assertIn('column', ctx.exception.params)

    def test_arity_clash(self):
        with self.assertRaises(ValidationError) as ctx:
            parse('p(a) & p')
        self.assertEqual(ctx.exception.code, 'arity')

    def test_function_and_predicate_share_names(self):
        with self.assertRaises(ValidationError) as ctx:
            parse('p(f) & f')
        self.assertEqual(ctx.exception.code, 'arity')
        with self.assertRaises(ValidationError) as ctx:
            parse('p(q(a)) | q(b)')
        self.assertEqual(ctx.exception.code, 'arity')
        self.assertEqual(render(parse('p(q(a)) | r(b)')), 'p(q(a)) | r(b)')

    def test_terms_literals_and_clauses(self):
        self.assertEqual(parse_term('f(X, b)'), Fn('f', (Var('X'), Fn('b'))))
        self.assertEqual(parse_literal('~p(a)'), Literal(Atom('p', (Fn('a'),)), False))
        self.assertEqual(parse_clause('$false'), Clause())
        self.assertEqual(render(parse_clause('~a | b | c')), '~a | b | c')
        with self.assertRaises(ValidationError):
            parse_clause('a & b')

    def test_render_normal_form(self):
        self.assertEqual(render(parse('a & b & c')), '(a & b) & c')
        self.assertEqual(render(parse('![X]: (p(X) => ~q(X, a))')), '![X]: (p(X) => ~q(X, a))')
        self.assertEqual(render(parse('~(a | b)')), '~(a | b)')
        self.assertEqual(render(Clause()), '$false')

    @given(formulas(atoms(terms()), quantified=True))
    @settings(max_examples=500, deadline=None)
    def test_parse_inverts_render(self, f):
        self.assertEqual(parse(render(f)), f)
        self.assertEqual(render(parse(render(f))), render(f))


class SimplifyTests(SimpleTestCase):
    def test_rules(self):
        self.assertEqual(render(simplify_tv(parse('(b & c) | $false'))), 'b & c')
        self.assertEqual(render(simplify_tv(parse('$true & (e | $false)'))), 'e')
        self.assertEqual(simplify_tv(parse('a & $false')), FALSE)
        self.assertEqual(simplify_tv(parse('$true | a')), TRUE)

    def test_leaf_combination_of_bottom_up_tableau(self):
        raw = parse('($false | ($false | (b & (c & $true)))) | (e | $false)')
        self.assertEqual(render(simplify_tv(raw)), '(b & c) | e')

    def test_no_other_rewriting(self):
        self.assertEqual(simplify_tv(Not(TRUE)), Not(TRUE))
        self.assertEqual(simplify_tv(parse('a & a')), parse('a & a'))
        self.assertEqual(simplify_tv(parse('$true => a')), parse('$true => a'))

    def test_reflexive_equations(self):
        self.assertEqual(simplify_equality(parse('a = a | p', equality=True)), TRUE)
        self.assertEqual(simplify_equality(parse('~(a = a) | p', equality=True)), Atom('p'))

    @given(ground_formulas)
    @settings(max_examples=300, deadline=None)
    def test_preserves_equivalence_and_atoms(self, f):
        simplified = simplify_tv(f)
        self.assertTrue(equivalent(f, simplified))
        self.assertLessEqual(vocabulary(simplified).literals, vocabulary(f).literals)


class SubstitutionTests(SimpleTestCase):
    def test_apply(self):
        s = Substitution({'X': Fn('a')})
        self.assertEqual(apply(s, parse('p(X, Y)')), parse('p(a, Y)'))
        self.assertEqual(apply(EMPTY, parse_term('f(X)')), parse_term('f(X)'))

    def test_apply_distributes_over_terms(self):
        s = Substitution({'U1': Fn('g1'), 'U2': parse_term('f(g1)')})
        self.assertEqual(render(apply(s, parse('p(U1, f(U1)) & q(U2, U1)'))), 'p(g1, f(g1)) & q(f(g1), g1)')

    def test_identity_bindings_are_dropped(self):
        s = Substitution({'X': Var('X'), 'Y': Fn('a')})
        self.assertEqual(s.dom, {'Y'})
        with self.assertRaises(AttributeError):
            s.extra = 1

    def test_quantified_input_is_rejected(self):
        with self.assertRaises(ValueError):
            apply(Substitution({'X': Fn('a')}), parse('![Y]: p(Y)'))

    def test_compose(self):
        s = Substitution({'X': Var('Y')})
        g = Substitution({'Y': Fn('a')})
        self.assertEqual(compose(EMPTY, g), g)
        self.assertEqual(compose(s, g), Substitution({'X': Fn('a'), 'Y': Fn('a')}))

    @given(st.dictionaries(st.sampled_from(VARIABLES), terms(), max_size=3),
           st.dictionaries(st.sampled_from(VARIABLES), terms(), max_size=3),
           terms())
    @settings(max_examples=200, deadline=None)
    def test_compose_applies_in_sequence(self, first, second, term):
        s, g = Substitution(first), Substitution(second)
        self.assertEqual(apply(compose(s, g), term), apply(g, apply(s, term)))

    def test_inverse_apply_replaces_maximal_occurrences(self):
        s = Substitution({'X': parse_term('f(a)'), 'Y': parse_term('g(f(a))')})
        self.assertEqual(render(inverse_apply(s, parse('p(h(f(a), g(f(a))))'))), 'p(h(X, Y))')

    def test_inverse_apply_without_occurrence(self):
        s = Substitution({'X': Fn('a')})
        self.assertEqual(inverse_apply(s, parse('p(b)')), parse('p(b)'))

    def test_inverse_apply_contract(self):
        with self.assertRaises(ValueError):
            inverse_apply(Substitution({'X': Fn('a'), 'Y': Fn('a')}), parse('p(a)'))
        with self.assertRaises(ValueError):
            inverse_apply(Substitution({'X': Fn('a')}), parse('![Z]: p(Z, a)'))

    def test_replacement_order(self):
        s = Substitution({'X': Fn('b'), 'Y': parse_term('f(a)'), 'Z': Fn('a')})
        self.assertEqual([name for name, _ in replacement_order(s)], ['Y', 'Z', 'X'])

    @given(injective_ground_substitutions, formulas(atoms(terms(variables=('X', 'Y')))))
    @settings(max_examples=500, deadline=None)
    def test_apply_undoes_inverse_apply(self, s, e):
        self.assertEqual(apply(s, inverse_apply(s, e)), e)

    @given(injective_ground_substitutions, pooled_formulas, pooled_formulas)
    @settings(max_examples=200, deadline=None)
    def test_inverse_apply_preserves_entailment(self, s, f, g):
        if not ground_entails(f, g):
            g = Or(g, f)
        lifted_f = ground_out(inverse_apply(s, f), s)
        lifted_g = ground_out(inverse_apply(s, g), s)
        self.assertTrue(ground_entails(lifted_f, lifted_g))


class UnificationTests(SimpleTestCase):
    def test_most_general_unifier(self):
        mgu = unify(parse_term('f(X, b)'), parse_term('f(a, Y)'))
        self.assertEqual(mgu, Substitution({'X': Fn('a'), 'Y': Fn('b')}))

    def test_bindings_are_resolved(self):
        mgu = unify(parse_term('h(X, Y)'), parse_term('h(Y, a)'))
        self.assertEqual(apply(mgu, parse_term('h(X, Y)')), parse_term('h(a, a)'))

    def test_failures(self):
        self.assertIsNone(unify(Var('X'), parse_term('f(X)')))
        self.assertIsNone(unify(parse_term('f(a)'), parse_term('g(a)')))

    def test_instances(self):
        pattern = parse_clause('p(X) | q(X, Y)')
        self.assertTrue(is_instance(parse_clause('p(a) | q(a, b)'), pattern))
        self.assertFalse(is_instance(parse_clause('p(a) | q(b, b)'), pattern))
        self.assertFalse(is_instance(parse_clause('q(a, b) | p(a)'), pattern))
        self.assertTrue(is_instance(parse_clause('q(a, b) | p(a)'), pattern, permutations=True))


class TruthTableTests(SimpleTestCase):
    def test_entailment_and_models(self):
        self.assertTrue(ground_entails(parse('a & b'), parse('a | c')))
        self.assertFalse(ground_entails(parse('a | b'), parse('a')))
        self.assertTrue(equivalent(parse('a => b'), parse('~a | b')))
        self.assertEqual(first_model(parse('a & ~b')), {Atom('a'): True, Atom('b'): False})

    def test_clause_sequences_are_conjunctions(self):
        clauses = (parse_clause('a | b'), parse_clause('~a'))
        table = TruthTable.over(clauses, Atom('b'))
        self.assertTrue(table.entails(clauses, Atom('b')))

    def test_atom_budget(self):
        with self.assertRaises(ValidationError) as ctx:
            TruthTable.over(parse('a & b & c'), budget=2)
        self.assertEqual(ctx.exception.code, 'budget')

    def test_ground_input_required(self):
        with self.assertRaises(ValidationError) as ctx:
            TruthTable.over(parse('p(X)'))
        self.assertEqual(ctx.exception.code, 'not_ground')


class NormalFormTests(SimpleTestCase):
    def test_nnf(self):
        self.assertEqual(nnf(parse('~(p & q)')), parse('~p | ~q'))
        self.assertEqual(nnf(parse('~![X]: p(X)')), parse('?[X]: ~p(X)'))
        self.assertEqual(nnf(Not(TRUE)), FALSE)

    def test_nnf_of_negated_equivalence(self):
        result = nnf(parse('~(p <=> q)'))
        self.assertTrue(negations_on_atoms_only(result))
        self.assertTrue(equivalent(result, parse('~(p <=> q)')))

    @given(small_ground_formulas)
    @settings(max_examples=300, deadline=None)
    def test_nnf_and_clausify_preserve_equivalence(self, f):
        normal = nnf(f)
        self.assertTrue(negations_on_atoms_only(normal))
        self.assertTrue(equivalent(f, normal))
        clauses = clausify(normal)
        table = TruthTable.over(f, clauses)
        self.assertEqual(table.mask(clauses), table.mask(f))
        for clause in clauses:
            self.assertEqual(len(set(clause.literals)), len(clause.literals))
            self.assertFalse(any(complement(lit) in clause.literals for lit in clause.literals))

    def test_clausify(self):
        clauses = clausify(nnf(parse('(a | e) & (~a | b) & (a | ~a) & (b | b)')))
        self.assertEqual([render(clause) for clause in clauses], ['a | e', '~a | b', 'b'])
        self.assertEqual(clausify(TRUE), ())
        self.assertEqual(clausify(FALSE), (Clause(),))

    def test_skolemize(self):
        result = skolemize(parse('![X]: ?[Y]: p(X, Y, f1)'))
        self.assertEqual(render(result.matrix), 'p(X, sk1(X), f1)')
        self.assertEqual(result.universals, ('X',))
        self.assertEqual(result.skolems, (Symbol('sk1', 1, FUNCTION),))

    def test_skolem_constants_and_universals(self):
        result = skolemize(parse('?[Y]: p(Y)'))
        self.assertEqual(render(result.matrix), 'p(sk1)')
        self.assertEqual(result.skolems, (Symbol('sk1', 0, FUNCTION),))
        result = skolemize(parse('![X]: p(X)'))
        self.assertEqual((render(result.matrix), result.universals, result.skolems), ('p(X)', ('X',), ()))

    def test_skolemize_needs_a_sentence(self):
        with self.assertRaises(ValidationError) as ctx:
            skolemize(parse('p(X)'))
        self.assertEqual(ctx.exception.code, 'free_variables')

    def test_prepare_ground_inputs(self):
        prepared = prepare_inputs(parse('a & b & (b => c)'), parse('c | ~(b => c) | d'))
        self.assertEqual([render(clause) for clause in prepared.f_clauses], ['a', 'b', '~b | c'])
        self.assertEqual([render(clause) for clause in prepared.g_clauses], ['~c', '~b | c', '~d'])
        self.assertEqual(prepared.f_skolems | prepared.g_skolems, frozenset())

    def test_prepare_first_order_inputs(self):
        prepared = prepare_inputs(parse('![X]: ?[Y]: p(X, Y, f1)'), parse('?[X]: ?[Y]: p(g, X, Y)'))
        self.assertEqual([render(clause) for clause in prepared.f_clauses], ['p(X, sk1(X), f1)'])
        self.assertEqual([render(clause) for clause in prepared.g_clauses], ['~p(g, X, Y)'])
        self.assertEqual(prepared.f_skolems, {Symbol('sk1', 1, FUNCTION)})
        self.assertEqual(prepared.g_skolems, frozenset())

    def test_skolem_namespaces_stay_apart(self):
        prepared = prepare_inputs(parse('?[X]: p(X)'), parse('![X]: p(X)'))
        self.assertEqual({s.name for s in prepared.f_skolems}, {'sk1'})
        self.assertEqual({s.name for s in prepared.g_skolems}, {'skg1'})

    def test_reserved_names(self):
        with self.assertRaises(ValidationError) as ctx:
            prepare_inputs(parse('p(sk1)'), parse('p(a)'))
        self.assertEqual(ctx.exception.code, 'reserved')


class EqualityAxiomTests(SimpleTestCase):
    F = 'p(a) & a = b'
    G = 'q(b)'

    def axioms(self, **options):
        return equality_axioms(parse(self.F, equality=True), parse(self.G, equality=True), **options)

    def test_substitutivity(self):
        axiom = substitutivity(Symbol('p', 1, PREDICATE))[0]
        self.assertEqual(render(axiom), '![X1]: ![Y]: ((p(X1) & X1 = Y) => p(Y))')
        axioms = substitutivity(Symbol('h', 2, FUNCTION))
        self.assertEqual(len(axioms), 2)
        self.assertEqual(render(axioms[1]), '![X1]: ![X2]: ![Y]: (X2 = Y => h(X1, X2) = h(X1, Y))')

    def test_one_sided_symbols_stay_on_their_side(self):
        e_f, e_g = self.axioms()
        self.assertEqual(conjuncts(e_f), substitutivity(Symbol('p', 1, PREDICATE))
                         + [reflexivity(), symmetry(), transitivity()])
        self.assertEqual(conjuncts(e_g), substitutivity(Symbol('q', 1, PREDICATE)))

    def test_placement(self):
        _, e_g = self.axioms(placement='g')
        self.assertIn(reflexivity(), conjuncts(e_g))
        e_f, e_g = self.axioms(placement='both')
        self.assertIn(transitivity(), conjuncts(e_f))
        self.assertIn(transitivity(), conjuncts(e_g))

    def test_auto_placement_follows_equality(self):
        _, e_g = equality_axioms(parse('p(a)'), parse('p(b) | a = b', equality=True))
        self.assertIn(symmetry(), conjuncts(e_g))

    def test_no_equality(self):
        self.assertEqual(equality_axioms(parse('p(a)'), parse('p(b)')), (TRUE, TRUE))

    def test_errors(self):
        with self.assertRaises(ValidationError) as ctx:
            self.axioms(enabled=False)
        self.assertEqual(ctx.exception.code, 'equality')
        with self.assertRaises(ValidationError):
            self.axioms(placement='nowhere')

    def test_axiomatize(self):
        f, g = parse(self.F, equality=True), parse(self.G, equality=True)
        e_f, e_g = equality_axioms(f, g)
        self.assertEqual(axiomatize(f, g), (And(e_f, f), Imp(e_g, g)))
        self.assertEqual(axiomatize(parse('p'), parse('q')), (parse('p'), parse('q')))
