"""
Normal forms and preparation of interpolation inputs: negation normal form,
renaming apart, prenexing, Skolemization, clausification and the equality
axioms used when "=" is treated as an ordinary predicate.
"""
import logging
import re
from dataclasses import dataclass
from typing import NamedTuple

from django.core.exceptions import ValidationError

from .formulas import (
    EQUALITY, FALSE, FUNCTION, PREDICATE, TRUE, And, Atom, Clause, Exists, Fn,
    Forall, Formula, Iff, Imp, Literal, Not, Or, Symbol, Truth, Var,
    complement, conjoin, free_vars, quantify, vocabulary,
)
from .simplify import simplify_tv
from .substitution import Substitution, apply

logger = logging.getLogger(__name__)

F_SKOLEM_PREFIX = 'sk'
G_SKOLEM_PREFIX = 'skg'
RESERVED_NAME = re.compile(r'^(sk|skg)\d+$')

PLACEMENTS = ('auto', 'f', 'g', 'both')


def nnf(f):
    """Negation normal form: no implications or equivalences, negations on atoms only."""
    return simplify_tv(_nnf(f, True))


def _nnf(f, positive):
    if isinstance(f, Truth):
        return f if positive else Truth(not f.value)
    if isinstance(f, Atom):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return _nnf(f.arg, not positive)
    if isinstance(f, And):
        cls = And if positive else Or
        return cls(_nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, Or):
        cls = Or if positive else And
        return cls(_nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, Imp):
        if positive:
            return Or(_nnf(f.left, False), _nnf(f.right, True))
        return And(_nnf(f.left, True), _nnf(f.right, False))
    if isinstance(f, Iff):
        if positive:
            return And(Or(_nnf(f.left, False), _nnf(f.right, True)),
                       Or(_nnf(f.left, True), _nnf(f.right, False)))
        return Or(And(_nnf(f.left, True), _nnf(f.right, False)),
                  And(_nnf(f.left, False), _nnf(f.right, True)))
    if isinstance(f, Forall):
        cls = Forall if positive else Exists
        return cls(f.var, _nnf(f.body, positive))
    if isinstance(f, Exists):
        cls = Exists if positive else Forall
        return cls(f.var, _nnf(f.body, positive))
    raise TypeError(f"Not a formula: {f!r}")


def fresh_name(base, used):
    if base not in used:
        return base
    index = 1
    while f"{base}{index}" in used:
        index += 1
    return f"{base}{index}"


def rename_apart(f, avoid=()):
    """Give every quantifier its own variable, distinct from the free variables."""
    used = set(avoid) | set(free_vars(f))
    return _rename(f, {}, used)


def _rename(f, renaming, used):
    if isinstance(f, Atom):
        if not renaming:
            return f
        return apply(Substitution({k: Var(v) for k, v in renaming.items()}), f)
    if isinstance(f, Truth):
        return f
    if isinstance(f, Not):
        return Not(_rename(f.arg, renaming, used))
    if isinstance(f, (And, Or, Imp, Iff)):
        return type(f)(_rename(f.left, renaming, used), _rename(f.right, renaming, used))
    if isinstance(f, (Forall, Exists)):
        name = fresh_name(f.var, used)
        used.add(name)
        inner = dict(renaming)
        inner[f.var] = name
        return type(f)(name, _rename(f.body, inner, used))
    raise TypeError(f"Not a formula: {f!r}")


def prenex(f):
    """Split a renamed-apart NNF formula into its quantifier prefix and matrix.

    Quantifiers whose variable does not occur in their scope are dropped.
    """
    prefix, matrix = _prenex(f)
    return prefix, matrix


def _prenex(f):
    if isinstance(f, (Forall, Exists)):
        prefix, matrix = _prenex(f.body)
        if f.var not in free_vars(matrix):
            return prefix, matrix
        return [(type(f), f.var)] + prefix, matrix
    if isinstance(f, (And, Or)):
        left_prefix, left = _prenex(f.left)
        right_prefix, right = _prenex(f.right)
        return left_prefix + right_prefix, type(f)(left, right)
    return [], f


class Skolemized(NamedTuple):
    matrix: Formula
    universals: tuple
    skolems: tuple


def skolemize(f, prefix=F_SKOLEM_PREFIX):
    """
    Replace every existential variable by a fresh function of the universal
    variables governing it, in the textual order of those universals.
    """
    if free_vars(f):
        raise ValidationError(
            "Skolemization needs a sentence; free variables: %(names)s",
            code='free_variables', params={'names': ', '.join(sorted(free_vars(f)))},
        )
    quantifiers, matrix = prenex(rename_apart(nnf(f)))
    universals, skolems, bindings = [], [], {}
    for quantifier, var in quantifiers:
        if quantifier is Forall:
            universals.append(var)
            continue
        name = f"{prefix}{len(skolems) + 1}"
        skolems.append(Symbol(name, len(universals), FUNCTION))
        bindings[var] = Fn(name, tuple(Var(u) for u in universals))
    if bindings:
        matrix = apply(Substitution(bindings), matrix)
    logger.debug(f"Skolemized with {len(skolems)} {prefix} symbols over {len(universals)} universals")
    return Skolemized(matrix, tuple(universals), tuple(skolems))


def _cnf(f):
    if f == TRUE:
        return []
    if f == FALSE:
        return [[]]
    if isinstance(f, Atom):
        return [[Literal(f, True)]]
    if isinstance(f, Not) and isinstance(f.arg, Atom):
        return [[Literal(f.arg, False)]]
    if isinstance(f, And):
        return _cnf(f.left) + _cnf(f.right)
    if isinstance(f, Or):
        left, right = _cnf(f.left), _cnf(f.right)
        return [a + b for a in left for b in right]
    raise ValueError(f"clausify expects a quantifier-free formula in negation normal form, got {f!r}")


def _tidy(literals):
    seen = []
    for lit in literals:
        if complement(lit) in seen:
            return None
        if lit not in seen:
            seen.append(lit)
    return Clause(tuple(seen))


def clausify(matrix):
    """Distribute a quantifier-free NNF formula into clauses.

    Duplicate literals and tautological clauses are removed, as are repeated
    clauses; literal and clause order otherwise follows the formula.
    """
    clauses = []
    for literals in _cnf(simplify_tv(matrix)):
        clause = _tidy(literals)
        if clause is not None and clause not in clauses:
            clauses.append(clause)
    return tuple(clauses)


@dataclass(frozen=True)
class PreparedInputs:
    f_clauses: tuple
    g_clauses: tuple
    f_skolems: frozenset
    g_skolems: frozenset
    f_original: Formula
    g_original: Formula

    @property
    def clauses(self):
        return self.f_clauses + self.g_clauses


def check_reserved(*formulas):
    for f in formulas:
        for symbol in vocabulary(f).functions:
            if RESERVED_NAME.match(symbol.name):
                raise ValidationError(
                    "Function symbol %(name)s collides with the Skolem namespace",
                    code='reserved', params={'name': symbol.name},
                )


def prepare_inputs(f, g):
    """Skolemize and clausify f and the negation of g with disjoint Skolem namespaces."""
    check_reserved(f, g)
    f_form = skolemize(f, prefix=F_SKOLEM_PREFIX)
    g_form = skolemize(Not(g), prefix=G_SKOLEM_PREFIX)
    prepared = PreparedInputs(
        f_clauses=clausify(f_form.matrix),
        g_clauses=clausify(g_form.matrix),
        f_skolems=frozenset(f_form.skolems),
        g_skolems=frozenset(g_form.skolems),
        f_original=f,
        g_original=g,
    )
    assert not prepared.f_skolems & prepared.g_skolems
    logger.debug(f"Prepared {len(prepared.f_clauses)} F clauses and {len(prepared.g_clauses)} G clauses")
    return prepared


# Equality as an ordinary predicate

def _vars(prefix, count):
    return tuple(Var(f"{prefix}{index}") for index in range(1, count + 1))


def _eq(a, b):
    return Atom(EQUALITY, (a, b))


def reflexivity():
    x = Var('X')
    return Forall('X', _eq(x, x))


def symmetry():
    x, y = Var('X'), Var('Y')
    return Forall('X', Forall('Y', Imp(_eq(x, y), _eq(y, x))))


def transitivity():
    x, y, z = Var('X'), Var('Y'), Var('Z')
    return Forall('X', Forall('Y', Forall('Z', Imp(And(_eq(x, y), _eq(y, z)), _eq(x, z)))))


def substitutivity(symbol):
    """One axiom per argument position of a predicate or function symbol."""
    axioms = []
    xs = _vars('X', symbol.arity)
    y = Var('Y')
    prefix = [(Forall, x.name) for x in xs] + [(Forall, 'Y')]
    for position, x in enumerate(xs):
        replaced = xs[:position] + (y,) + xs[position + 1:]
        if symbol.kind == PREDICATE:
            body = Imp(And(Atom(symbol.name, xs), _eq(x, y)), Atom(symbol.name, replaced))
        else:
            body = Imp(_eq(x, y), _eq(Fn(symbol.name, xs), Fn(symbol.name, replaced)))
        axioms.append(quantify(prefix, body))
    return axioms


def _equality_symbols(f):
    vocab = vocabulary(f)
    symbols = {symbol for symbol in vocab.functions if symbol.arity > 0}
    symbols |= {symbol for symbol, _ in vocab.predicates if symbol.name != EQUALITY and symbol.arity > 0}
    return symbols


def has_equality(f):
    return any(symbol.name == EQUALITY for symbol, _ in vocabulary(f).predicates)


def equality_axioms(f, g, enabled=True, placement='auto'):
    """
    Axioms e_f, e_g making "=" behave as equality for interpolating
    (e_f & f, e_g => g). Substitutivity for symbols of one input only goes to
    that input's side; reflexivity, symmetry, transitivity and substitutivity
    for shared symbols go where placement says. With placement "auto" that is
    the side in which "=" occurs, f if both.
    """
    in_f, in_g = has_equality(f), has_equality(g)
    if not (in_f or in_g):
        return TRUE, TRUE
    if not enabled:
        raise ValidationError("Equality occurs but equality mode is off", code='equality')
    if placement not in PLACEMENTS:
        raise ValidationError("Unknown equality axiom placement %(value)s", code='equality',
                              params={'value': placement})
    if placement == 'auto':
        placement = 'f' if in_f else 'g'

    f_symbols, g_symbols = _equality_symbols(f), _equality_symbols(g)
    order = lambda symbol: (symbol.kind, symbol.name)
    only_f = [axiom for s in sorted(f_symbols - g_symbols, key=order) for axiom in substitutivity(s)]
    only_g = [axiom for s in sorted(g_symbols - f_symbols, key=order) for axiom in substitutivity(s)]
    shared = [reflexivity(), symmetry(), transitivity()]
    shared += [axiom for s in sorted(f_symbols & g_symbols, key=order) for axiom in substitutivity(s)]

    e_f = only_f + (shared if placement in ('f', 'both') else [])
    e_g = only_g + (shared if placement in ('g', 'both') else [])
    logger.debug(f"Equality axioms: {len(e_f)} for f, {len(e_g)} for g (placement {placement})")
    return conjoin(e_f), conjoin(e_g)


def axiomatize(f, g, enabled=True, placement='auto'):
    """The pair (e_f & f, e_g => g) with trivial axiom sets left out."""
    e_f, e_g = equality_axioms(f, g, enabled=enabled, placement=placement)
    if e_f != TRUE:
        f = And(e_f, f)
    if e_g != TRUE:
        g = Imp(e_g, g)
    return f, g
