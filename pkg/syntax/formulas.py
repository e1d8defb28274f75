"""
First-order syntax: symbols, terms, literals, clauses and formulas.

All values are frozen dataclasses, so they compare structurally, hash, and can
be shared freely between tableaux, reports and threads.
"""
from dataclasses import dataclass
from typing import NamedTuple

FUNCTION = 'function'
PREDICATE = 'predicate'

POSITIVE = '+'
NEGATIVE = '-'

EQUALITY = '='


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int
    kind: str = FUNCTION

    def __str__(self):
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Fn:
    """Application of a function symbol; constants have no arguments."""
    name: str
    args: tuple = ()

    @property
    def symbol(self):
        return Symbol(self.name, len(self.args), FUNCTION)

    def __str__(self):
        return render(self)


class Formula:
    """Marker base class of every formula node."""

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Truth(Formula):
    value: bool


TRUE = Truth(True)
FALSE = Truth(False)


@dataclass(frozen=True)
class Atom(Formula):
    pred: str
    args: tuple = ()

    @property
    def symbol(self):
        return Symbol(self.pred, len(self.args), PREDICATE)

    @property
    def is_equality(self):
        return self.pred == EQUALITY


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


BINARY = (And, Or, Imp, Iff)
QUANTIFIERS = (Forall, Exists)

_OPERATORS = {And: '&', Or: '|', Imp: '=>', Iff: '<=>'}


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    @property
    def sign(self):
        return POSITIVE if self.positive else NEGATIVE

    def as_formula(self):
        return self.atom if self.positive else Not(self.atom)

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Clause:
    """Ordered disjunction of literals; the empty clause is falsum."""
    literals: tuple = ()

    def __len__(self):
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def as_formula(self):
        return disjoin(lit.as_formula() for lit in self.literals)

    def __str__(self):
        return render(self)


class Vocabulary(NamedTuple):
    free_vars: frozenset
    functions: frozenset
    predicates: frozenset
    literals: frozenset

    @property
    def function_names(self):
        return frozenset(symbol.name for symbol in self.functions)

    @property
    def predicate_names(self):
        return frozenset(symbol.name for symbol, _ in self.predicates)


def complement(lit):
    return Literal(lit.atom, not lit.positive)


def conjoin(items):
    """Left-fold conjunction; the empty conjunction is verum."""
    result = None
    for item in items:
        result = item if result is None else And(result, item)
    return TRUE if result is None else result


def disjoin(items):
    result = None
    for item in items:
        result = item if result is None else Or(result, item)
    return FALSE if result is None else result


def clauses_formula(clauses):
    return conjoin(clause.as_formula() for clause in clauses)


def quantify(prefix, matrix):
    """Wrap matrix in the (quantifier class, variable) pairs of prefix, outermost first."""
    result = matrix
    for quantifier, var in reversed(list(prefix)):
        result = quantifier(var, result)
    return result


def term_size(term):
    if isinstance(term, Var):
        return 1
    return 1 + sum(term_size(arg) for arg in term.args)


def subterms(term):
    yield term
    if isinstance(term, Fn):
        for arg in term.args:
            yield from subterms(arg)


def is_ground_term(term):
    if isinstance(term, Var):
        return False
    return all(is_ground_term(arg) for arg in term.args)


def is_quantifier_free(f):
    if isinstance(f, QUANTIFIERS):
        return False
    if isinstance(f, Not):
        return is_quantifier_free(f.arg)
    if isinstance(f, BINARY):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    return True


def atoms_of(e):
    """Atoms of a formula, literal, clause or clause sequence in first-occurrence order."""
    seen = {}
    for atom, _ in _polar_atoms(e, True):
        seen.setdefault(atom, None)
    return list(seen)


def is_ground(e):
    return not vocabulary(e).free_vars and _closed_quantifiers(e)


def _closed_quantifiers(e):
    return not isinstance(e, Formula) or is_quantifier_free(e)


def _polar_atoms(e, positive):
    """Yield (atom, positive) pairs; implications and equivalences are read as
    their disjunctive/conjunctive expansions."""
    if isinstance(e, Atom):
        yield e, positive
    elif isinstance(e, Literal):
        yield e.atom, e.positive == positive
    elif isinstance(e, Clause):
        for lit in e.literals:
            yield lit.atom, lit.positive == positive
    elif isinstance(e, (tuple, list)):
        for item in e:
            yield from _polar_atoms(item, positive)
    elif isinstance(e, Truth):
        return
    elif isinstance(e, Not):
        yield from _polar_atoms(e.arg, not positive)
    elif isinstance(e, (And, Or)):
        yield from _polar_atoms(e.left, positive)
        yield from _polar_atoms(e.right, positive)
    elif isinstance(e, Imp):
        yield from _polar_atoms(e.left, not positive)
        yield from _polar_atoms(e.right, positive)
    elif isinstance(e, Iff):
        for side in (e.left, e.right):
            yield from _polar_atoms(side, positive)
            yield from _polar_atoms(side, not positive)
    elif isinstance(e, QUANTIFIERS):
        yield from _polar_atoms(e.body, positive)
    else:
        raise TypeError(f"Not a syntax object: {e!r}")


def _term_vocabulary(term, bound, free_vars, functions):
    if isinstance(term, Var):
        if term.name not in bound:
            free_vars.add(term.name)
        return
    functions.add(term.symbol)
    for arg in term.args:
        _term_vocabulary(arg, bound, free_vars, functions)


def _collect(e, bound, free_vars, functions):
    if isinstance(e, (Var, Fn)):
        _term_vocabulary(e, bound, free_vars, functions)
    elif isinstance(e, Atom):
        for arg in e.args:
            _term_vocabulary(arg, bound, free_vars, functions)
    elif isinstance(e, Literal):
        _collect(e.atom, bound, free_vars, functions)
    elif isinstance(e, Clause):
        for lit in e.literals:
            _collect(lit.atom, bound, free_vars, functions)
    elif isinstance(e, (tuple, list)):
        for item in e:
            _collect(item, bound, free_vars, functions)
    elif isinstance(e, Not):
        _collect(e.arg, bound, free_vars, functions)
    elif isinstance(e, BINARY):
        _collect(e.left, bound, free_vars, functions)
        _collect(e.right, bound, free_vars, functions)
    elif isinstance(e, QUANTIFIERS):
        _collect(e.body, bound | {e.var}, free_vars, functions)


def vocabulary(e):
    """free variables, function symbols, predicate/polarity pairs and
    literal/polarity pairs of a term, literal, clause(s) or formula."""
    free_vars, functions = set(), set()
    _collect(e, frozenset(), free_vars, functions)
    predicates, literals = set(), set()
    if not isinstance(e, (Var, Fn)):
        for atom, positive in _polar_atoms(e, True):
            sign = POSITIVE if positive else NEGATIVE
            predicates.add((atom.symbol, sign))
            literals.add((atom, sign))
    return Vocabulary(frozenset(free_vars), frozenset(functions),
                      frozenset(predicates), frozenset(literals))


def free_vars(e):
    return vocabulary(e).free_vars


def functions_of(e):
    return vocabulary(e).functions


def predicates_of(e):
    return vocabulary(e).predicates


def literals_of(e):
    return vocabulary(e).literals


def symbol_names(e):
    """Every function and predicate name used in e, with its arity and kind."""
    vocab = vocabulary(e)
    return vocab.functions | {symbol for symbol, _ in vocab.predicates}


# Rendering

def _render_args(args):
    return f"({', '.join(render(arg) for arg in args)})" if args else ''


def _needs_parens(f):
    return isinstance(f, BINARY) or isinstance(f, QUANTIFIERS)


def _operand(f):
    text = render(f)
    return f"({text})" if _needs_parens(f) else text


def render(e):
    """Canonical text of a syntax object in the formula grammar."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Fn):
        return e.name + _render_args(e.args)
    if isinstance(e, Truth):
        return '$true' if e.value else '$false'
    if isinstance(e, Atom):
        if e.is_equality:
            return f"{render(e.args[0])} = {render(e.args[1])}"
        return e.pred + _render_args(e.args)
    if isinstance(e, Literal):
        return render(e.as_formula())
    if isinstance(e, Clause):
        if not e.literals:
            return '$false'
        return ' | '.join(render(lit) for lit in e.literals)
    if isinstance(e, Not):
        arg = e.arg
        if isinstance(arg, BINARY) or (isinstance(arg, Atom) and arg.is_equality):
            return f"~({render(arg)})"
        return f"~{render(arg)}"
    if isinstance(e, BINARY):
        return f"{_operand(e.left)} {_OPERATORS[type(e)]} {_operand(e.right)}"
    if isinstance(e, QUANTIFIERS):
        mark = '!' if isinstance(e, Forall) else '?'
        body = render(e.body)
        if isinstance(e.body, BINARY):
            body = f"({body})"
        return f"{mark}[{e.var}]: {body}"
    raise TypeError(f"Cannot render {e!r}")
