"""
Substitutions, unification and matching.

`Substitution` is the immutable value used across the pipeline. The prover
works on plain triangular binding dicts through `unify_terms` and `resolve`,
which avoids building a new Substitution per inference.
"""
from .formulas import (
    BINARY, QUANTIFIERS, Atom, Clause, Fn, Literal, Not, Truth, Var,
    is_ground_term, render, term_size,
)


class Substitution:
    """Finite map from variable names to terms. Identity bindings are dropped."""

    __slots__ = ('_bindings',)

    def __init__(self, bindings=None):
        items = {}
        for name, term in dict(bindings or {}).items():
            if isinstance(name, Var):
                name = name.name
            if term != Var(name):
                items[name] = term
        object.__setattr__(self, '_bindings', items)

    def __setattr__(self, key, value):
        raise AttributeError("Substitution is immutable")

    @property
    def bindings(self):
        return dict(self._bindings)

    @property
    def dom(self):
        return frozenset(self._bindings)

    @property
    def rng(self):
        return frozenset(self._bindings.values())

    def get(self, name, default=None):
        return self._bindings.get(name, default)

    def items(self):
        return self._bindings.items()

    def is_ground(self):
        return all(is_ground_term(term) for term in self._bindings.values())

    def is_injective(self):
        return len(set(self._bindings.values())) == len(self._bindings)

    def restrict(self, names):
        return Substitution({k: v for k, v in self._bindings.items() if k in names})

    def __call__(self, e):
        return apply(self, e)

    def __eq__(self, other):
        return isinstance(other, Substitution) and self._bindings == other._bindings

    def __hash__(self):
        return hash(frozenset(self._bindings.items()))

    def __len__(self):
        return len(self._bindings)

    def __bool__(self):
        return bool(self._bindings)

    def __repr__(self):
        inner = ', '.join(f"{k}->{render(v)}" for k, v in sorted(self._bindings.items()))
        return f"Substitution({{{inner}}})"


EMPTY = Substitution()


def _apply_term(bindings, term):
    if isinstance(term, Var):
        return bindings.get(term.name, term)
    if not term.args:
        return term
    return Fn(term.name, tuple(_apply_term(bindings, arg) for arg in term.args))


def _apply(bindings, e):
    if isinstance(e, (Var, Fn)):
        return _apply_term(bindings, e)
    if isinstance(e, Atom):
        return Atom(e.pred, tuple(_apply_term(bindings, arg) for arg in e.args))
    if isinstance(e, Literal):
        return Literal(_apply(bindings, e.atom), e.positive)
    if isinstance(e, Clause):
        return Clause(tuple(_apply(bindings, lit) for lit in e.literals))
    if isinstance(e, (tuple, list)):
        return tuple(_apply(bindings, item) for item in e)
    if isinstance(e, Truth):
        return e
    if isinstance(e, Not):
        return Not(_apply(bindings, e.arg))
    if isinstance(e, BINARY):
        return type(e)(_apply(bindings, e.left), _apply(bindings, e.right))
    if isinstance(e, QUANTIFIERS):
        raise ValueError("Substitutions apply to quantifier-free expressions only")
    raise TypeError(f"Cannot apply a substitution to {e!r}")


def apply(s, e):
    """Simultaneous replacement of the variables in dom(s)."""
    if not s:
        return e
    return _apply(s._bindings, e)


def compose(s, g):
    """The substitution that applies s first and then g."""
    bindings = {name: _apply_term(g._bindings, term) for name, term in s.items()}
    for name, term in g.items():
        bindings.setdefault(name, term)
    return Substitution(bindings)


def replacement_order(s):
    """Range entries ordered so that superterms precede their strict subterms."""
    return sorted(s.items(), key=lambda item: (-term_size(item[1]), render(item[1])))


def _replace_term(term, old, new):
    if term == old:
        return new
    if isinstance(term, Fn) and term.args:
        return Fn(term.name, tuple(_replace_term(arg, old, new) for arg in term.args))
    return term


def replace_terms(e, old, new):
    """Replace every occurrence of the term old by new; quantifiers are traversed
    and the caller is responsible for new not being captured."""
    if isinstance(e, (Var, Fn)):
        return _replace_term(e, old, new)
    if isinstance(e, Atom):
        return Atom(e.pred, tuple(_replace_term(arg, old, new) for arg in e.args))
    if isinstance(e, Literal):
        return Literal(replace_terms(e.atom, old, new), e.positive)
    if isinstance(e, Clause):
        return Clause(tuple(replace_terms(lit, old, new) for lit in e.literals))
    if isinstance(e, Truth):
        return e
    if isinstance(e, Not):
        return Not(replace_terms(e.arg, old, new))
    if isinstance(e, BINARY):
        return type(e)(replace_terms(e.left, old, new), replace_terms(e.right, old, new))
    if isinstance(e, QUANTIFIERS):
        return type(e)(e.var, replace_terms(e.body, old, new))
    raise TypeError(f"Cannot replace terms in {e!r}")


def inverse_apply(s, e):
    """
    Replace the rng(s)-maximal occurrences of range terms in e by the variables
    mapped to them. Range terms are processed largest first, so a superterm is
    always replaced before any of its strict subterms.
    """
    if not s.is_injective():
        raise ValueError(f"Inverse application needs an injective substitution: {s!r}")
    if isinstance(e, QUANTIFIERS) or _has_quantifier(e):
        raise ValueError("Inverse application works on quantifier-free expressions only")
    for name, term in replacement_order(s):
        e = replace_terms(e, term, Var(name))
    return e


def _has_quantifier(e):
    if isinstance(e, QUANTIFIERS):
        return True
    if isinstance(e, Not):
        return _has_quantifier(e.arg)
    if isinstance(e, BINARY):
        return _has_quantifier(e.left) or _has_quantifier(e.right)
    return False


def instantiate_free(f, mapping):
    """Replace free occurrences of the variables in mapping by (ground) terms."""
    if isinstance(f, (Var, Fn)):
        return _apply_term(mapping, f)
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(_apply_term(mapping, arg) for arg in f.args))
    if isinstance(f, Truth):
        return f
    if isinstance(f, Not):
        return Not(instantiate_free(f.arg, mapping))
    if isinstance(f, BINARY):
        return type(f)(instantiate_free(f.left, mapping), instantiate_free(f.right, mapping))
    if isinstance(f, QUANTIFIERS):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        return type(f)(f.var, instantiate_free(f.body, inner))
    raise TypeError(f"Cannot instantiate {f!r}")


# Unification over triangular bindings

def walk(term, bindings):
    while isinstance(term, Var) and term.name in bindings:
        term = bindings[term.name]
    return term


def resolve(term, bindings):
    """Fully apply triangular bindings to a term."""
    term = walk(term, bindings)
    if isinstance(term, Var) or not term.args:
        return term
    return Fn(term.name, tuple(resolve(arg, bindings) for arg in term.args))


def resolve_literal(lit, bindings):
    atom = lit.atom
    return Literal(Atom(atom.pred, tuple(resolve(arg, bindings) for arg in atom.args)), lit.positive)


def _occurs(name, term, bindings):
    term = walk(term, bindings)
    if isinstance(term, Var):
        return term.name == name
    return any(_occurs(name, arg, bindings) for arg in term.args)


def _unify(s, t, bindings):
    s = walk(s, bindings)
    t = walk(t, bindings)
    if s == t:
        return True
    if isinstance(s, Var):
        if _occurs(s.name, t, bindings):
            return False
        bindings[s.name] = t
        return True
    if isinstance(t, Var):
        return _unify(t, s, bindings)
    if s.name != t.name or len(s.args) != len(t.args):
        return False
    return all(_unify(a, b, bindings) for a, b in zip(s.args, t.args))


def unify_terms(s, t, bindings=None):
    """Extend triangular bindings so that s and t become equal; None on clash."""
    extended = dict(bindings or {})
    return extended if _unify(s, t, extended) else None


def unify_atoms(a, b, bindings=None):
    if a.pred != b.pred or len(a.args) != len(b.args):
        return None
    extended = dict(bindings or {})
    for x, y in zip(a.args, b.args):
        if not _unify(x, y, extended):
            return None
    return extended


def unify(s, t):
    """Most general unifier of two terms as an idempotent Substitution, or None."""
    bindings = unify_terms(s, t)
    if bindings is None:
        return None
    return Substitution({name: resolve(Var(name), bindings) for name in bindings})


# One-way matching: only pattern variables are bound, target terms stay fixed

def match_term(pattern, target, bindings):
    if isinstance(pattern, Var):
        bound = bindings.get(pattern.name)
        if bound is None:
            bindings[pattern.name] = target
            return True
        return bound == target
    if not isinstance(target, Fn) or pattern.name != target.name or len(pattern.args) != len(target.args):
        return False
    return all(match_term(p, t, bindings) for p, t in zip(pattern.args, target.args))


def match_literal(pattern, target, bindings):
    if pattern.positive != target.positive or pattern.atom.pred != target.atom.pred:
        return False
    if len(pattern.atom.args) != len(target.atom.args):
        return False
    return all(match_term(p, t, bindings) for p, t in zip(pattern.atom.args, target.atom.args))


def is_instance(target, pattern, permutations=False):
    """Whether clause target is an instance of clause pattern under a single
    matcher; literal order must agree unless permutations is set."""
    if len(target.literals) != len(pattern.literals):
        return False
    if not permutations:
        bindings = {}
        return all(match_literal(p, t, bindings)
                   for p, t in zip(pattern.literals, target.literals))
    return _match_permuted(list(pattern.literals), list(target.literals), {})


def _match_permuted(patterns, targets, bindings):
    if not patterns:
        return True
    first, rest = patterns[0], patterns[1:]
    for index, target in enumerate(targets):
        attempt = dict(bindings)
        if match_literal(first, target, attempt):
            if _match_permuted(rest, targets[:index] + targets[index + 1:], attempt):
                return True
    return False
