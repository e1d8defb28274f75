"""
Lifting of ground interpolants: terms headed by a symbol of fset or gset are
abstracted into variables, existentially quantified for fset and universally
for gset, with every strict subterm quantified before its superterms.
"""
import logging
from dataclasses import dataclass

from django.core.exceptions import ValidationError

from syntax.formulas import (
    Atom, BINARY, Exists, Forall, Not, Var, quantify, render, term_size, vocabulary,
)
from syntax.normalize import fresh_name
from syntax.substitution import Substitution, inverse_apply
from syntax.truthtable import is_propositionally_ground

logger = logging.getLogger(__name__)

VARIABLE_PREFIX = 'V'


def _names(symbols):
    return ', '.join(sorted(str(symbol) for symbol in symbols))


@dataclass(frozen=True)
class LiftingFront:
    f: object
    g: object
    fset: frozenset
    gset: frozenset
    h_ground: object

    def __post_init__(self):
        object.__setattr__(self, 'fset', frozenset(self.fset))
        object.__setattr__(self, 'gset', frozenset(self.gset))
        if self.fset & self.gset:
            raise ValidationError("Lifting symbol sets overlap: %(names)s", code='signature',
                                  params={'names': _names(self.fset & self.gset)})
        clash = vocabulary(self.f).functions & self.gset
        if clash:
            raise ValidationError("First input uses lifted-universal symbols %(names)s", code='signature',
                                  params={'names': _names(clash)})
        clash = vocabulary(self.g).functions & self.fset
        if clash:
            raise ValidationError("Second input uses lifted-existential symbols %(names)s", code='signature',
                                  params={'names': _names(clash)})
        if not is_propositionally_ground(self.h_ground):
            raise ValidationError("Ground interpolant %(h)s is not ground", code='not_ground',
                                  params={'h': render(self.h_ground)})


@dataclass(frozen=True)
class LiftedInterpolant:
    prefix: tuple
    matrix: object
    replaced: tuple

    @property
    def formula(self):
        return quantify(self.prefix, self.matrix)

    def __str__(self):
        return render(self.formula)


def _collect_terms(term, symbols, found):
    if isinstance(term, Var):
        return
    if term.symbol in symbols:
        found.setdefault(term, None)
        return
    for arg in term.args:
        _collect_terms(arg, symbols, found)


def _collect(h, symbols, found):
    if isinstance(h, Atom):
        for arg in h.args:
            _collect_terms(arg, symbols, found)
    elif isinstance(h, Not):
        _collect(h.arg, symbols, found)
    elif isinstance(h, BINARY):
        _collect(h.left, symbols, found)
        _collect(h.right, symbols, found)


def fg_maximal_terms(h, fset, gset):
    """Terms headed by a symbol of fset or gset that occur in h outside any
    other such term, ordered by size and then rendering."""
    found = {}
    _collect(h, frozenset(fset) | frozenset(gset), found)
    return sorted(found, key=lambda term: (term_size(term), render(term)))


def lift(front, avoid=()):
    terms = fg_maximal_terms(front.h_ground, front.fset, front.gset)
    used = set(avoid)
    prefix, replaced = [], []
    for index, term in enumerate(terms, start=1):
        name = fresh_name(f"{VARIABLE_PREFIX}{index}", used)
        used.add(name)
        quantifier = Exists if term.symbol in front.fset else Forall
        prefix.append((quantifier, name))
        replaced.append((name, term))
    matrix = inverse_apply(Substitution(dict(replaced)), front.h_ground)
    lifted = LiftedInterpolant(tuple(prefix), matrix, tuple(replaced))
    logger.info("Lifted prefix: " + (' '.join(
        f"{'?' if q is Exists else '!'}{name}" for q, name in prefix) or 'none'))
    return lifted
