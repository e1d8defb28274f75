"""
Truth-table oracle for ground, quantifier-free formulas.

Each distinct ground atom is one propositional variable. A formula is
evaluated once over all assignments at the same time: its value is an integer
whose bit i is the truth value under assignment i.
"""
from django.conf import settings
from django.core.exceptions import ValidationError

from .formulas import (
    BINARY, QUANTIFIERS, And, Atom, Clause, Iff, Imp, Literal, Not, Or, Truth,
    atoms_of, is_ground_term, render,
)

DEFAULT_ATOM_BUDGET = 20


def _atom_budget(budget):
    if budget is not None:
        return budget
    return getattr(settings, 'IPOL_TRUTH_TABLE_ATOMS', DEFAULT_ATOM_BUDGET)


class TruthTable:
    """All assignments over a fixed, ordered list of ground atoms."""

    def __init__(self, atoms, budget=None):
        self.atoms = sorted(set(atoms), key=render)
        limit = _atom_budget(budget)
        if len(self.atoms) > limit:
            raise ValidationError(
                "Truth table over %(count)s atoms exceeds the budget of %(limit)s",
                code='budget', params={'count': len(self.atoms), 'limit': limit},
            )
        for atom in self.atoms:
            if not all(is_ground_term(arg) for arg in atom.args):
                raise ValidationError("Atom %(atom)s is not ground", code='not_ground',
                                      params={'atom': render(atom)})
        self.rows = 1 << len(self.atoms)
        self.full = (1 << self.rows) - 1
        self._masks = {atom: self._column(index) for index, atom in enumerate(self.atoms)}

    @classmethod
    def over(cls, *expressions, budget=None):
        atoms = []
        for e in expressions:
            atoms.extend(atoms_of(e))
        return cls(atoms, budget=budget)

    def _column(self, index):
        block = 1 << index
        width = block << 1
        pattern = ((1 << block) - 1) << block
        repeat = self.full // ((1 << width) - 1)
        return pattern * repeat

    def mask(self, e):
        if isinstance(e, Truth):
            return self.full if e.value else 0
        if isinstance(e, Atom):
            return self._masks[e]
        if isinstance(e, Literal):
            column = self._masks[e.atom]
            return column if e.positive else self.full ^ column
        if isinstance(e, Clause):
            result = 0
            for lit in e.literals:
                result |= self.mask(lit)
            return result
        if isinstance(e, (tuple, list)):
            result = self.full
            for item in e:
                result &= self.mask(item)
            return result
        if isinstance(e, Not):
            return self.full ^ self.mask(e.arg)
        if isinstance(e, And):
            return self.mask(e.left) & self.mask(e.right)
        if isinstance(e, Or):
            return self.mask(e.left) | self.mask(e.right)
        if isinstance(e, Imp):
            return (self.full ^ self.mask(e.left)) | self.mask(e.right)
        if isinstance(e, Iff):
            return self.full ^ (self.mask(e.left) ^ self.mask(e.right))
        if isinstance(e, QUANTIFIERS):
            raise ValidationError("Truth tables need quantifier-free input", code='not_ground')
        raise TypeError(f"Cannot evaluate {e!r}")

    def entails(self, f, g):
        return self.mask(f) & (self.full ^ self.mask(g)) == 0

    def models(self, e):
        """Satisfying assignments of e as dicts atom -> bool, in row order."""
        value = self.mask(e)
        for row in range(self.rows):
            if value >> row & 1:
                yield {atom: bool(row >> index & 1) for index, atom in enumerate(self.atoms)}


def ground_entails(f, g, budget=None):
    """Decide f |= g for ground formulas by truth table."""
    return TruthTable.over(f, g, budget=budget).entails(f, g)


def equivalent(f, g, budget=None):
    table = TruthTable.over(f, g, budget=budget)
    return table.mask(f) == table.mask(g)


def satisfiable(e, budget=None):
    return TruthTable.over(e, budget=budget).mask(e) != 0


def first_model(e, budget=None):
    return next(TruthTable.over(e, budget=budget).models(e), None)


def is_propositionally_ground(e):
    """Quantifier-free and variable-free."""
    if isinstance(e, QUANTIFIERS):
        return False
    if isinstance(e, Not):
        return is_propositionally_ground(e.arg)
    if isinstance(e, BINARY):
        return is_propositionally_ground(e.left) and is_propositionally_ground(e.right)
    if isinstance(e, Atom):
        return all(is_ground_term(arg) for arg in e.args)
    if isinstance(e, Literal):
        return is_propositionally_ground(e.atom)
    if isinstance(e, Clause):
        return all(is_propositionally_ground(lit) for lit in e.literals)
    if isinstance(e, (tuple, list)):
        return all(is_propositionally_ground(item) for item in e)
    return isinstance(e, Truth)
