"""
Small propositional tree-resolution engine producing test inputs for the
simulations: random unsatisfiable clause-set pairs and refutations of them.

Refutations are read off a splitting search without learning: every split
on an atom resolves the refutations of its two branches upon that atom, so
the result is a tree, never a dag.
"""
import logging
from typing import NamedTuple

from syntax.formulas import Atom, Clause, Literal, render
from syntax.truthtable import TruthTable

from .deduction import DTNode, resolvent

logger = logging.getLogger(__name__)

MAX_ATOMS = 8
ATOM_NAMES = 'abcdefgh'
MAX_ATTEMPTS = 1000


class UnsatPair(NamedTuple):
    f_clauses: tuple
    g_clauses: tuple


def _falsified(clause, assignment):
    return all(assignment.get(lit.atom) is (not lit.positive) for lit in clause.literals)


def refute(f_clauses, g_clauses):
    """Tree-resolution refutation of the clauses as a DTNode, or None if they are satisfiable."""
    clauses = []
    for clause in tuple(f_clauses) + tuple(g_clauses):
        if clause not in clauses:
            clauses.append(clause)
    atoms = sorted({lit.atom for clause in clauses for lit in clause.literals}, key=render)
    if len(atoms) > MAX_ATOMS:
        raise ValueError(f"Refutation engine handles at most {MAX_ATOMS} atoms, got {len(atoms)}")

    def search(assignment):
        for clause in clauses:
            if _falsified(clause, assignment):
                return DTNode(clause)
        atom = next((atom for atom in atoms if atom not in assignment), None)
        if atom is None:
            return None
        when_true = search({**assignment, atom: True})
        if when_true is None:
            return None
        if Literal(atom, False) not in when_true.clause.literals:
            return when_true
        when_false = search({**assignment, atom: False})
        if when_false is None:
            return None
        if Literal(atom, True) not in when_false.clause.literals:
            return when_false
        clause = resolvent(when_false.clause, when_true.clause, atom)
        return DTNode(clause, atom, (when_false, when_true))

    return search({})


def _random_clause(rng, atoms, max_width):
    chosen = rng.sample(atoms, rng.randint(1, min(max_width, len(atoms))))
    return Clause(tuple(Literal(atom, rng.random() < 0.5) for atom in chosen))


def _random_clauses(rng, atoms, count, max_width):
    clauses, seen = [], set()
    for _ in range(count):
        clause = _random_clause(rng, atoms, max_width)
        if frozenset(clause.literals) not in seen:
            seen.add(frozenset(clause.literals))
            clauses.append(clause)
    return clauses


def random_unsat_pair(rng, atom_count=6, max_clauses=8, max_width=3):
    """
    Random pair of clause sets, jointly unsatisfiable, with no clause in
    common. F draws from the first two thirds of the atoms, G from the last
    two thirds, so both colored and transparent atoms occur.
    """
    if not 2 <= atom_count <= MAX_ATOMS:
        raise ValueError(f"atom_count must be between 2 and {MAX_ATOMS}")
    atoms = [Atom(name) for name in ATOM_NAMES[:atom_count]]
    f_atoms = atoms[:max(1, atom_count * 2 // 3)]
    g_atoms = atoms[atom_count // 3:]
    for _ in range(MAX_ATTEMPTS):
        f_clauses = _random_clauses(rng, f_atoms, rng.randint(1, max_clauses), max_width)
        f_keys = {frozenset(clause.literals) for clause in f_clauses}
        g_clauses = [
            clause for clause in _random_clauses(rng, g_atoms, rng.randint(1, max_clauses), max_width)
            if frozenset(clause.literals) not in f_keys
        ]
        if not g_clauses:
            continue
        table = TruthTable.over(f_clauses, g_clauses)
        if table.mask((tuple(f_clauses), tuple(g_clauses))) == 0:
            return UnsatPair(tuple(f_clauses), tuple(g_clauses))
    raise ValueError(f"No unsatisfiable pair within {MAX_ATTEMPTS} attempts")
