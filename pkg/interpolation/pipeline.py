"""
End-to-end interpolation: the ground pipeline over a proved or supplied
tableau, the first-order pipeline with grounding and lifting, and the
operations built on top of it.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from django.core.exceptions import ValidationError

from syntax.formulas import (
    BINARY, EQUALITY, FALSE, QUANTIFIERS, TRUE, And, Atom, Fn, Not, Symbol, Var,
    conjoin, free_vars, render, vocabulary,
)
from syntax.normalize import axiomatize, check_reserved, prepare_inputs
from syntax.parser import check_arities
from syntax.simplify import simplify_equality
from syntax.substitution import instantiate_free, replace_terms
from syntax.truthtable import is_propositionally_ground
from tableaux.extract import ExtractionOptions, annotate
from tableaux.prover import prove
from tableaux.tableau import (
    F, FRESH_CONSTANT, assign_sides, compute_default_targets, ground, leaf_close, validate, walk,
)

from .config import resolve_config
from .lifting import LiftingFront, lift
from .verification import FREE_CONSTANT_PREFIX, verify

logger = logging.getLogger(__name__)

PROVED = 'proved'
NOT_PROVED = 'not-proved'

DEFINIENS_SUFFIX = '_def'


@dataclass
class InterpolationReport:
    status: str
    limit: str = None
    interpolant: object = None
    ground_interpolant: object = None
    tableau: object = None
    annotations: dict = field(default_factory=dict)
    fset: frozenset = frozenset()
    gset: frozenset = frozenset()
    fresh_constant: str = None
    ambiguous: tuple = ()
    grounding: tuple = ()
    free_constants: dict = field(default_factory=dict)
    lifted: object = None
    verification: object = None
    stats: object = None

    @property
    def proved(self):
        return self.status == PROVED

    def __str__(self):
        if not self.proved:
            return f"not proved ({self.limit})"
        return render(self.interpolant)


def _not_proved(outcome):
    return InterpolationReport(status=NOT_PROVED, limit=outcome.limit)


def _trivial(inputs):
    """Interpolant of inputs whose clause sets already contain the empty clause."""
    if any(not clause.literals for clause in inputs.f_clauses):
        return FALSE
    if any(not clause.literals for clause in inputs.g_clauses):
        return TRUE
    return None


def _needs_sides(tableau):
    return any(node.side is None for _, node, ancestors in walk(tableau.root) if ancestors)


def _extract(tableau, config):
    report = validate(tableau, require_sides=True, permutations=True)
    if not report.ok:
        raise ValidationError("Tableau is not two-sided for the inputs: %(first)s", code='tableau',
                              params={'first': report.first})
    return annotate(tableau.root, ExtractionOptions(simplify=config.simplify, annotate=True))


def _check_ground(f, g):
    for name, e in (('first', f), ('second', g)):
        if not is_propositionally_ground(e):
            raise ValidationError("The %(which)s input is not ground: %(formula)s", code='not_ground',
                                  params={'which': name, 'formula': render(e)})
        if any(symbol.name == EQUALITY for symbol, _ in vocabulary(e).predicates):
            raise ValidationError("Ground interpolation does not handle equality", code='equality')


def cti_ground(f, g, config=None, tableau=None):
    """
    Ground interpolant of f and g. Without a tableau the prover searches for
    one; a supplied tableau must be for the clausal forms of f and ~g, its
    missing sides and targets are filled in according to the configuration.
    """
    config = resolve_config(config)
    check_arities(f, g)
    _check_ground(f, g)
    inputs = prepare_inputs(f, g)

    trivial = _trivial(inputs)
    if trivial is not None:
        logger.info(f"Empty clause among the inputs; interpolant {render(trivial)}")
        return InterpolationReport(status=PROVED, interpolant=trivial, ground_interpolant=trivial)

    ambiguous = ()
    if tableau is None:
        proof = prove(inputs.clauses, config.limits, config.prover, goal=inputs.g_clauses)
        if not proof:
            logger.info(f"No ground interpolant: {proof}")
            return _not_proved(proof)
        sided = assign_sides(leaf_close(proof), inputs, config.side_policy)
        closed, ambiguous = sided.tableau, sided.ambiguous
        closed = compute_default_targets(closed, config.target_policy)
        stats = proof.stats
    else:
        supplied = replace(tableau, for_f=inputs.f_clauses, for_g=inputs.g_clauses)
        check = validate(supplied, permutations=True, require_targets=False)
        if not check.ok:
            raise ValidationError("Tableau is not for the given inputs: %(first)s", code='tableau',
                                  params={'first': check.first})
        closed = leaf_close(supplied)
        if _needs_sides(closed):
            sided = assign_sides(closed, inputs, config.side_policy, permutations=True)
            closed, ambiguous = sided.tableau, sided.ambiguous
        closed = compute_default_targets(closed, config.target_policy, keep_existing=True)
        stats = None

    h, annotations = _extract(closed, config)
    logger.info(f"Ground interpolant {render(h)}")
    result = InterpolationReport(
        status=PROVED, interpolant=h, ground_interpolant=h, tableau=closed,
        annotations=annotations, ambiguous=ambiguous, stats=stats,
    )
    if config.verify:
        result.verification = verify(f, g, h, config)
    return result


def _free_constants(f, g):
    names = sorted(free_vars(f) | free_vars(g))
    used = {symbol.name for symbol in vocabulary((f, g)).functions}
    clash = sorted(name for name in used if name.startswith(FREE_CONSTANT_PREFIX))
    if clash:
        raise ValidationError("Function symbol %(name)s collides with the free-variable constants",
                              code='reserved', params={'name': clash[0]})
    return {name: Fn(f"{FREE_CONSTANT_PREFIX}{name}") for name in names}


def ctif(f, g, config=None):
    """
    First-order Craig-Lyndon interpolant of f and g, for f entailing g.

    Free variables are read as constants for the proof and turned back into
    variables in the interpolant. A failed proof search is reported with
    status not-proved whether or not f entails g.
    """
    config = resolve_config(config)
    check_arities(f, g)
    check_reserved(f, g)
    free_constants = _free_constants(f, g)
    f1, g1 = instantiate_free(f, free_constants), instantiate_free(g, free_constants)
    f2, g2 = axiomatize(f1, g1, enabled=config.equality, placement=config.equality_placement)
    inputs = prepare_inputs(f2, g2)

    f_only = vocabulary(f2).functions - vocabulary(g2).functions
    g_only = vocabulary(g2).functions - vocabulary(f2).functions
    fset = set(inputs.f_skolems) | f_only
    gset = set(inputs.g_skolems) | g_only

    trivial = _trivial(inputs)
    if trivial is not None:
        logger.info(f"Empty clause among the inputs; interpolant {render(trivial)}")
        return InterpolationReport(status=PROVED, interpolant=trivial, ground_interpolant=trivial,
                                   fset=frozenset(fset), gset=frozenset(gset), free_constants=free_constants)

    proof = prove(inputs.clauses, config.limits, config.prover, goal=inputs.g_clauses)
    if not proof:
        logger.info(f"No interpolant: {proof}")
        result = _not_proved(proof)
        result.free_constants = free_constants
        return result

    grounded = ground(leaf_close(proof), config.grounding)
    sided = assign_sides(grounded, inputs, config.side_policy)
    closed = compute_default_targets(sided.tableau, config.target_policy)
    h_ground, annotations = _extract(closed, config)
    if config.equality and config.simplify:
        h_ground = simplify_equality(h_ground)

    if closed.fresh_constant:
        fresh = Symbol(FRESH_CONSTANT, 0)
        (fset if config.c0_side == F else gset).add(fresh)

    front = LiftingFront(f2, g2, fset, gset, h_ground)
    lifted = lift(front, avoid=free_constants)
    h = lifted.formula
    for name, constant in free_constants.items():
        h = replace_terms(h, constant, Var(name))
    logger.info(f"Interpolant {render(h)}")

    result = InterpolationReport(
        status=PROVED,
        interpolant=h,
        ground_interpolant=h_ground,
        tableau=closed,
        annotations=annotations,
        fset=front.fset,
        gset=front.gset,
        fresh_constant=closed.fresh_constant,
        ambiguous=sided.ambiguous,
        grounding=closed.grounding,
        free_constants=free_constants,
        lifted=lifted,
        stats=proof.stats,
    )
    if config.verify:
        result.verification = verify(f, g, h, config)
    return result


def _rename_predicate(f, old, new):
    if isinstance(f, Atom):
        return Atom(new, f.args) if f.pred == old else f
    if isinstance(f, Not):
        return Not(_rename_predicate(f.arg, old, new))
    if isinstance(f, BINARY):
        return type(f)(_rename_predicate(f.left, old, new), _rename_predicate(f.right, old, new))
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.var, _rename_predicate(f.body, old, new))
    return f


def definability_inputs(f, predicate):
    """
    The pair whose interpolants define the predicate named predicate in terms
    of the rest of f: f & p(X1..Xn) and ~(f' & ~p_def(X1..Xn)), where f' is f
    with p renamed to p_def.
    """
    arities = {symbol.arity for symbol, _ in vocabulary(f).predicates if symbol.name == predicate}
    if not arities:
        raise ValidationError("Predicate %(name)s does not occur in the formula", code='signature',
                              params={'name': predicate})
    arity = arities.pop()
    renamed = f"{predicate}{DEFINIENS_SUFFIX}"
    names = {symbol.name for symbol in vocabulary(f).functions}
    names |= {symbol.name for symbol, _ in vocabulary(f).predicates}
    if renamed in names:
        raise ValidationError("Symbol %(name)s is already in use", code='reserved', params={'name': renamed})
    args = tuple(Var(f"X{index}") for index in range(1, arity + 1))
    taken = free_vars(f) & {arg.name for arg in args}
    if taken:
        raise ValidationError("Variables %(names)s are free in the formula", code='free_variables',
                              params={'names': ', '.join(sorted(taken))})
    first = And(f, Atom(predicate, args))
    second = Not(And(_rename_predicate(f, predicate, renamed), Not(Atom(renamed, args))))
    return first, second


def definiens(f, predicate, config=None):
    """Explicit definition of a predicate implicitly defined by f, as an
    interpolant with the free variables X1..Xn for the predicate's arguments."""
    first, second = definability_inputs(f, predicate)
    logger.info(f"Looking for a definiens of {predicate}")
    return ctif(first, second, config)


class SymmetricInterpolation(NamedTuple):
    status: str
    interpolants: tuple
    reports: tuple


def symmetric_interpolants(formulas, config=None):
    """
    Interpolants H1..Hn of an unsatisfiable conjunction F1 & ... & Fn, each Hi
    computed for Fi and ~(H1 & ... & Hi-1 & Fi+1 & ... & Fn).
    """
    formulas = list(formulas)
    if len(formulas) < 2:
        raise ValueError("Symmetric interpolation needs at least two formulas")
    config = resolve_config(config)
    interpolants, reports = [], []
    for index, formula in enumerate(formulas):
        others = interpolants + formulas[index + 1:]
        report = ctif(formula, Not(conjoin(others)), config)
        reports.append(report)
        if not report.proved:
            logger.info(f"Symmetric interpolation stopped at input {index + 1}: {report.limit}")
            return SymmetricInterpolation(NOT_PROVED, tuple(interpolants), tuple(reports))
        interpolants.append(report.interpolant)
    return SymmetricInterpolation(PROVED, tuple(interpolants), tuple(reports))
