"""
Checking interpolants: vocabulary conditions by inspection, entailments by
truth table on ground input and by refutation otherwise.
"""
import logging
from dataclasses import dataclass, field
from typing import NamedTuple

from django.core.exceptions import ValidationError
from django.template.loader import render_to_string

from syntax.formulas import Fn, free_vars, render, vocabulary
from syntax.normalize import axiomatize, prepare_inputs
from syntax.substitution import instantiate_free
from syntax.truthtable import ground_entails, is_propositionally_ground
from tableaux.prover import prove

from .config import resolve_config

logger = logging.getLogger(__name__)

PROVED = 'proved'
NOT_PROVED = 'not-proved'
ORACLE_PASS = 'oracle-pass'
ORACLE_FAIL = 'oracle-fail'

TRUTH_TABLE = 'truth-table'
REFUTATION = 'refutation'

FREE_CONSTANT_PREFIX = 'fv_'


class SyntacticCheck(NamedTuple):
    lyndon_ok: bool
    craig_ok: bool
    violations: list


@dataclass
class VerificationReport:
    lyndon_ok: bool = True
    craig_ok: bool = True
    violations: list = field(default_factory=list)
    semantic_left: str = NOT_PROVED
    semantic_right: str = NOT_PROVED
    method: str = REFUTATION

    @property
    def syntactic_ok(self):
        return self.lyndon_ok

    @property
    def semantic_ok(self):
        confirmed = (PROVED, ORACLE_PASS)
        return self.semantic_left in confirmed and self.semantic_right in confirmed

    @property
    def confirmed(self):
        return self.syntactic_ok and self.semantic_ok

    @property
    def failed(self):
        """A definite negative verdict; not-proved checks are inconclusive, not failures."""
        return not self.syntactic_ok or ORACLE_FAIL in (self.semantic_left, self.semantic_right)

    @property
    def verdict(self):
        if self.failed:
            return 'failed'
        return 'confirmed' if self.confirmed else 'inconclusive'

    def render(self, **context):
        return render_to_string('interpolation/verification_report.txt', {'report': self, **context})


def _polarity(sign):
    return 'positive' if sign == '+' else 'negative'


def check_syntactic(f, g, h):
    """
    Lyndon conditions: every predicate of h occurs with the same polarity in
    both f and g, every function symbol and free variable of h occurs in both.
    The Craig status drops the polarity requirement.
    """
    vf, vg, vh = vocabulary(f), vocabulary(g), vocabulary(h)
    violations = []
    lyndon_ok = craig_ok = True

    shared_predicates = vf.predicates & vg.predicates
    shared_names = vf.predicate_names & vg.predicate_names
    for symbol, sign in sorted(vh.predicates - shared_predicates, key=lambda item: (item[0].name, item[1])):
        lyndon_ok = False
        violations.append(f"predicate {symbol} occurs with {_polarity(sign)} polarity "
                          f"but not so in both inputs")
        if symbol.name not in shared_names:
            craig_ok = False

    for symbol in sorted(vh.functions - (vf.functions & vg.functions), key=lambda s: s.name):
        lyndon_ok = craig_ok = False
        violations.append(f"function {symbol} does not occur in both inputs")

    for name in sorted(vh.free_vars - (vf.free_vars & vg.free_vars)):
        lyndon_ok = craig_ok = False
        violations.append(f"free variable {name} does not occur free in both inputs")

    return SyntacticCheck(lyndon_ok, craig_ok, violations)


def close_free_variables(*formulas):
    """Replace the free variables of the formulas by fv_ constants, consistently across them."""
    names = set()
    for f in formulas:
        names |= free_vars(f)
    mapping = {name: Fn(f"{FREE_CONSTANT_PREFIX}{name}") for name in sorted(names)}
    return [instantiate_free(f, mapping) for f in formulas], mapping


def refutes(f, g, limits=None, policy=None):
    """Whether the prover refutes f & ~g within the limits."""
    inputs = prepare_inputs(f, g)
    if any(not clause.literals for clause in inputs.clauses):
        return True
    return bool(prove(inputs.f_clauses + inputs.g_clauses, limits, policy, goal=inputs.g_clauses))


def check_semantic_fo(f, g, h, limits=None, policy=None, budget=None):
    """(left, right, method) for f |= h and h |= g."""
    if all(is_propositionally_ground(e) for e in (f, g, h)):
        try:
            left = ORACLE_PASS if ground_entails(f, h, budget) else ORACLE_FAIL
            right = ORACLE_PASS if ground_entails(h, g, budget) else ORACLE_FAIL
            return left, right, TRUTH_TABLE
        except ValidationError as exc:
            if exc.code != 'budget':
                raise
            logger.warning(f"Truth table too large, falling back to refutation: {exc.messages[0]}")

    (f, g, h), _ = close_free_variables(f, g, h)
    left = PROVED if refutes(f, h, limits, policy) else NOT_PROVED
    right = PROVED if refutes(h, g, limits, policy) else NOT_PROVED
    return left, right, REFUTATION


def verify(f, g, h, config=None):
    config = resolve_config(config)
    f, g = axiomatize(f, g, enabled=config.equality, placement=config.equality_placement)
    syntactic = check_syntactic(f, g, h)
    left, right, method = check_semantic_fo(f, g, h, config.limits, config.prover, config.truth_table_atoms)
    report = VerificationReport(
        lyndon_ok=syntactic.lyndon_ok,
        craig_ok=syntactic.craig_ok,
        violations=syntactic.violations,
        semantic_left=left,
        semantic_right=right,
        method=method,
    )
    logger.info(f"Verification of {render(h)}: {report.verdict} ({method})")
    return report

