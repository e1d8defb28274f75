"""
Connection tableau prover with rigid variables.

Search starts from a clause chosen by the start-clause policy and closes the
open branches one literal at a time: either by reduction (unifying the
literal with the complement of an ancestor) or by extension (attaching a
renamed copy of an input clause one of whose literals unifies with the
complement). Bindings are global to the tableau, backtracking is
chronological and the depth bound grows by one per round.
"""
import logging
import time
from dataclasses import dataclass, replace

from django.conf import settings

from syntax.formulas import Atom, Fn, Literal, Var, complement
from syntax.substitution import resolve_literal, unify_atoms

from .tableau import Tableau, TabNode

logger = logging.getLogger(__name__)

FROM_G = 'from-G'
FROM_F = 'from-F'
NEGATIVE_CLAUSES = 'negative-clauses'
ALL_CLAUSES = 'all'
START_POLICIES = (FROM_G, FROM_F, NEGATIVE_CLAUSES, ALL_CLAUSES)

MAX_DEPTH = 'max_depth'
TIMEOUT = 'timeout'
MAX_INFERENCES = 'max_inferences'


@dataclass(frozen=True)
class ProofLimits:
    max_depth: int = 12
    timeout_ms: int = 10000
    max_inferences: int = 2000000

    def __post_init__(self):
        if min(self.max_depth, self.timeout_ms, self.max_inferences) < 1:
            raise ValueError(f"Proof limits must be positive: {self}")

    @classmethod
    def from_settings(cls):
        return cls(
            max_depth=getattr(settings, 'IPOL_MAX_DEPTH', cls.max_depth),
            timeout_ms=getattr(settings, 'IPOL_TIMEOUT_MS', cls.timeout_ms),
            max_inferences=getattr(settings, 'IPOL_MAX_INFERENCES', cls.max_inferences),
        )


@dataclass(frozen=True)
class ProverPolicy:
    start_clauses: str = FROM_G
    use_regularity: bool = True

    def __post_init__(self):
        if self.start_clauses not in START_POLICIES:
            raise ValueError(f"Unknown start-clause policy {self.start_clauses!r}")

    @classmethod
    def from_settings(cls):
        return cls(
            start_clauses=getattr(settings, 'IPOL_START_CLAUSES', FROM_G),
            use_regularity=getattr(settings, 'IPOL_REGULARITY', True),
        )


@dataclass(frozen=True)
class ProofStats:
    depth: int
    inferences: int
    elapsed_ms: int


@dataclass(frozen=True)
class NotProved:
    """Outcome of an unsuccessful search; falsy so callers can test `if result:`."""
    limit: str
    depth: int = 0
    inferences: int = 0

    def __bool__(self):
        return False

    def __str__(self):
        return f"not proved ({self.limit} exhausted at depth {self.depth}, {self.inferences} inferences)"


class _LimitReached(Exception):
    def __init__(self, limit):
        super().__init__(limit)
        self.limit = limit


class ConnectionProver:
    """One proof attempt; instances are not shared between attempts."""

    def __init__(self, clauses, limits, policy, goal=()):
        self.clauses = list(dict.fromkeys(clauses))
        self.goal = set(goal)
        self.limits = limits
        self.policy = policy
        self.inferences = 0
        self.copies = 0
        self.deadline = None
        self.depth_cut = False

    def start_clauses(self):
        if self.policy.start_clauses == FROM_G:
            preferred = [c for c in self.clauses if c in self.goal]
        elif self.policy.start_clauses == FROM_F:
            preferred = [c for c in self.clauses if c not in self.goal]
        elif self.policy.start_clauses == NEGATIVE_CLAUSES:
            preferred = [c for c in self.clauses if all(not lit.positive for lit in c.literals)]
        else:
            preferred = list(self.clauses)
        return preferred + [c for c in self.clauses if c not in preferred]

    def rename(self, clause):
        self.copies += 1
        suffix = f"_{self.copies}"
        renaming = {}

        def term(t):
            if isinstance(t, Var):
                return renaming.setdefault(t.name, Var(t.name + suffix))
            if not t.args:
                return t
            return Fn(t.name, tuple(term(arg) for arg in t.args))

        return tuple(
            Literal(Atom(lit.atom.pred, tuple(term(arg) for arg in lit.atom.args)), lit.positive)
            for lit in clause.literals
        )

    def _tick(self):
        self.inferences += 1
        if self.inferences > self.limits.max_inferences:
            raise _LimitReached(MAX_INFERENCES)
        if self.inferences % 256 == 0 and time.monotonic() > self.deadline:
            raise _LimitReached(TIMEOUT)

    def _close_all(self, items, path, limit, bindings):
        """Close the open literals among items, which are the children of the
        node at the end of path; prebuilt nodes are passed through."""
        if not items:
            yield bindings, ()
            return
        head, tail = items[0], items[1:]
        if isinstance(head, TabNode):
            for closed, rest in self._close_all(tail, path, limit, bindings):
                yield closed, (head,) + rest
            return
        for first_bindings, node in self._close_literal(head, path, limit, bindings):
            for closed, rest in self._close_all(tail, path, limit, first_bindings):
                yield closed, (node,) + rest

    def _close_literal(self, lit, path, limit, bindings):
        depth = len(path) + 1
        if self.policy.use_regularity:
            current = resolve_literal(lit, bindings)
            if any(resolve_literal(ancestor, bindings) == current for ancestor in path):
                return

        # reduction, nearest ancestor first
        for index in range(len(path) - 1, -1, -1):
            ancestor = path[index]
            if ancestor.positive == lit.positive:
                continue
            self._tick()
            unified = unify_atoms(lit.atom, ancestor.atom, bindings)
            if unified is not None:
                yield unified, TabNode(lit, target=index + 1)

        # extension
        if depth + 1 > limit:
            self.depth_cut = True
            return
        wanted = complement(lit)
        inner = path + (lit,)
        for clause in self.clauses:
            for position, candidate in enumerate(clause.literals):
                if candidate.positive != wanted.positive or candidate.atom.pred != wanted.atom.pred:
                    continue
                if len(candidate.atom.args) != len(wanted.atom.args):
                    continue
                self._tick()
                copy = self.rename(clause)
                unified = unify_atoms(wanted.atom, copy[position].atom, bindings)
                if unified is None:
                    continue
                items = list(copy)
                items[position] = TabNode(copy[position], target=depth)
                for closed, children in self._close_all(tuple(items), inner, limit, unified):
                    yield closed, TabNode(lit, children=children)

    def _search(self, limit):
        for clause in self.start_clauses():
            self._tick()
            copy = self.rename(clause)
            for bindings, children in self._close_all(copy, (), limit, {}):
                return bindings, TabNode(children=children)
        return None

    def run(self):
        started = time.monotonic()
        self.deadline = started + self.limits.timeout_ms / 1000
        if any(not clause.literals for clause in self.clauses):
            return {}, TabNode(), 0
        if not self.clauses:
            return NotProved(MAX_DEPTH)
        depth = 0
        try:
            for depth in range(1, self.limits.max_depth + 1):
                self.depth_cut = False
                logger.debug(f"Deepening to {depth} after {self.inferences} inferences")
                found = self._search(depth)
                if found is not None:
                    bindings, root = found
                    return bindings, root, depth
                if not self.depth_cut:
                    logger.debug("Search space exhausted below the depth bound")
                    break
        except _LimitReached as exc:
            logger.warning(f"Prover stopped: {exc.limit} limit reached at depth {depth}")
            return NotProved(exc.limit, depth, self.inferences)
        except RecursionError:
            logger.warning(f"Prover stopped: recursion limit reached at depth {depth}")
            return NotProved(MAX_DEPTH, depth, self.inferences)
        return NotProved(MAX_DEPTH, depth, self.inferences)


def _resolve_tree(node, bindings):
    return replace(
        node,
        literal=None if node.literal is None else resolve_literal(node.literal, bindings),
        children=tuple(_resolve_tree(child, bindings) for child in node.children),
    )


def prove(cf, limits=None, policy=None, goal=()):
    """
    Search for a closed clausal tableau for the clause sequence cf.

    Clauses listed in goal form the G part of the returned tableau and the
    remaining clauses its F part. The result is a leaf-closed Tableau whose
    leaves carry targets, or a NotProved value naming the exhausted limit.
    """
    limits = limits or ProofLimits.from_settings()
    policy = policy or ProverPolicy.from_settings()
    cf = tuple(cf)
    goal = tuple(goal)
    started = time.monotonic()
    prover = ConnectionProver(cf, limits, policy, goal)
    outcome = prover.run()
    if isinstance(outcome, NotProved):
        return outcome

    bindings, root, depth = outcome
    stats = ProofStats(depth, prover.inferences, int((time.monotonic() - started) * 1000))
    logger.info(f"Proof found at depth {depth} after {prover.inferences} inferences ({stats.elapsed_ms} ms)")
    goal_set = set(goal)
    return Tableau(
        root=_resolve_tree(root, bindings),
        for_f=tuple(dict.fromkeys(c for c in cf if c not in goal_set)),
        for_g=tuple(dict.fromkeys(goal)),
        stats=stats,
    )
