"""
Formula grammar.

    formula := "$true" | "$false" | atom | "~" formula | formula "&" formula
             | formula "|" formula | formula "=>" formula | formula "<=>" formula
             | ("!"|"?") "[" Var ("," Var)* "]" ":" formula | "(" formula ")"

Precedence from tightest: "~" and quantifiers, "&", "|", "=>", "<=>".
"&" and "|" associate to the left, "=>" and "<=>" to the right. With equality
mode on, "t1 = t2" is an atom of the reserved predicate "=". Text after "%"
up to the end of the line is a comment.
"""
import logging
from functools import lru_cache

import pyparsing as pp
from django.core.exceptions import ValidationError

from .formulas import (
    EQUALITY, FALSE, TRUE, And, Atom, Clause, Exists, Fn, Forall, Iff, Imp,
    Literal, Not, Or, Var, vocabulary,
)

logger = logging.getLogger(__name__)

VARIABLE_PATTERN = r'[A-Z_][A-Za-z0-9_]*'
NAME_PATTERN = r'[a-z][A-Za-z0-9_]*'


def _make_fn(tokens):
    args = tuple(tokens[1]) if len(tokens) > 1 else ()
    return Fn(tokens[0], args)


def _make_atom(tokens):
    args = tuple(tokens[1]) if len(tokens) > 1 else ()
    return Atom(tokens[0], args)


def _make_quantified(tokens):
    mark, names, body = tokens[0], list(tokens[1]), tokens[2]
    quantifier = Forall if mark == '!' else Exists
    for name in reversed(names):
        body = quantifier(name, body)
    return body


def _fold_left(cls):
    def action(tokens):
        result = tokens[0]
        for item in tokens[1:]:
            result = cls(result, item)
        return result
    return action


def _fold_right(cls):
    def action(tokens):
        return cls(tokens[0], tokens[1]) if len(tokens) > 1 else tokens[0]
    return action


@lru_cache(maxsize=None)
def _grammar(equality):
    LPAR, RPAR, LBRACK, RBRACK, COLON = map(pp.Suppress, '()[]:')

    variable_name = pp.Regex(VARIABLE_PATTERN)
    name = pp.Regex(NAME_PATTERN)

    term = pp.Forward()
    arguments = LPAR + pp.Group(pp.DelimitedList(term)) + RPAR
    term <<= (variable_name.copy().set_parse_action(lambda t: Var(t[0]))
              | (name + pp.Opt(arguments)).set_parse_action(_make_fn))

    truth = (pp.Keyword('$true').set_parse_action(lambda: TRUE)
             | pp.Keyword('$false').set_parse_action(lambda: FALSE))
    atom = (name + pp.Opt(arguments)).set_parse_action(_make_atom)

    formula = pp.Forward()
    unary = pp.Forward()
    primary = truth
    if equality:
        equation = (term + pp.Suppress(pp.Regex(r'=(?!>)')) + term).set_parse_action(
            lambda t: Atom(EQUALITY, (t[0], t[1])))
        primary = primary | equation
    primary = primary | atom | (LPAR + formula + RPAR)

    quantified = (pp.one_of('! ?') + LBRACK + pp.Group(pp.DelimitedList(variable_name))
                  + RBRACK + COLON + unary).set_parse_action(_make_quantified)
    negation = (pp.Suppress('~') + unary).set_parse_action(lambda t: Not(t[0]))
    unary <<= negation | quantified | primary

    conjunction = (unary + pp.ZeroOrMore(pp.Suppress('&') + unary)).set_parse_action(_fold_left(And))
    disjunction = (conjunction + pp.ZeroOrMore(pp.Suppress('|') + conjunction)).set_parse_action(_fold_left(Or))
    implication = pp.Forward()
    implication <<= (disjunction + pp.Opt(pp.Suppress('=>') + implication)).set_parse_action(_fold_right(Imp))
    equivalence = pp.Forward()
    equivalence <<= (implication + pp.Opt(pp.Suppress('<=>') + equivalence)).set_parse_action(_fold_right(Iff))
    formula <<= equivalence

    comment = pp.Regex(r'%[^\n]*')
    formula.ignore(comment)
    term.ignore(comment)
    return formula, term


def _syntax_error(exc, text):
    logger.debug(f"Syntax error in {text!r}: {exc}")
    return ValidationError(
        "Syntax error at line %(line)s, column %(column)s: %(detail)s",
        code='syntax',
        params={'line': exc.lineno, 'column': exc.col, 'detail': exc.msg},
    )


def check_arities(*expressions):
    """
    Every symbol name must be used with a single arity and a single kind. A
    name used both as a function and as a predicate is rejected even when the
    arities agree.
    """
    seen = {}
    for e in expressions:
        vocab = vocabulary(e)
        symbols = list(vocab.functions) + [symbol for symbol, _ in vocab.predicates]
        for symbol in symbols:
            previous = seen.setdefault(symbol.name, symbol)
            if previous != symbol:
                raise ValidationError(
                    "Symbol %(name)s is used as %(first)s and as %(second)s",
                    code='arity',
                    params={'name': symbol.name,
                            'first': f"{previous.kind} {previous}",
                            'second': f"{symbol.kind} {symbol}"},
                )
    return seen


def parse(text, equality=False):
    """Parse a formula; raises ValidationError on syntax or arity errors."""
    formula, _ = _grammar(bool(equality))
    try:
        result = formula.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise _syntax_error(exc, text) from exc
    check_arities(result)
    return result


def parse_term(text):
    _, term = _grammar(False)
    try:
        return term.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise _syntax_error(exc, text) from exc


def parse_literal(text, equality=True):
    f = parse(text, equality=equality)
    if isinstance(f, Atom):
        return Literal(f, True)
    if isinstance(f, Not) and isinstance(f.arg, Atom):
        return Literal(f.arg, False)
    raise ValidationError("%(text)s is not a literal", code='syntax', params={'text': text})


def parse_clause(text, equality=True):
    """Parse "L1 | ... | Ln"; "$false" is the empty clause."""
    f = parse(text, equality=equality)
    literals = []
    pending = [f]
    while pending:
        item = pending.pop()
        if isinstance(item, Or):
            pending.extend((item.right, item.left))
        elif item == FALSE:
            continue
        elif isinstance(item, Atom):
            literals.append(Literal(item, True))
        elif isinstance(item, Not) and isinstance(item.arg, Atom):
            literals.append(Literal(item.arg, False))
        else:
            raise ValidationError("%(text)s is not a clause", code='syntax', params={'text': text})
    return Clause(tuple(literals))


def parse_file(path, equality=False):
    with open(path, encoding='utf-8') as handle:
        return parse(handle.read(), equality=equality)
