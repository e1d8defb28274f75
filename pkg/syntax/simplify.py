from .formulas import (
    BINARY, FALSE, QUANTIFIERS, TRUE, And, Atom, Not, Or, Truth,
)


def tv_and(left, right):
    """Conjunction with the truth-value rules applied at the top."""
    if left == FALSE or right == FALSE:
        return FALSE
    if left == TRUE:
        return right
    if right == TRUE:
        return left
    return And(left, right)


def tv_or(left, right):
    if left == TRUE or right == TRUE:
        return TRUE
    if left == FALSE:
        return right
    if right == FALSE:
        return left
    return Or(left, right)


def simplify_tv(f):
    """
    Exhaustively apply F&$false=$false, F|$true=$true, F&$true=F and F|$false=F
    (in both argument orders). No other rewriting happens; in particular ~$true
    is left alone.
    """
    if isinstance(f, And):
        return tv_and(simplify_tv(f.left), simplify_tv(f.right))
    if isinstance(f, Or):
        return tv_or(simplify_tv(f.left), simplify_tv(f.right))
    if isinstance(f, Not):
        return Not(simplify_tv(f.arg))
    if isinstance(f, BINARY):
        return type(f)(simplify_tv(f.left), simplify_tv(f.right))
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.var, simplify_tv(f.body))
    return f


def simplify_equality(f):
    """Rewrite reflexive equations t = t to $true, then truth-value simplify."""
    return simplify_tv(_drop_reflexive(f))


def _drop_reflexive(f):
    if isinstance(f, Atom):
        if f.is_equality and f.args[0] == f.args[1]:
            return TRUE
        return f
    if isinstance(f, Not):
        arg = _drop_reflexive(f.arg)
        if isinstance(arg, Truth):
            return Truth(not arg.value)
        return Not(arg)
    if isinstance(f, BINARY):
        return type(f)(_drop_reflexive(f.left), _drop_reflexive(f.right))
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.var, _drop_reflexive(f.body))
    return f
