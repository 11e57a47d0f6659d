"""Operations of the ordered field Q(w)."""

import math
from fractions import Fraction
from typing import Literal

from app.core.enums import Classification, CutKind, Ordering
from app.core.exceptions import DivisionByZeroError, NotLimitedError, NotRationalFunctionError
from app.models.polynomial_model import Polynomial
from app.models.rational_model import Rational
from app.models.rfunc_model import RFunc
from app.models.seq_model import (
    BinOp,
    Const,
    HyperSeq,
    Index,
    SeqExpr,
    class_function,
    has_selector,
)
from app.services.root_service import cauchy_bound

RfOp = Literal["add", "sub", "mul", "div"]


def rf_arith(op: RfOp, a: RFunc, b: RFunc) -> RFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZeroError(f"Cannot divide {a} by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_compare(a: RFunc, b: RFunc) -> Ordering:
    return Ordering.from_sign((a - b).sign())


def rf_classify(a: RFunc) -> Classification:
    if a.is_zero():
        return Classification.ZERO
    excess = a.num.degree - a.den.degree
    if excess > 0:
        return Classification.INFINITE
    if excess == 0:
        return Classification.APPRECIABLE
    return Classification.INFINITESIMAL


def rf_shadow(a: RFunc) -> Fraction:
    """The rational infinitely close to a limited element."""
    kind = rf_classify(a)
    if kind is Classification.INFINITE:
        raise NotLimitedError(f"{a} is infinite and has no shadow")
    if kind.is_infinitesimal:
        return Fraction(0)
    # den is monic
    return a.num.leading


def infinitely_close(a: RFunc, b: RFunc) -> bool:
    return rf_classify(a - b).is_infinitesimal


def from_seq(seq: HyperSeq) -> RFunc:
    """Read a selector-free sequence of n as the same rational function of w."""
    if has_selector(seq.expr):
        raise NotRationalFunctionError(f"{seq} contains a periodic selector")
    return class_function(seq.expr, 0)


def _poly_expr(p: Polynomial) -> SeqExpr:
    """Horner form of p in n."""
    if p.is_zero():
        return Const(Fraction(0))
    expr: SeqExpr = Const(p.leading)
    for c in reversed(p.coeffs[:-1]):
        expr = BinOp("*", expr, Index())
        if c > 0:
            expr = BinOp("+", expr, Const(c))
        elif c < 0:
            expr = BinOp("-", expr, Const(-c))
    return expr


def to_seq(a: RFunc) -> HyperSeq:
    """The sequence n -> a(n), defined past the last pole of a."""
    expr = _poly_expr(a.num)
    if a.den.degree < 1:
        return HyperSeq(expr)
    return HyperSeq(
        BinOp("/", expr, _poly_expr(a.den)), math.ceil(cauchy_bound(a.den))
    )


def rf_archimedean_bound(a: RFunc) -> int:
    """
    Least natural n with n > a.

    Raises NotLimitedError for a positive infinite a: no natural exceeds it,
    which is exactly how Q(w) fails to be Archimedean.
    """
    if rf_classify(a) is Classification.INFINITE:
        if a.sign() > 0:
            raise NotLimitedError(f"No natural number exceeds {a}")
        return 1
    shadow = rf_shadow(a)
    candidate = math.floor(shadow) + 1
    if shadow.denominator == 1 and a < shadow:
        candidate = int(shadow)
    return max(1, candidate)


def element_cut_classify(a: RFunc) -> CutKind:
    """
    Shape of the cut L = {q in Q : q <= a} of a limited element.

    Every such cut is pinned at the shadow s: if a >= s then s is the
    maximum of L, otherwise s is the minimum of U.
    """
    shadow = rf_shadow(a)
    return CutKind.MAX_IN_LOWER if a >= shadow else CutKind.MIN_IN_UPPER


def rf_evaluate_at(a: RFunc, n: Rational) -> Fraction:
    return a.evaluate_at(n)
