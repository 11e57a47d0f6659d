"""
Sequences of rationals modulo a nonprincipal ultrafilter.

No ultrafilter is ever built. Every decision is taken separately on each
residue class of n modulo the expression's period, where the sequence is a
rational function of n and its eventual behaviour is decidable. When the
classes agree, every nonprincipal ultrafilter gives that answer. When they
disagree, the answer depends on which class the ultrafilter contains, and
UltrafilterDependentError is raised with the per-class verdicts.
"""

import logging
import math
from collections.abc import Callable, Hashable
from fractions import Fraction
from typing import Literal, TypeVar

from app.core.enums import Classification, Ordering
from app.core.exceptions import (
    DivisionByZeroError,
    EventuallyZeroDivisorError,
    NotLimitedError,
    UltrafilterDependentError,
)
from app.models.rational_model import Rational
from app.models.rfunc_model import RFunc
from app.models.seq_model import Alt, BinOp, Const, HyperSeq, SeqExpr, class_function
from app.observability.metrics import record_ultrafilter_dependent
from app.services.hyperreal_service import rf_classify, rf_shadow
from app.services.root_service import cauchy_bound

logger = logging.getLogger(__name__)

SeqOp = Literal["add", "sub", "mul", "div"]
_SYMBOLS: dict[str, Literal["+", "-", "*", "/"]] = {
    "add": "+",
    "sub": "-",
    "mul": "*",
    "div": "/",
}

V = TypeVar("V", bound=Hashable)


def _threshold(expr: SeqExpr, residue: int) -> int:
    """First index of the class from which every divisor taken is nonzero."""
    match expr:
        case Alt(branches):
            return _threshold(branches[residue % len(branches)], residue)
        case BinOp(op, left, right):
            first = max(_threshold(left, residue), _threshold(right, residue))
            if op == "/":
                divisor = class_function(right, residue)
                if divisor.num.degree >= 1:
                    first = max(first, math.ceil(cauchy_bound(divisor.num)))
            return first
    return 1


def build_hyperseq(expr: SeqExpr, valid_from: int = 1) -> HyperSeq:
    """
    Wrap expr as a HyperSeq, checking every division and computing the
    index from which the sequence is defined.
    """
    seq_period = HyperSeq(expr).period
    vanishing = []
    for residue in range(seq_period):
        try:
            class_function(expr, residue)
        except DivisionByZeroError:
            vanishing.append(residue)
    if len(vanishing) == seq_period:
        raise EventuallyZeroDivisorError("A divisor is zero from some index on")
    if vanishing:
        record_ultrafilter_dependent("divide")
        raise UltrafilterDependentError(
            verdicts={
                r: "divisor zero" if r in vanishing else "divisor nonzero"
                for r in range(seq_period)
            },
            period=seq_period,
        )
    first = max(valid_from, *(_threshold(expr, r) for r in range(seq_period)))
    return HyperSeq(expr, first)


def star_embed(r: Rational) -> HyperSeq:
    """The constant sequence (r, r, r, ...)."""
    return HyperSeq(Const(Fraction(r)))


def seq_arith(op: SeqOp, a: HyperSeq, b: HyperSeq) -> HyperSeq:
    """Pointwise field operation."""
    expr = BinOp(_SYMBOLS[op], a.expr, b.expr)
    return build_hyperseq(expr, max(a.valid_from, b.valid_from))


def _agree(
    operation: str,
    seq_period: int,
    verdict_of: Callable[[RFunc], V],
    functions: list[RFunc],
) -> V:
    verdicts = {residue: verdict_of(f) for residue, f in enumerate(functions)}
    logger.debug("Per-class verdicts of %s mod %d: %s", operation, seq_period, verdicts)
    distinct = set(verdicts.values())
    if len(distinct) == 1:
        return distinct.pop()
    record_ultrafilter_dependent(operation)
    raise UltrafilterDependentError(
        verdicts={r: str(v) for r, v in verdicts.items()}, period=seq_period
    )


def seq_compare(a: HyperSeq, b: HyperSeq) -> Ordering:
    difference = BinOp("-", a.expr, b.expr)
    seq_period = math.lcm(a.period, b.period)
    functions = [class_function(difference, r) for r in range(seq_period)]
    return _agree(
        "compare", seq_period, lambda f: Ordering.from_sign(f.sign()), functions
    )


def seq_classify(a: HyperSeq) -> Classification:
    """
    Magnitude class of [(a_n)].

    Classes that all tend to 0 are infinitesimal even when some of them are
    eventually zero and others are not; only a sequence eventually zero on
    every class is Zero.
    """
    functions = a.class_functions()
    kinds = {rf_classify(f) for f in functions}
    if len(kinds) > 1 and kinds <= {Classification.ZERO, Classification.INFINITESIMAL}:
        return Classification.INFINITESIMAL
    return _agree("classify", a.period, rf_classify, functions)


def seq_shadow(a: HyperSeq) -> Fraction:
    """The rational all residue classes converge to."""
    if seq_classify(a) is Classification.INFINITE:
        raise NotLimitedError(f"{a} is infinite and has no shadow")
    return _agree("shadow", a.period, rf_shadow, a.class_functions())
