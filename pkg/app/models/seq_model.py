"""
Sequences of rationals described by expression trees over the index n.

The language is closed on purpose: constants, n, the four field operations
and periodic selectors. Restricted to one residue class of n modulo the
period of its selectors, every expression is a rational function of n, so
eventual sign and limit are decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Literal, TypeAlias

from app.core.exceptions import DivisionByZeroError, UndefinedInstantiationError
from app.models.rfunc_model import RFunc

BinaryOp: TypeAlias = Literal["+", "-", "*", "/"]

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Index:
    """The index variable n."""


@dataclass(frozen=True)
class BinOp:
    op: BinaryOp
    left: SeqExpr
    right: SeqExpr


@dataclass(frozen=True)
class Alt:
    """Periodic selector: branch ``n mod len(branches)`` is taken at index n."""

    branches: tuple[SeqExpr, ...]

    def __post_init__(self) -> None:
        if len(self.branches) < 2:
            raise ValueError("periodic selector needs at least two branches")


SeqExpr: TypeAlias = Const | Index | BinOp | Alt


def evaluate(expr: SeqExpr, n: int) -> Fraction:
    match expr:
        case Const(value):
            return value
        case Index():
            return Fraction(n)
        case Alt(branches):
            return evaluate(branches[n % len(branches)], n)
        case BinOp(op, left, right):
            a, b = evaluate(left, n), evaluate(right, n)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if b == 0:
                raise UndefinedInstantiationError(f"Division by zero at n = {n}")
            return a / b
    raise TypeError(f"not a sequence expression: {expr!r}")


def period(expr: SeqExpr) -> int:
    """Least common multiple of all selector lengths (1 without selectors)."""
    match expr:
        case Alt(branches):
            return reduce(math.lcm, (period(b) for b in branches), len(branches))
        case BinOp(_, left, right):
            return math.lcm(period(left), period(right))
    return 1


def has_selector(expr: SeqExpr) -> bool:
    match expr:
        case Alt():
            return True
        case BinOp(_, left, right):
            return has_selector(left) or has_selector(right)
    return False


def class_function(expr: SeqExpr, residue: int) -> RFunc:
    """
    The rational function of n that expr agrees with on n = residue (mod P).

    P must be a multiple of every selector length in expr. Raises
    DivisionByZeroError when a divisor is identically zero on the class.
    """
    match expr:
        case Const(value):
            return RFunc.constant(value)
        case Index():
            return RFunc.omega()
        case Alt(branches):
            return class_function(branches[residue % len(branches)], residue)
        case BinOp(op, left, right):
            a = class_function(left, residue)
            b = class_function(right, residue)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if b.is_zero():
                raise DivisionByZeroError(
                    f"Divisor {format_expr(right)} vanishes on n = {residue} mod class"
                )
            return a / b
    raise TypeError(f"not a sequence expression: {expr!r}")


def divisors(expr: SeqExpr) -> list[SeqExpr]:
    """Right operands of every division node, outermost first."""
    match expr:
        case Alt(branches):
            return [d for b in branches for d in divisors(b)]
        case BinOp(op, left, right):
            own = [right] if op == "/" else []
            return own + divisors(left) + divisors(right)
    return []


def _precedence(expr: SeqExpr) -> int:
    match expr:
        case BinOp(op, _, _):
            return _PRECEDENCE[op]
        case Const(value) if value < 0:
            return 0
        case Const(value) if value.denominator != 1:
            return 2
    return 3


def format_expr(expr: SeqExpr) -> str:
    match expr:
        case Const(value):
            return str(value)
        case Index():
            return "n"
        case Alt(branches):
            return "alt{" + "; ".join(format_expr(b) for b in branches) + "}"
        case BinOp(op, left, right):
            own = _PRECEDENCE[op]
            lhs = format_expr(left)
            rhs = format_expr(right)
            if _precedence(left) < own:
                lhs = f"({lhs})"
            right_prec = _precedence(right)
            if right_prec < own or (right_prec == own and op in "-/"):
                rhs = f"({rhs})"
            return f"{lhs} {op} {rhs}"
    raise TypeError(f"not a sequence expression: {expr!r}")


@dataclass(frozen=True)
class HyperSeq:
    """
    The class [(r_n)] of the sequence expr(n), defined for n >= valid_from.

    Equality of the mathematical objects is decided by comparison, not by
    comparing trees; the dataclass equality below is structural only.
    """

    expr: SeqExpr
    valid_from: int = 1
    period: int = field(init=False)

    def __post_init__(self) -> None:
        if self.valid_from < 1:
            raise ValueError("valid_from must be a natural number")
        object.__setattr__(self, "period", period(self.expr))

    def at(self, n: int) -> Fraction:
        if n < self.valid_from:
            raise UndefinedInstantiationError(
                f"Index {n} precedes the first defined index {self.valid_from}"
            )
        return evaluate(self.expr, n)

    def class_functions(self) -> list[RFunc]:
        return [class_function(self.expr, r) for r in range(self.period)]

    def __str__(self) -> str:
        return f"[({format_expr(self.expr)})]"
