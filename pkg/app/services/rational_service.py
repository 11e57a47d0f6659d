import math
from collections.abc import Iterable
from typing import Literal

from app.core.exceptions import DivisionByZeroError
from app.models.rational_model import Rational

ArithOp = Literal["add", "sub", "mul", "div"]


def rat_arith(op: ArithOp, a: Rational, b: Rational) -> Rational:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DivisionByZeroError(f"Cannot divide {a} by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def archimedean_bound(x: Rational) -> int:
    """Least natural number (counting from 1) strictly greater than x."""
    return max(1, math.floor(x) + 1)


def formally_real_check(values: Iterable[Rational]) -> bool:
    """True when the sum of squares vanishes exactly when every term does."""
    values = list(values)
    sum_is_zero = sum(v * v for v in values) == 0
    all_zero = all(v == 0 for v in values)
    return sum_is_zero == all_zero
