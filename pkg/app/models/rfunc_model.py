"""Q(w): rational functions in an infinite element w, ordered at infinity."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Any

from app.core.exceptions import DivisionByZeroError, UndefinedInstantiationError
from app.models.polynomial_model import Polynomial, poly_gcd
from app.models.rational_model import sign

_ONE = Polynomial((Fraction(1),))


@total_ordering
class RFunc:
    """
    num(w) / den(w) with gcd(num, den) = 1 and den monic.

    w stands for the class of the sequence (1, 2, 3, ...), so a value is
    positive exactly when it is positive for all large n, which is the
    sign of the numerator's leading coefficient.
    """

    __slots__ = ("_den", "_num")

    def __init__(self, num: Polynomial, den: Polynomial = _ONE):
        if den.is_zero():
            raise DivisionByZeroError("Rational function with zero denominator")
        num = num.map_coeffs(Fraction)
        den = den.map_coeffs(Fraction)
        if num.is_zero():
            num, den = Polynomial(()), _ONE
        else:
            common = poly_gcd(num, den)
            if common.degree > 0:
                num, den = num // common, den // common
            lead = den.leading
            num, den = num / lead, den / lead
        self._num = num
        self._den = den

    @classmethod
    def constant(cls, value: Fraction | int) -> RFunc:
        return cls(Polynomial((Fraction(value),)))

    @classmethod
    def omega(cls) -> RFunc:
        return cls(Polynomial((Fraction(0), Fraction(1))))

    @classmethod
    def coerce(cls, value: Any) -> RFunc:
        if isinstance(value, RFunc):
            return value
        if isinstance(value, Fraction | int):
            return cls.constant(value)
        raise TypeError(f"cannot use {type(value).__name__} as an element of Q(w)")

    @property
    def num(self) -> Polynomial:
        return self._num

    @property
    def den(self) -> Polynomial:
        return self._den

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def as_rational(self) -> Fraction | None:
        """The value as a rational when it does not depend on w."""
        if self._den.degree == 0 and self._num.degree <= 0:
            return self._num.coeffs[0] if self._num.coeffs else Fraction(0)
        return None

    def sign(self) -> int:
        return 0 if self.is_zero() else sign(self._num.leading)

    def evaluate_at(self, n: Fraction | int) -> Fraction:
        """Instantiate at w = n."""
        d = self._den.evaluate(Fraction(n))
        if d == 0:
            raise UndefinedInstantiationError(
                f"Denominator of {self} vanishes at w = {n}"
            )
        return self._num.evaluate(Fraction(n)) / d

    # field operations

    def __add__(self, other: Any) -> RFunc:
        try:
            other = RFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self._den == other._den:
            return RFunc(self._num + other._num, self._den)
        return RFunc(self._num * other._den + other._num * self._den, self._den * other._den)

    __radd__ = __add__

    def __neg__(self) -> RFunc:
        return RFunc(-self._num, self._den)

    def __pos__(self) -> RFunc:
        return self

    def __abs__(self) -> RFunc:
        return -self if self.sign() < 0 else self

    def __sub__(self, other: Any) -> RFunc:
        try:
            other = RFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> RFunc:
        try:
            other = RFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other: Any) -> RFunc:
        try:
            other = RFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return RFunc(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> RFunc:
        try:
            other = RFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZeroError(f"Division of {self} by zero")
        return RFunc(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other: Any) -> RFunc:
        try:
            other = RFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> RFunc:
        if exponent < 0:
            return RFunc.constant(1) / (self ** (-exponent))
        return RFunc(self._num**exponent, self._den**exponent)

    # order

    def __eq__(self, other: object) -> bool:
        try:
            other = RFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __lt__(self, other: Any) -> bool:
        try:
            other = RFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        rational = self.as_rational()
        if rational is not None:
            return hash(rational)
        return hash((self._num, self._den))

    # text form

    def __str__(self) -> str:
        num = self._num.format("w")
        if self._den.degree == 0:
            return num
        den = self._den.format("w")
        if " " in num or "/" in num:
            num = f"({num})"
        if " " in den or "/" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RFunc({self})"
