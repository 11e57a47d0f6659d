"""Dense univariate polynomials over an ordered field (Q or Q(w))."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from typing import Any, Generic, TypeVar

from app.core.exceptions import DivisionByZeroError

F = TypeVar("F")


@dataclass(frozen=True)
class Polynomial(Generic[F]):
    """
    Coefficient vector, index i holding the coefficient of x^i.

    Trailing zeros are stripped on construction, so the leading coefficient
    is nonzero unless the polynomial is zero (empty vector).
    """

    coeffs: tuple[F, ...] = ()

    def __post_init__(self) -> None:
        coeffs = tuple(self.coeffs)
        end = len(coeffs)
        while end and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    @classmethod
    def constant(cls, value: Any) -> Polynomial:
        return cls((value,))

    @classmethod
    def identity(cls, one: Any = Fraction(1)) -> Polynomial:
        return cls((one * 0, one))

    @classmethod
    def from_roots(cls, roots: Iterable[Any]) -> Polynomial:
        result: Polynomial = cls((Fraction(1),))
        for root in roots:
            result = result * cls((-root, Fraction(1)))
        return result

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> F:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    # arithmetic

    def _lift(self, other: Any) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        return Polynomial((other,))

    def __add__(self, other: Any) -> Polynomial:
        other = self._lift(other)
        return Polynomial(
            tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))
        )

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Any) -> Polynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> Polynomial:
        return self._lift(other) - self

    def __mul__(self, other: Any) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Polynomial(())
        zero = self.coeffs[0] * 0
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(tuple(out))

    def __rmul__(self, other: Any) -> Polynomial:
        return Polynomial(tuple(other * c for c in self.coeffs))

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise ValueError("negative exponent")
        result: Polynomial = Polynomial((Fraction(1),))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
        if divisor.is_zero():
            raise DivisionByZeroError("Polynomial division by the zero polynomial")
        remainder = list(self.coeffs)
        if len(remainder) < len(divisor.coeffs):
            return Polynomial(()), self
        lead = divisor.leading
        shift = len(remainder) - len(divisor.coeffs)
        quotient: list[Any] = [None] * (shift + 1)
        for k in range(shift, -1, -1):
            factor = remainder[k + divisor.degree] / lead
            quotient[k] = factor
            if factor == 0:
                continue
            for j, d in enumerate(divisor.coeffs):
                remainder[k + j] = remainder[k + j] - factor * d
        return Polynomial(tuple(quotient)), Polynomial(tuple(remainder[: divisor.degree]))

    def __floordiv__(self, divisor: Polynomial) -> Polynomial:
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: Polynomial) -> Polynomial:
        return divmod(self, divisor)[1]

    def __truediv__(self, scalar: Any) -> Polynomial:
        if scalar == 0:
            raise DivisionByZeroError()
        return Polynomial(tuple(c / scalar for c in self.coeffs))

    # calculus and evaluation

    def derivative(self) -> Polynomial:
        return Polynomial(tuple(c * i for i, c in enumerate(self.coeffs) if i))

    def evaluate(self, x: Any) -> Any:
        """Horner evaluation; the zero polynomial evaluates to the zero of x's field."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return self / self.leading

    def map_coeffs(self, fn: Callable[[Any], Any]) -> Polynomial:
        return Polynomial(tuple(fn(c) for c in self.coeffs))

    # text form

    def format(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            rational = _as_rational(c)
            power = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if rational is None:
                body = f"({c})" if not power else f"({c})*{power}"
                parts.append(("+", body))
                continue
            magnitude = abs(rational)
            if not power:
                body = str(magnitude)
            elif magnitude == 1:
                body = power
            else:
                body = f"{magnitude}*{power}"
            parts.append(("-" if rational < 0 else "+", body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for op, body in parts[1:]:
            text += f" {op} {body}"
        return text

    def __str__(self) -> str:
        return self.format()


def _as_rational(value: Any) -> Fraction | None:
    if isinstance(value, Fraction | int):
        return Fraction(value)
    as_rational = getattr(value, "as_rational", None)
    return as_rational() if as_rational is not None else None


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (the zero polynomial for gcd(0, 0))."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free_part(f: Polynomial) -> Polynomial:
    """f / gcd(f, f'), made monic: same distinct roots, all simple."""
    if f.is_zero():
        return f
    return (f // poly_gcd(f, f.derivative())).monic()
