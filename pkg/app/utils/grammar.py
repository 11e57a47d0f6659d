"""
Text grammars for polynomials, Q(w) elements and sequences.

All three share one expression syntax:

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ['^' natural]
    atom   := number | symbol | '(' expr ')' | 'alt' '{' expr (';' expr)+ '}'

and differ in which symbols they accept and what the operators build. The
polynomial grammar knows ``x`` (and ``w`` inside coefficients over Q(w)),
the element grammar knows ``w``, the sequence grammar knows ``n`` and the
periodic selector ``alt{...}``.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Generic, Literal, NoReturn, TypeVar

from app.core.enums import FieldKind
from app.core.exceptions import ParseError
from app.models.polynomial_model import Polynomial
from app.models.rfunc_model import RFunc
from app.models.seq_model import Alt, BinOp, Const, Index, SeqExpr

T = TypeVar("T")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<symbol>[A-Za-z_]+)
  | (?P<op>[-+*/^(){};−])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: Literal["number", "symbol", "op", "end"]
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"Unexpected character {text[pos]!r} at position {pos}")
        kind = match.lastgroup
        if kind != "ws":
            value = match.group()
            if value == "−":
                value = "-"
            tokens.append(Token(kind, value, pos))  # type: ignore[arg-type]
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def symbols_in(text: str) -> set[str]:
    return {t.text for t in tokenize(text) if t.kind == "symbol"}


# builders


class _Builder(Generic[T]):
    symbols: frozenset[str] = frozenset()
    allows_selector = False

    def number(self, value: Fraction) -> T:
        raise NotImplementedError

    def symbol(self, name: str) -> T:
        raise NotImplementedError

    def add(self, a: T, b: T) -> T:
        return a + b  # type: ignore[operator]

    def sub(self, a: T, b: T) -> T:
        return a - b  # type: ignore[operator]

    def mul(self, a: T, b: T) -> T:
        return a * b  # type: ignore[operator]

    def div(self, a: T, b: T) -> T:
        return a / b  # type: ignore[operator]

    def neg(self, a: T) -> T:
        return -a  # type: ignore[operator]

    def power(self, a: T, exponent: int) -> T:
        return a**exponent  # type: ignore[operator]

    def alt(self, branches: list[T]) -> T:
        raise ParseError("Periodic selectors are only allowed in sequences")


class _ElementBuilder(_Builder[RFunc]):
    symbols = frozenset({"w"})

    def number(self, value: Fraction) -> RFunc:
        return RFunc.constant(value)

    def symbol(self, name: str) -> RFunc:
        return RFunc.omega()


class _PolynomialBuilder(_Builder[Polynomial]):
    def __init__(self, field: FieldKind):
        self.field = field
        self.symbols = frozenset({"x", "w"} if field is FieldKind.QW else {"x"})

    def _scalar(self, value: Any) -> Any:
        return RFunc.coerce(value) if self.field is FieldKind.QW else Fraction(value)

    def number(self, value: Fraction) -> Polynomial:
        return Polynomial((self._scalar(value),))

    def symbol(self, name: str) -> Polynomial:
        if name == "w":
            return Polynomial((RFunc.omega(),))
        return Polynomial((self._scalar(0), self._scalar(1)))

    def div(self, a: Polynomial, b: Polynomial) -> Polynomial:
        if b.degree > 0:
            raise ParseError("Polynomials may only be divided by constants")
        if b.is_zero():
            raise ParseError("Division by zero in polynomial")
        return a / b.coeffs[0]

    def power(self, a: Polynomial, exponent: int) -> Polynomial:
        result = Polynomial((self._scalar(1),))
        for _ in range(exponent):
            result = result * a
        return result


class _SequenceBuilder(_Builder[SeqExpr]):
    symbols = frozenset({"n"})
    allows_selector = True

    def number(self, value: Fraction) -> SeqExpr:
        return Const(value)

    def symbol(self, name: str) -> SeqExpr:
        return Index()

    def add(self, a: SeqExpr, b: SeqExpr) -> SeqExpr:
        return BinOp("+", a, b)

    def sub(self, a: SeqExpr, b: SeqExpr) -> SeqExpr:
        return BinOp("-", a, b)

    def mul(self, a: SeqExpr, b: SeqExpr) -> SeqExpr:
        return BinOp("*", a, b)

    def div(self, a: SeqExpr, b: SeqExpr) -> SeqExpr:
        return BinOp("/", a, b)

    def neg(self, a: SeqExpr) -> SeqExpr:
        if isinstance(a, Const):
            return Const(-a.value)
        return BinOp("-", Const(Fraction(0)), a)

    def power(self, a: SeqExpr, exponent: int) -> SeqExpr:
        if exponent == 0:
            return Const(Fraction(1))
        result = a
        for _ in range(exponent - 1):
            result = BinOp("*", result, a)
        return result

    def alt(self, branches: list[SeqExpr]) -> SeqExpr:
        return Alt(tuple(branches))


# parser


class _Parser(Generic[T]):
    def __init__(self, text: str, builder: _Builder[T]):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.builder = builder

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.index += 1
            return True
        return False

    def _expect(self, text: str) -> None:
        if not self._accept(text):
            self._fail(f"expected {text!r}")

    def _fail(self, what: str) -> NoReturn:
        token = self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise ParseError(f"In {self.text!r}: {what}, found {found} at position {token.pos}")

    def parse(self) -> T:
        value = self._expr()
        if self.current.kind != "end":
            self._fail("expected an operator")
        return value

    def _expr(self) -> T:
        negate = False
        if self._accept("-"):
            negate = True
        else:
            self._accept("+")
        value = self._term()
        if negate:
            value = self.builder.neg(value)
        while True:
            if self._accept("+"):
                value = self.builder.add(value, self._term())
            elif self._accept("-"):
                value = self.builder.sub(value, self._term())
            else:
                return value

    def _term(self) -> T:
        value = self._factor()
        while True:
            if self._accept("*"):
                value = self.builder.mul(value, self._factor())
            elif self._accept("/"):
                value = self.builder.div(value, self._factor())
            else:
                return value

    def _factor(self) -> T:
        if self._accept("-"):
            return self.builder.neg(self._factor())
        value = self._atom()
        if self._accept("^"):
            token = self.current
            if token.kind != "number" or not token.text.isdigit():
                self._fail("expected a natural exponent")
            self._advance()
            value = self.builder.power(value, int(token.text))
        return value

    def _atom(self) -> T:
        token = self.current
        if token.kind == "number":
            self._advance()
            return self.builder.number(Fraction(token.text))
        if token.kind == "symbol":
            if token.text == "alt":
                return self._selector()
            if token.text not in self.builder.symbols:
                allowed = ", ".join(sorted(self.builder.symbols)) or "none"
                raise ParseError(
                    f"In {self.text!r}: unknown symbol {token.text!r} at position "
                    f"{token.pos} (allowed: {allowed})"
                )
            self._advance()
            return self.builder.symbol(token.text)
        if self._accept("("):
            value = self._expr()
            self._expect(")")
            return value
        self._fail("expected a number, symbol or '('")

    def _selector(self) -> T:
        if not self.builder.allows_selector:
            self._fail("periodic selectors are only allowed in sequences")
        self._advance()
        self._expect("{")
        branches = [self._expr()]
        while self._accept(";"):
            branches.append(self._expr())
        self._expect("}")
        if len(branches) < 2:
            raise ParseError(f"In {self.text!r}: a periodic selector needs at least two branches")
        return self.builder.alt(branches)


def parse_polynomial(text: str, field: FieldKind = FieldKind.Q) -> Polynomial:
    """A polynomial in x with coefficients in Q, or in Q(w) when field is QW."""
    return _Parser(text, _PolynomialBuilder(field)).parse()


def parse_element(text: str) -> RFunc:
    """An element of Q(w)."""
    return _Parser(text, _ElementBuilder()).parse()


def parse_sequence(text: str) -> SeqExpr:
    """A sequence expression in n."""
    return _Parser(text, _SequenceBuilder()).parse()


def is_sequence_text(text: str) -> bool:
    """
    Whether text denotes a sequence rather than a Q(w) element.

    Mentioning both n (or a selector) and w is ambiguous and rejected.
    """
    found = symbols_in(text)
    sequence = bool(found & {"n", "alt"})
    if sequence and "w" in found:
        raise ParseError(f"{text!r} mixes the sequence index n with the element w")
    return sequence
