"""Witness intervals for roots and exact real algebraic numbers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from app.core.enums import IntervalKind
from app.models.polynomial_model import Polynomial


@dataclass(frozen=True)
class IsolatingInterval:
    """
    ExactRoot: lo == hi is a root. SignChange: lo < hi and the polynomial
    takes opposite strict signs at the two ends.
    """

    lo: Fraction
    hi: Fraction
    kind: IntervalKind

    def __post_init__(self) -> None:
        if self.kind is IntervalKind.EXACT_ROOT and self.lo != self.hi:
            raise ValueError("an exact root interval must be a single point")
        if self.kind is IntervalKind.SIGN_CHANGE and not self.lo < self.hi:
            raise ValueError("a sign-change interval must have lo < hi")

    @classmethod
    def exact(cls, root: Fraction) -> IsolatingInterval:
        return cls(root, root, IntervalKind.EXACT_ROOT)

    @classmethod
    def sign_change(cls, lo: Fraction, hi: Fraction) -> IsolatingInterval:
        return cls(lo, hi, IntervalKind.SIGN_CHANGE)

    @property
    def is_exact(self) -> bool:
        return self.kind is IntervalKind.EXACT_ROOT

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def holds_for(self, f: Polynomial) -> bool:
        """Check the kind's invariant against f exactly."""
        if self.is_exact:
            return f.evaluate(self.lo) == 0
        return f.evaluate(self.lo) * f.evaluate(self.hi) < 0


@dataclass(frozen=True)
class RealAlgebraic:
    """
    A real root of a square-free rational polynomial, pinned down by an
    interval holding no other root of it.
    """

    defining: Polynomial
    interval: IsolatingInterval

    @property
    def lo(self) -> Fraction:
        return self.interval.lo

    @property
    def hi(self) -> Fraction:
        return self.interval.hi

    @property
    def is_exact(self) -> bool:
        return self.interval.is_exact

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.lo)
        return f"root of {self.defining} in ({self.lo}, {self.hi})"
