"""
Real-polynomial root machinery over Q: Sturm counting, grid-refinement IVT,
the real-closedness operations (square roots, odd-degree roots), real
algebraic numbers and the Dedekind cuts they induce.
"""

import logging
import math
from fractions import Fraction
from typing import Any

from app.core.enums import CutKind, Ordering
from app.core.exceptions import (
    DegenerateIntervalError,
    InvalidArgumentError,
    NegativeRadicandError,
    NoSignChangeError,
    NotIsolatingError,
)
from app.core.settings import settings
from app.models.algebraic_model import IsolatingInterval, RealAlgebraic
from app.models.polynomial_model import Polynomial, poly_gcd, square_free_part
from app.models.rational_model import Rational, sign
from app.observability.metrics import record_refinement_levels

logger = logging.getLogger(__name__)

_X = Polynomial((Fraction(0), Fraction(1)))


def poly_eval(f: Polynomial, x: Any) -> Any:
    return f.evaluate(x)


# Sturm sequences


def sturm_chain(f: Polynomial) -> list[Polynomial]:
    """f, f', then negated remainders until the remainder vanishes."""
    if f.is_zero():
        raise InvalidArgumentError("The zero polynomial has no Sturm chain")
    chain = [f]
    derivative = f.derivative()
    if derivative.is_zero():
        return chain
    chain.append(derivative)
    while True:
        remainder = -(chain[-2] % chain[-1])
        if remainder.is_zero():
            return chain
        chain.append(remainder)


def sign_variations(chain: list[Polynomial], x: Rational) -> int:
    signs = [s for s in (sign(p.evaluate(x)) for p in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:], strict=False) if a != b)


def sturm_count(f: Polynomial, lo: Rational, hi: Rational) -> int:
    """Number of distinct real roots of f in (lo, hi]."""
    if not lo < hi:
        raise DegenerateIntervalError(f"Interval ({lo}, {hi}] is empty")
    if f.is_zero():
        raise InvalidArgumentError("The zero polynomial has infinitely many roots")
    chain = sturm_chain(square_free_part(f))
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def _count_open(f: Polynomial, lo: Rational, hi: Rational) -> int:
    return sturm_count(f, lo, hi) - (1 if f.evaluate(hi) == 0 else 0)


def cauchy_bound(f: Polynomial) -> Rational:
    """B with every real root of f strictly inside (-B, B)."""
    if f.degree < 1:
        raise InvalidArgumentError("Cauchy bound needs a nonconstant polynomial")
    lead = f.leading
    return 1 + max((abs(c / lead) for c in f.coeffs[:-1]), default=Fraction(0))


# Intermediate value theorem on refining grids


def ivt_grid_root(
    f: Polynomial,
    a: Rational,
    b: Rational,
    width: Rational | None = None,
    grid: int | None = None,
) -> IsolatingInterval:
    """
    Narrow a sign change of f on (a, b) down to a cell of size <= width.

    Each level splits the current cell into ``grid`` equal cells and keeps
    the first one, scanning left to right, whose right end is a grid zero or
    where the sign turns. Scanning from the left makes the leftmost root the
    one converged to.
    """
    width = settings.engine.default_width if width is None else Fraction(width)
    grid = settings.engine.grid_count if grid is None else grid
    if not a < b:
        raise DegenerateIntervalError(f"Interval ({a}, {b}) is empty")
    if width <= 0:
        raise InvalidArgumentError("Width must be positive")
    if grid < 2:
        raise InvalidArgumentError("A grid needs at least two cells per level")

    fa, fb = f.evaluate(a), f.evaluate(b)
    if not fa * fb < 0:
        raise NoSignChangeError(f"f({a}) = {fa} and f({b}) = {fb} do not differ in sign")
    # g(lo) < 0 < g(hi) from here on.
    g = -f if fa > 0 else f

    lo, hi = Fraction(a), Fraction(b)
    levels = 0
    while hi - lo > width:
        step = (hi - lo) / grid
        previous = lo
        for k in range(1, grid):
            point = lo + k * step
            value = g.evaluate(point)
            if value == 0:
                record_refinement_levels(levels + 1)
                logger.debug("Grid point %s is an exact root after %d levels", point, levels + 1)
                return IsolatingInterval.exact(point)
            if value > 0:
                lo, hi = previous, point
                break
            previous = point
        else:
            lo = previous
        levels += 1

    record_refinement_levels(levels)
    logger.debug("Sign change isolated in (%s, %s) after %d levels", lo, hi, levels)
    return IsolatingInterval.sign_change(lo, hi)


def _make_algebraic(f: Polynomial, interval: IsolatingInterval) -> RealAlgebraic:
    """Wrap an IVT witness of f over the square-free part of f."""
    defining = square_free_part(f)
    if interval.is_exact:
        return RealAlgebraic(defining, interval)
    lo, hi = interval.lo, interval.hi
    # f changes sign on (lo, hi); halve until only one root of f is left.
    while sturm_count(defining, lo, hi) > 1:
        mid = (lo + hi) / 2
        value = f.evaluate(mid)
        if value == 0:
            return RealAlgebraic(defining, IsolatingInterval.exact(mid))
        if sign(f.evaluate(lo)) * sign(value) < 0:
            hi = mid
        else:
            lo = mid
    return RealAlgebraic(defining, IsolatingInterval.sign_change(lo, hi))


def from_rational(value: Rational) -> RealAlgebraic:
    return RealAlgebraic(
        Polynomial((-Fraction(value), Fraction(1))), IsolatingInterval.exact(Fraction(value))
    )


# Real-closedness operations


def odd_degree_root(
    f: Polynomial, width: Rational | None = None, grid: int | None = None
) -> RealAlgebraic:
    """A real root of an odd-degree polynomial, found on (-B, B)."""
    if f.degree < 1 or f.degree % 2 == 0:
        raise InvalidArgumentError(f"Degree {f.degree} is not odd")
    bound = cauchy_bound(f)
    interval = ivt_grid_root(f, -bound, bound, width, grid)
    return _make_algebraic(f, interval)


def real_sqrt(
    q: Rational, width: Rational | None = None, grid: int | None = None
) -> RealAlgebraic:
    """The nonnegative square root of q."""
    q = Fraction(q)
    if q < 0:
        raise NegativeRadicandError(f"{q} has no real square root")
    if q == 0:
        return RealAlgebraic(_X, IsolatingInterval.exact(Fraction(0)))
    defining = Polynomial((-q, Fraction(0), Fraction(1)))
    num_root, den_root = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num_root**2 == q.numerator and den_root**2 == q.denominator:
        return RealAlgebraic(defining, IsolatingInterval.exact(Fraction(num_root, den_root)))
    interval = ivt_grid_root(defining, Fraction(0), max(Fraction(1), q) + 1, width, grid)
    return RealAlgebraic(defining, interval)


# Isolation of all real roots


def isolate_all_roots(
    f: Polynomial, width: Rational | None = None, grid: int | None = None
) -> list[RealAlgebraic]:
    """
    One isolating interval per distinct real root, ascending.

    Without ``width`` the intervals are the coarse ones bisection first
    separates the roots with; with it, sign-change intervals are narrowed
    further through ivt_grid_root.
    """
    if f.is_zero():
        raise InvalidArgumentError("The zero polynomial has infinitely many roots")
    g = square_free_part(f)
    if g.degree < 1:
        return []

    bound = cauchy_bound(g)
    found: list[IsolatingInterval] = []
    pending = [(-bound, bound)]
    while pending:
        lo, hi = pending.pop()
        count = _count_open(g, lo, hi)
        if count == 0:
            continue
        if count == 1 and g.evaluate(lo) * g.evaluate(hi) < 0:
            found.append(IsolatingInterval.sign_change(lo, hi))
            continue
        mid = (lo + hi) / 2
        if g.evaluate(mid) == 0:
            found.append(IsolatingInterval.exact(mid))
        pending.append((lo, mid))
        pending.append((mid, hi))

    if width is not None:
        found = [
            interval if interval.is_exact else ivt_grid_root(g, interval.lo, interval.hi, width, grid)
            for interval in found
        ]
    found.sort(key=lambda interval: interval.lo)
    logger.debug("Isolated %d real roots of %s", len(found), g)
    return [RealAlgebraic(g, interval) for interval in found]


def isolate_root_in(f: Polynomial, lo: Rational, hi: Rational) -> RealAlgebraic:
    """The single real root of f in (lo, hi)."""
    if not lo < hi:
        raise DegenerateIntervalError(f"Interval ({lo}, {hi}) is empty")
    if f.is_zero():
        raise InvalidArgumentError("The zero polynomial has infinitely many roots")
    inside = [
        alpha
        for alpha in isolate_all_roots(f)
        if alg_compare(alpha, from_rational(lo)) is Ordering.GREATER
        and alg_compare(alpha, from_rational(hi)) is Ordering.LESS
    ]
    if len(inside) != 1:
        raise NotIsolatingError(f"({lo}, {hi}) holds {len(inside)} real roots of {f}")
    alpha = inside[0]
    if alpha.is_exact:
        return alpha
    # The root is the only one in the witness, so clipping keeps the end signs.
    clipped = IsolatingInterval.sign_change(max(alpha.lo, lo), min(alpha.hi, hi))
    return RealAlgebraic(alpha.defining, clipped)


# Real algebraic numbers


def _halve(alpha: RealAlgebraic) -> RealAlgebraic:
    if alpha.is_exact:
        return alpha
    g = alpha.defining
    mid = alpha.interval.midpoint
    value = g.evaluate(mid)
    if value == 0:
        return RealAlgebraic(g, IsolatingInterval.exact(mid))
    if sign(g.evaluate(alpha.lo)) * sign(value) < 0:
        return RealAlgebraic(g, IsolatingInterval.sign_change(alpha.lo, mid))
    return RealAlgebraic(g, IsolatingInterval.sign_change(mid, alpha.hi))


def refine(alpha: RealAlgebraic, width: Rational) -> RealAlgebraic:
    """Bisect until the interval is no wider than width (or exact)."""
    if width <= 0:
        raise InvalidArgumentError("Width must be positive")
    while not alpha.is_exact and alpha.interval.width > width:
        alpha = _halve(alpha)
    return alpha


def _strictly_below(alpha: RealAlgebraic, beta: RealAlgebraic) -> bool:
    if alpha.hi < beta.lo:
        return True
    return alpha.hi == beta.lo and not (alpha.is_exact and beta.is_exact)


def _is_root_inside(point: Rational, alpha: RealAlgebraic) -> bool:
    return alpha.lo < point < alpha.hi and alpha.defining.evaluate(point) == 0


def alg_compare(alpha: RealAlgebraic, beta: RealAlgebraic) -> Ordering:
    while True:
        if alpha.is_exact and beta.is_exact:
            return Ordering.from_sign(sign(alpha.lo - beta.lo))
        if _strictly_below(alpha, beta):
            return Ordering.LESS
        if _strictly_below(beta, alpha):
            return Ordering.GREATER
        if alpha.is_exact:
            if _is_root_inside(alpha.lo, beta):
                return Ordering.EQUAL
        elif beta.is_exact:
            if _is_root_inside(beta.lo, alpha):
                return Ordering.EQUAL
        else:
            common = poly_gcd(alpha.defining, beta.defining)
            lo, hi = max(alpha.lo, beta.lo), min(alpha.hi, beta.hi)
            # Endpoints are never roots of the defining polynomials, hence not of common.
            if common.degree >= 1 and sturm_count(common, lo, hi) > 0:
                return Ordering.EQUAL
        alpha, beta = _halve(alpha), _halve(beta)


def alg_sign_at(p: Polynomial, alpha: RealAlgebraic) -> int:
    """Sign of p(alpha)."""
    if p.is_zero():
        return 0
    if alpha.is_exact:
        return sign(p.evaluate(alpha.lo))
    common = poly_gcd(p, alpha.defining)
    if common.degree >= 1 and sturm_count(common, alpha.lo, alpha.hi) > 0:
        return 0
    reduced = square_free_part(p)
    while reduced.degree >= 1 and sturm_count(reduced, alpha.lo, alpha.hi) > 0:
        alpha = _halve(alpha)
        if alpha.is_exact:
            return sign(p.evaluate(alpha.lo))
    # p has no root on (lo, hi], so its sign there is constant.
    return sign(p.evaluate(alpha.hi))


def _integer_coefficients(f: Polynomial) -> list[int]:
    common = math.lcm(*(c.denominator for c in f.coeffs))
    return [int(c * common) for c in f.coeffs]


def rational_root(alpha: RealAlgebraic) -> Fraction | None:
    """alpha itself when it is rational, found by the rational root theorem."""
    if alpha.is_exact:
        return alpha.lo
    lead = abs(_integer_coefficients(alpha.defining)[-1])
    # Every rational root is k/lead for an integer k; below this width the
    # interval holds at most one such candidate.
    alpha = refine(alpha, Fraction(1, 2 * lead))
    if alpha.is_exact:
        return alpha.lo
    for k in range(math.ceil(alpha.lo * lead), math.floor(alpha.hi * lead) + 1):
        candidate = Fraction(k, lead)
        if _is_root_inside(candidate, alpha):
            return candidate
    return None


def cut_classify(alpha: RealAlgebraic) -> CutKind:
    """
    Shape of the cut L = {q in Q : q <= alpha}, U = Q minus L.

    A rational alpha is the maximum of L; an irrational one leaves a gap.
    Q is densely ordered, so no cut of it is a jump.
    """
    kind = CutKind.MAX_IN_LOWER if rational_root(alpha) is not None else CutKind.GAP
    assert kind is not CutKind.JUMP
    return kind


def interleaved_cut_sequence(alpha: RealAlgebraic, count: int) -> list[Fraction]:
    """
    r_1 <= r_3 <= ... <= r_4 <= r_2 with odd terms in L, even terms in U and
    r_{2j} - r_{2j-1} < 1/j, for j = 1..count.
    """
    if count < 1:
        raise InvalidArgumentError("Need at least one pair")
    out: list[Fraction] = []
    upper: Fraction | None = None
    for j in range(1, count + 1):
        alpha = refine(alpha, Fraction(1, 2 * j))
        if alpha.is_exact:
            candidate = alpha.lo + Fraction(1, 2 * j)
            upper = candidate if upper is None else min(upper, candidate)
            out.extend((alpha.lo, upper))
        else:
            upper = alpha.hi
            out.extend((alpha.lo, alpha.hi))
    return out
