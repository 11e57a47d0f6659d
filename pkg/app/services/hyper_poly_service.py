"""
Polynomials over the extension: the star extension of a rational
polynomial, microcontinuity, and the intermediate value theorem for
polynomials whose coefficients are elements of Q(w).

A Q(w) coefficient is a sequence of rationals seen from far away. The IVT
here works the way the existence proof does: instantiate every coefficient
and endpoint at w = n for each level n of a grid schedule, solve the
resulting rational problem on a grid of mesh 1/n, and read the root as the
sequence of per-level midpoints. The residual of that sequence is then
classified in Q(w).
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import TypeAlias

import sympy
from sympy.polys.polyerrors import BasePolynomialError
from sympy.polys.polyfuncs import rational_interpolate

from app.core.enums import Classification, ResidualSource
from app.core.exceptions import (
    DegenerateIntervalError,
    InvalidArgumentError,
    NegativeRadicandError,
    NoSignChangeError,
    NotLimitedError,
    UndefinedInstantiationError,
)
from app.core.settings import settings
from app.models.algebraic_model import IsolatingInterval
from app.models.polynomial_model import Polynomial
from app.models.rfunc_model import RFunc
from app.models.seq_model import HyperSeq
from app.observability.metrics import record_hyper_level_skipped
from app.services.hyperreal_service import infinitely_close, rf_classify, to_seq
from app.services.root_service import cauchy_bound, ivt_grid_root

logger = logging.getLogger(__name__)

HyperPolynomial: TypeAlias = Polynomial[RFunc]


@dataclass(frozen=True)
class GridSchedule:
    """Finite prefix n_1 < n_2 < ... of a hyperfine grid's refinement levels."""

    levels: tuple[int, ...]

    def __post_init__(self) -> None:
        levels = tuple(self.levels)
        if not levels:
            raise InvalidArgumentError("A grid schedule needs at least one level")
        if levels[0] < 2:
            raise InvalidArgumentError("The first grid level must be at least 2")
        if any(b <= a for a, b in zip(levels, levels[1:], strict=False)):
            raise InvalidArgumentError("Grid levels must be strictly increasing")
        object.__setattr__(self, "levels", levels)

    @classmethod
    def dyadic(cls, count: int | None = None) -> GridSchedule:
        """n_j = 2^j for j = 1..count."""
        count = settings.engine.default_levels if count is None else count
        if count < 1:
            raise InvalidArgumentError("A grid schedule needs at least one level")
        return cls(tuple(2**j for j in range(1, count + 1)))

    def extend(self, extra: int) -> GridSchedule:
        """Continue the schedule by doubling the last level."""
        levels = list(self.levels)
        for _ in range(extra):
            levels.append(2 * levels[-1])
        return GridSchedule(tuple(levels))

    def __len__(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class HyperIvtLevel:
    level: int
    interval: IsolatingInterval
    midpoint: Fraction
    residual: Fraction


@dataclass(frozen=True)
class HyperIvtResult:
    levels: tuple[HyperIvtLevel, ...]
    skipped: tuple[int, ...]
    residual: Classification
    residual_source: ResidualSource
    # Rational function of n through every midpoint, when there is one.
    root: RFunc | None = None
    residual_bound: RFunc | None = None

    @property
    def midpoints(self) -> list[Fraction]:
        return [level.midpoint for level in self.levels]

    @property
    def root_sequence(self) -> HyperSeq | None:
        return to_seq(self.root) if self.root is not None else None


def star_eval(f: Polynomial, a: RFunc) -> RFunc:
    """f*(a): f applied to a with Q(w) arithmetic."""
    return f.evaluate(RFunc.coerce(a))


def microcontinuity_check(
    f: Polynomial, a: RFunc, b: RFunc, require_limited: bool = True
) -> bool:
    """
    Whether f*(a) and f*(b) are infinitely close.

    This holds whenever a is limited and a and b are infinitely close. With
    require_limited=False an infinite a is evaluated anyway, which is how
    the necessity of that hypothesis shows up.
    """
    a, b = RFunc.coerce(a), RFunc.coerce(b)
    if require_limited and rf_classify(a) is Classification.INFINITE:
        raise NotLimitedError(f"{a} is infinite; microcontinuity needs a limited point")
    return infinitely_close(star_eval(f, a), star_eval(f, b))


def _instantiate(
    F: HyperPolynomial, a: RFunc, b: RFunc, n: int, grid: int | None
) -> HyperIvtLevel | str:
    """One level of the schedule, or the reason it was skipped."""
    try:
        f = F.map_coeffs(lambda c: c.evaluate_at(n))
        lo, hi = a.evaluate_at(n), b.evaluate_at(n)
    except UndefinedInstantiationError:
        return "undefined"
    if not lo < hi or not f.evaluate(lo) * f.evaluate(hi) < 0:
        return "no_sign_change"
    interval = ivt_grid_root(f, lo, hi, Fraction(1, n), grid)
    midpoint = interval.midpoint
    return HyperIvtLevel(n, interval, midpoint, f.evaluate(midpoint))


def _sympy_rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _to_rfunc(expr: sympy.Expr, n: sympy.Symbol) -> RFunc | None:
    num, den = sympy.fraction(sympy.cancel(expr))
    if (num.free_symbols | den.free_symbols) - {n}:
        return None
    polys = []
    for part in (num, den):
        coeffs = sympy.Poly(part, n).all_coeffs()
        if not all(c.is_Rational for c in coeffs):
            return None
        polys.append(
            Polynomial(tuple(Fraction(int(c.p), int(c.q)) for c in reversed(coeffs)))
        )
    if polys[1].is_zero():
        return None
    return RFunc(polys[0], polys[1])


def _agrees(candidate: RFunc, level: HyperIvtLevel) -> bool:
    try:
        return candidate.evaluate_at(level.level) == level.midpoint
    except UndefinedInstantiationError:
        return False


def fit_root(levels: list[HyperIvtLevel], max_degree: int | None = None) -> RFunc | None:
    """
    A rational function of n of total degree <= max_degree through every
    (level, midpoint) sample, if one exists.

    Candidates are interpolated from the finest levels and accepted only if
    they reproduce every sample exactly.
    """
    max_degree = settings.engine.fit_max_degree if max_degree is None else max_degree
    n = sympy.Symbol("n")
    for total in range(max_degree + 1):
        size = total + 1
        if len(levels) <= size:
            break
        data = [(sympy.Integer(s.level), _sympy_rational(s.midpoint)) for s in levels[-size:]]
        for degnum in range(total, -1, -1):
            try:
                fitted = rational_interpolate(data, degnum, X=n)
                candidate = _to_rfunc(fitted, n)
            except (ArithmeticError, ValueError, IndexError, BasePolynomialError):
                # singular sample system for this degree split
                continue
            if candidate is not None and all(_agrees(candidate, s) for s in levels):
                logger.debug("Midpoints fit %s at degree split %d/%d", candidate, degnum, total - degnum)
                return candidate
    return None


def derivative_bound(F: HyperPolynomial, a: RFunc, b: RFunc) -> RFunc:
    """sum i*|A_i|*R^(i-1) with R = max(|a|, |b|): bounds |F'| on [a, b]."""
    radius = max(abs(a), abs(b))
    total = RFunc.constant(0)
    for i, c in enumerate(F.coeffs):
        if i:
            total = total + i * abs(c) * radius ** (i - 1)
    return total


def hyper_ivt_root(
    F: HyperPolynomial,
    a: RFunc,
    b: RFunc,
    schedule: GridSchedule | None = None,
    grid: int | None = None,
    max_workers: int | None = None,
) -> HyperIvtResult:
    """
    Root of F on (a, b) as a sequence of per-level midpoints, with the
    magnitude class of the residual sequence F_n(c_n).

    Levels where a coefficient or endpoint is undefined, or where the
    instantiated problem has no sign change, are skipped; only finitely many
    can be, since the sign change holds in Q(w).
    """
    F = F.map_coeffs(RFunc.coerce)
    a, b = RFunc.coerce(a), RFunc.coerce(b)
    schedule = schedule or GridSchedule.dyadic()
    max_workers = settings.engine.max_workers if max_workers is None else max_workers
    if a == b:
        raise DegenerateIntervalError(f"Interval ({a}, {b}) is empty")
    if b < a:
        a, b = b, a
    fa, fb = F.evaluate(a), F.evaluate(b)
    if not (fa * fb).sign() < 0:
        raise NoSignChangeError(f"F({a}) = {fa} and F({b}) = {fb} do not differ in sign")

    def run(n: int) -> HyperIvtLevel | str:
        return _instantiate(F, a, b, n, grid)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            outcomes = list(pool.map(run, schedule.levels))
    else:
        outcomes = [run(n) for n in schedule.levels]

    levels: list[HyperIvtLevel] = []
    skipped: list[int] = []
    for n, outcome in zip(schedule.levels, outcomes, strict=True):
        if isinstance(outcome, str):
            logger.warning("Skipping level n = %d: %s", n, outcome)
            record_hyper_level_skipped(outcome)
            skipped.append(n)
        else:
            levels.append(outcome)
    if not levels:
        raise NoSignChangeError("No level of the schedule has a sign change")

    root = fit_root(levels)
    bound: RFunc | None = None
    if all(level.residual == 0 for level in levels):
        residual, source = Classification.ZERO, ResidualSource.EXACT
    elif root is not None:
        residual, source = rf_classify(F.evaluate(root)), ResidualSource.FITTED
    else:
        # |F_n(c_n)| <= D_n * (half the cell width 1/n)
        bound = derivative_bound(F, a, b) / (2 * RFunc.omega())
        residual, source = rf_classify(bound), ResidualSource.BOUND
        if not residual.is_infinitesimal:
            logger.warning("Residual bound %s is not infinitesimal", bound)

    logger.debug(
        "Hyper-IVT: %d levels, %d skipped, residual %s (%s)",
        len(levels),
        len(skipped),
        residual,
        source,
    )
    return HyperIvtResult(
        levels=tuple(levels),
        skipped=tuple(skipped),
        residual=residual,
        residual_source=source,
        root=root,
        residual_bound=bound,
    )


def hyper_sqrt(q: RFunc, schedule: GridSchedule | None = None, grid: int | None = None) -> HyperIvtResult:
    """Square root of q in Q(w) at the fidelity of the schedule."""
    q = RFunc.coerce(q)
    if q.sign() < 0:
        raise NegativeRadicandError(f"{q} has no square root")
    if q.is_zero():
        # 0 is the root of x, found exactly on the symmetric grid.
        identity: HyperPolynomial = Polynomial((RFunc.constant(0), RFunc.constant(1)))
        return hyper_ivt_root(identity, RFunc.constant(-1), RFunc.constant(1), schedule, grid)
    F: HyperPolynomial = Polynomial((-q, RFunc.constant(0), RFunc.constant(1)))
    hi = max(RFunc.constant(1), q) + 1
    return hyper_ivt_root(F, RFunc.constant(0), hi, schedule, grid)


def hyper_odd_degree_root(
    F: HyperPolynomial, schedule: GridSchedule | None = None, grid: int | None = None
) -> HyperIvtResult:
    """Root of an odd-degree F, searched on (-B, B) with B its Cauchy bound in Q(w)."""
    F = F.map_coeffs(RFunc.coerce)
    if F.degree < 1 or F.degree % 2 == 0:
        raise InvalidArgumentError(f"Degree {F.degree} is not odd")
    bound = RFunc.coerce(cauchy_bound(F))
    return hyper_ivt_root(F, -bound, bound, schedule, grid)
