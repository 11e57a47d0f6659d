"""
Tests for polynomials over Q(w).

Tests cover:
- Star evaluation and microcontinuity
- Grid schedules
- The hyper-coefficient IVT: per-level witnesses, skipped levels, residual
  classification, fitted root sequences and the derivative bound
- Square roots and odd-degree roots in Q(w)
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.enums import Classification, FieldKind, Ordering, ResidualSource
from app.core.exceptions import (
    DegenerateIntervalError,
    InvalidArgumentError,
    NegativeRadicandError,
    NoSignChangeError,
    NotLimitedError,
)
from app.models.rfunc_model import RFunc
from app.services.hyper_poly_service import (
    GridSchedule,
    derivative_bound,
    fit_root,
    hyper_ivt_root,
    hyper_odd_degree_root,
    hyper_sqrt,
    microcontinuity_check,
    star_eval,
)
from app.services.hyperreal_service import rf_classify, rf_shadow
from app.services.root_service import poly_eval
from app.services.ultrapower_service import seq_compare
from tests.factories import (
    ElementFactory,
    PolynomialFactory,
    infinitesimals,
    polynomials,
    rationals,
)

E = ElementFactory.build
W = RFunc.omega()


def hyper(text: str):
    return PolynomialFactory.parse(text, FieldKind.QW)


@pytest.mark.unit
class TestStarEval:
    def test_examples(self):
        f = PolynomialFactory.parse("x^2 - 2")
        assert star_eval(f, 1 / W) == E("1/w^2 - 2")
        assert star_eval(f, E("1 + 1/w")) == E("-1 + 2/w + 1/w^2")
        assert star_eval(PolynomialFactory.parse("x"), W) == W

    def test_rational_argument_agrees_with_q(self):
        f = PolynomialFactory.parse("x^3 - x - 1")
        assert star_eval(f, RFunc.constant(Fraction(3, 2))) == f.evaluate(Fraction(3, 2))

    @given(f=polynomials(max_degree=5), r=rationals())
    @settings(max_examples=100, deadline=None)
    def test_extends_rational_evaluation(self, f, r):
        assert star_eval(f, RFunc.constant(r)) == f.evaluate(r)

    @given(f=polynomials(max_degree=5), r=rationals(), eps=infinitesimals())
    @settings(max_examples=200, deadline=None)
    def test_shadow_commutes_with_evaluation(self, f, r, eps):
        a = r + eps
        assert rf_shadow(star_eval(f, a)) == poly_eval(f, rf_shadow(a))


@pytest.mark.unit
class TestMicrocontinuity:
    def test_cubic_near_two(self):
        f = PolynomialFactory.parse("x^3 + x")
        assert microcontinuity_check(f, RFunc.constant(2), E("2 + 1/w"))

    def test_constant_polynomial(self):
        f = PolynomialFactory.parse("5")
        assert microcontinuity_check(f, RFunc.constant(0), 1 / W)

    def test_infinite_point_rejected(self):
        f = PolynomialFactory.parse("x^2")
        with pytest.raises(NotLimitedError):
            microcontinuity_check(f, W, W + 1 / W)

    def test_limited_hypothesis_is_needed(self):
        f = PolynomialFactory.parse("x^2")
        # (w + 1/w)^2 - w^2 = 2 + 1/w^2 is appreciable
        assert not microcontinuity_check(f, W, W + 1 / W, require_limited=False)

    @pytest.mark.slow
    @given(
        f=polynomials(max_degree=8, bound=5),
        r=rationals(),
        eps=infinitesimals(),
    )
    @settings(max_examples=300, deadline=None)
    def test_random_limited_points(self, f, r, eps):
        a = RFunc.constant(r)
        assert microcontinuity_check(f, a, a + eps)


@pytest.mark.unit
class TestGridSchedule:
    def test_dyadic_default(self):
        schedule = GridSchedule.dyadic()
        assert len(schedule) == 32
        assert schedule.levels[0] == 2
        assert schedule.levels[-1] == 2**32

    def test_dyadic_count(self):
        assert GridSchedule.dyadic(4).levels == (2, 4, 8, 16)

    def test_extend(self):
        assert GridSchedule.dyadic(2).extend(2).levels == (2, 4, 8, 16)
        assert GridSchedule((3, 10)).extend(1).levels == (3, 10, 20)

    @pytest.mark.parametrize("levels", [(), (1, 2), (4, 4), (8, 4)])
    def test_invalid(self, levels):
        with pytest.raises(InvalidArgumentError):
            GridSchedule(levels)

    def test_dyadic_needs_a_level(self):
        with pytest.raises(InvalidArgumentError):
            GridSchedule.dyadic(0)


@pytest.mark.unit
class TestHyperIvtRoot:
    def test_sqrt_of_two_plus_infinitesimal(self):
        result = hyper_ivt_root(hyper("x^2 - (2 + 1/w)"), RFunc.constant(0), RFunc.constant(2))
        assert result.residual.is_infinitesimal
        assert len(result.levels) == 32
        assert result.skipped == ()
        for level in result.levels:
            n = level.level
            c = level.midpoint
            assert (c + Fraction(1, n)) ** 2 > 2
            assert c - Fraction(1, n) < 0 or (c - Fraction(1, n)) ** 2 < 2

    def test_each_level_brackets_its_sign_change(self):
        F = hyper("x^2 - (2 + 1/w)")
        result = hyper_ivt_root(F, RFunc.constant(0), RFunc.constant(2), GridSchedule.dyadic(10))
        for level in result.levels:
            f = F.map_coeffs(lambda c, n=level.level: c.evaluate_at(n))
            assert level.interval.holds_for(f)
            assert level.interval.width <= Fraction(1, level.level)
            assert level.residual == f.evaluate(level.midpoint)

    def test_exact_root_sequence_is_fitted(self):
        result = hyper_ivt_root(hyper("x - 1/w"), RFunc.constant(-1), RFunc.constant(1), GridSchedule.dyadic(4))
        assert [level.midpoint for level in result.levels] == [
            Fraction(1, 2),
            Fraction(1, 4),
            Fraction(1, 8),
            Fraction(1, 16),
        ]
        assert result.residual is Classification.ZERO
        assert result.residual_source is ResidualSource.EXACT
        assert result.root == 1 / W
        assert result.root_sequence is not None
        assert seq_compare(result.root_sequence, ElementFactory.sequence("1/n")) is Ordering.EQUAL

    def test_constant_root(self):
        result = hyper_ivt_root(hyper("x^3 - 1"), RFunc.constant(0), RFunc.constant(2))
        assert result.residual_source is ResidualSource.EXACT
        assert result.root == 1

    def test_fitted_root_with_nonzero_residuals(self):
        # 1/3 is not dyadic, so no level lands on it exactly
        result = hyper_ivt_root(hyper("3*x - 1"), RFunc.constant(0), RFunc.constant(1), GridSchedule.dyadic(12))
        # midpoints are 1/3 + (-1)^j/(6n): the alternation fits no rational function
        assert result.root is None
        assert result.residual_source is ResidualSource.BOUND
        assert result.residual_bound == 3 / (2 * W)
        assert result.residual is Classification.INFINITESIMAL
        assert all(level.residual != 0 for level in result.levels)

    def test_bound_source_reports_bound(self):
        result = hyper_ivt_root(hyper("x^2 - (2 + 1/w)"), RFunc.constant(0), RFunc.constant(2), GridSchedule.dyadic(16))
        assert result.residual_source is ResidualSource.BOUND
        assert result.residual_bound == 2 / W
        assert result.residual is Classification.INFINITESIMAL

    @pytest.mark.parametrize(
        "text, a, b", [("x^2 - 2", 0, 2), ("x^3 - x - 1", 1, 2), ("3*x - 1", 0, 1), ("x - 1/4", -1, 1)]
    )
    def test_levels_nest_under_dyadic_schedule(self, text, a, b):
        result = hyper_ivt_root(
            hyper(text), RFunc.constant(a), RFunc.constant(b), GridSchedule.dyadic(12), grid=2
        )
        for outer, inner in zip(result.levels, result.levels[1:], strict=False):
            assert outer.interval.lo <= inner.interval.lo <= inner.interval.hi <= outer.interval.hi

    def test_infinite_endpoints(self):
        result = hyper_ivt_root(hyper("x - w"), RFunc.constant(0), 2 * W, GridSchedule.dyadic(6))
        assert result.residual_source is ResidualSource.EXACT
        assert result.root == W

    def test_skipped_levels(self, caplog):
        # the coefficient 1/(w - 4) is undefined at w = 4
        F = hyper("x - 1/(w - 4)")
        with caplog.at_level("WARNING"):
            result = hyper_ivt_root(F, RFunc.constant(-1), RFunc.constant(1), GridSchedule.dyadic(5))
        assert 4 in result.skipped
        assert 4 not in [level.level for level in result.levels]
        assert "Skipping level n = 4" in caplog.text

    def test_level_without_sign_change_skipped(self):
        # at n = 2 the root 1/2 + 1/n sits on the endpoint 1
        F = hyper("x - (1/2 + 1/w)")
        result = hyper_ivt_root(F, RFunc.constant(0), RFunc.constant(1), GridSchedule.dyadic(4))
        assert result.skipped == (2,)
        assert [level.midpoint for level in result.levels] == [
            Fraction(3, 4),
            Fraction(5, 8),
            Fraction(9, 16),
        ]
        assert result.residual is Classification.ZERO

    def test_endpoints_swapped(self):
        forward = hyper_ivt_root(hyper("x - 1/w"), RFunc.constant(-1), RFunc.constant(1), GridSchedule.dyadic(3))
        backward = hyper_ivt_root(hyper("x - 1/w"), RFunc.constant(1), RFunc.constant(-1), GridSchedule.dyadic(3))
        assert forward.midpoints == backward.midpoints

    def test_thread_pool_matches_sequential(self):
        F = hyper("x^2 - (2 + 1/w)")
        sequential = hyper_ivt_root(F, RFunc.constant(0), RFunc.constant(2), GridSchedule.dyadic(8))
        pooled = hyper_ivt_root(F, RFunc.constant(0), RFunc.constant(2), GridSchedule.dyadic(8), max_workers=4)
        assert pooled.midpoints == sequential.midpoints

    def test_no_sign_change(self):
        with pytest.raises(NoSignChangeError):
            hyper_ivt_root(hyper("x^2 + 1/w"), RFunc.constant(-1), RFunc.constant(1))

    def test_degenerate(self):
        with pytest.raises(DegenerateIntervalError):
            hyper_ivt_root(hyper("x"), W, W)

    @given(
        r=st.fractions(min_value=-5, max_value=5, max_denominator=7),
        eps=infinitesimals(max_degree=2),
    )
    @settings(max_examples=25, deadline=None)
    def test_linear_root_near_rational(self, r, eps):
        F = hyper("x").map_coeffs(RFunc.coerce) - (r + eps)
        result = hyper_ivt_root(F, RFunc.constant(-10), RFunc.constant(10), GridSchedule.dyadic(12))
        assert result.residual.is_infinitesimal


@pytest.mark.unit
class TestDerivativeBound:
    def test_quadratic(self):
        F = hyper("x^2 - (2 + 1/w)")
        assert derivative_bound(F, RFunc.constant(0), RFunc.constant(2)) == 4

    def test_infinite_coefficient(self):
        F = hyper("w*x^2 + x")
        assert derivative_bound(F, RFunc.constant(-1), RFunc.constant(1)) == 2 * W + 1


@pytest.mark.unit
class TestFitRoot:
    def test_needs_more_samples_than_unknowns(self):
        result = hyper_ivt_root(hyper("x - 1/w"), RFunc.constant(-1), RFunc.constant(1), GridSchedule.dyadic(1))
        assert fit_root(list(result.levels)) is None

    def test_degree_cap(self):
        result = hyper_ivt_root(hyper("x - 1/w"), RFunc.constant(-1), RFunc.constant(1), GridSchedule.dyadic(6))
        assert fit_root(list(result.levels), max_degree=0) is None
        assert fit_root(list(result.levels), max_degree=1) == 1 / W


@pytest.mark.unit
class TestHyperRealClosedness:
    def test_sqrt_of_infinitesimal_shift(self):
        result = hyper_sqrt(E("4 + 1/w"), GridSchedule.dyadic(10))
        assert result.residual.is_infinitesimal
        assert all(Fraction(19, 10) < c < Fraction(21, 10) for c in result.midpoints[3:])

    def test_sqrt_of_zero(self):
        result = hyper_sqrt(RFunc.constant(0), GridSchedule.dyadic(5))
        assert result.residual is Classification.ZERO
        assert result.root == 0

    def test_sqrt_of_square(self):
        result = hyper_sqrt(E("1/w^2"), GridSchedule.dyadic(6))
        assert result.residual_source is ResidualSource.EXACT
        assert result.root == 1 / W

    def test_sqrt_of_omega_bound_stays_appreciable(self):
        # level residuals shrink like 1/sqrt(n), below every appreciable but above every 1/w^k
        result = hyper_sqrt(W, GridSchedule.dyadic(8))
        assert result.root is None
        assert result.residual_source is ResidualSource.BOUND
        assert result.residual_bound == (W + 1) / W
        assert result.residual is Classification.APPRECIABLE
        for level in result.levels:
            assert level.residual**2 * level.level <= 4

    def test_sqrt_of_negative(self):
        with pytest.raises(NegativeRadicandError):
            hyper_sqrt(-1 / W)

    def test_odd_degree(self):
        result = hyper_odd_degree_root(hyper("x^3 - 1/w"), GridSchedule.dyadic(8))
        assert result.residual.is_infinitesimal

    def test_odd_degree_with_infinite_coefficient(self):
        result = hyper_odd_degree_root(hyper("x - w"), GridSchedule.dyadic(6))
        assert result.residual.is_infinitesimal
        for level in result.levels:
            assert abs(level.midpoint - level.level) <= Fraction(1, level.level)

    def test_even_degree_rejected(self):
        with pytest.raises(InvalidArgumentError):
            hyper_odd_degree_root(hyper("x^2 - w"))
