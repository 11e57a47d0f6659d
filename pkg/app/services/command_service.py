"""Dispatch of parsed commands, shared by the CLI and the HTTP API."""

import logging
from fractions import Fraction
from typing import Any

from app.core.context import command_ctx
from app.core.enums import FieldKind
from app.core.exceptions import AppError, InvalidArgumentError
from app.core.schemas import CommandResponse
from app.core.settings import settings
from app.models.algebraic_model import IsolatingInterval, RealAlgebraic
from app.models.polynomial_model import Polynomial
from app.models.rational_model import format_rational, parse_rational
from app.models.rfunc_model import RFunc
from app.models.seq_model import HyperSeq
from app.observability.metrics import record_command
from app.observability.telemetry import get_tracer
from app.schemas.command_schema import (
    ClassifyCommand,
    Command,
    CompareCommand,
    CountRootsCommand,
    CutClassifyCommand,
    HyperIvtCommand,
    IsolateRootsCommand,
    IvtRootCommand,
    OddRootCommand,
    ShadowCommand,
    SqrtCommand,
)
from app.services.hyper_poly_service import GridSchedule, HyperIvtResult, hyper_ivt_root
from app.services.hyperreal_service import rf_classify, rf_compare, rf_shadow, to_seq
from app.services.root_service import (
    cut_classify,
    isolate_all_roots,
    isolate_root_in,
    ivt_grid_root,
    odd_degree_root,
    real_sqrt,
    sturm_count,
)
from app.services.ultrapower_service import (
    build_hyperseq,
    seq_classify,
    seq_compare,
    seq_shadow,
)
from app.utils.grammar import is_sequence_text, parse_element, parse_polynomial, parse_sequence

logger = logging.getLogger(__name__)


# argument parsing


def _rational_polynomial(text: str, field: FieldKind) -> Polynomial:
    poly = parse_polynomial(text, field)
    if field is FieldKind.Q:
        return poly
    coeffs = [c.as_rational() for c in poly.coeffs]
    if any(c is None for c in coeffs):
        raise InvalidArgumentError(f"{text!r} has coefficients outside Q")
    return Polynomial(tuple(coeffs))


def _width(text: str | None) -> Fraction:
    if text is None:
        return settings.engine.default_width
    width = parse_rational(text)
    if width <= 0:
        raise InvalidArgumentError("Width must be positive")
    return width


def _element(text: str) -> RFunc | HyperSeq:
    if is_sequence_text(text):
        return build_hyperseq(parse_sequence(text))
    return parse_element(text)


# result rendering


def _interval(interval: IsolatingInterval) -> dict[str, str]:
    return {
        "kind": interval.kind.value,
        "lo": format_rational(interval.lo),
        "hi": format_rational(interval.hi),
    }


def _algebraic(alpha: RealAlgebraic) -> dict[str, str]:
    return {"defining": str(alpha.defining), **_interval(alpha.interval)}


def _hyper_result(result: HyperIvtResult) -> dict[str, Any]:
    return {
        "residual": result.residual.value,
        "residual_source": result.residual_source.value,
        "root": str(result.root) if result.root is not None else None,
        "residual_bound": str(result.residual_bound) if result.residual_bound is not None else None,
        "skipped": list(result.skipped),
        "levels": [
            {
                "level": level.level,
                **_interval(level.interval),
                "midpoint": format_rational(level.midpoint),
                "residual": format_rational(level.residual),
            }
            for level in result.levels
        ],
    }


# dispatch


def execute(command: Command) -> dict[str, Any]:
    """Run one command and return its JSON-ready result; raises AppError."""
    match command:
        case IsolateRootsCommand():
            poly = _rational_polynomial(command.poly, command.field)
            width = _width(command.width) if command.width is not None else None
            roots = isolate_all_roots(poly, width, command.grid)
            return {"roots": [_algebraic(alpha) for alpha in roots]}
        case CountRootsCommand():
            poly = _rational_polynomial(command.poly, command.field)
            count = sturm_count(poly, parse_rational(command.lo), parse_rational(command.hi))
            return {"count": count}
        case IvtRootCommand():
            poly = _rational_polynomial(command.poly, command.field)
            interval = ivt_grid_root(
                poly,
                parse_rational(command.a),
                parse_rational(command.b),
                _width(command.width),
                command.grid,
            )
            return _interval(interval)
        case OddRootCommand():
            poly = _rational_polynomial(command.poly, command.field)
            return _algebraic(odd_degree_root(poly, _width(command.width), command.grid))
        case SqrtCommand():
            alpha = real_sqrt(parse_rational(command.q), _width(command.width), command.grid)
            return _algebraic(alpha)
        case ClassifyCommand():
            value = _element(command.element)
            kind = seq_classify(value) if isinstance(value, HyperSeq) else rf_classify(value)
            return {"classification": kind.value, "label": kind.label}
        case ShadowCommand():
            value = _element(command.element)
            shadow = seq_shadow(value) if isinstance(value, HyperSeq) else rf_shadow(value)
            return {"shadow": format_rational(shadow)}
        case CompareCommand():
            left, right = _element(command.left), _element(command.right)
            if isinstance(left, HyperSeq) or isinstance(right, HyperSeq):
                left = left if isinstance(left, HyperSeq) else to_seq(left)
                right = right if isinstance(right, HyperSeq) else to_seq(right)
                ordering = seq_compare(left, right)
            else:
                ordering = rf_compare(left, right)
            return {"ordering": ordering.value}
        case CutClassifyCommand():
            poly = _rational_polynomial(command.poly, command.field)
            alpha = isolate_root_in(poly, parse_rational(command.lo), parse_rational(command.hi))
            return {"cut": cut_classify(alpha).value, "root": _algebraic(alpha)}
        case HyperIvtCommand():
            poly = parse_polynomial(command.poly, command.field)
            result = hyper_ivt_root(
                poly,
                parse_element(command.a),
                parse_element(command.b),
                GridSchedule.dyadic(command.levels),
                command.grid,
            )
            return _hyper_result(result)
    raise InvalidArgumentError(f"Unknown command {command!r}")


def respond(command: Command, surface: str) -> tuple[CommandResponse, AppError | None]:
    """Execute and wrap the outcome in the shared envelope."""
    token = command_ctx.set(command.kind)
    try:
        with get_tracer().start_as_current_span(f"command {command.kind}") as span:
            span.set_attribute("command.surface", surface)
            logger.info("Dispatching %s from %s", command.kind, surface)
            try:
                result = execute(command)
            except AppError as exc:
                logger.info("%s failed: %s (%s)", command.kind, exc.error_code, exc.message)
                span.set_attribute("command.error_code", exc.error_code)
                record_command(command.kind, "error", surface)
                response = CommandResponse(
                    command=command.kind,
                    status="error",
                    error_code=exc.error_code,
                    error_message=exc.message,
                )
                return response, exc
    finally:
        command_ctx.reset(token)
    record_command(command.kind, "success", surface)
    return CommandResponse(command=command.kind, status="success", result=result), None
