from collections.abc import Mapping

from fastapi import status

PARSE_EXIT_CODE = 2
DOMAIN_EXIT_CODE = 3


class AppError(Exception):
    """Base class for errors mapped to HTTP responses and CLI exit codes."""

    status_code: int = status.HTTP_500_INTERNAL_SERVER_ERROR
    exit_code: int = 1
    error_code: str = "internal_error"
    default_message: str = "Internal error"

    def __init__(self, message: str | None = None):
        self.message = message or self.default_message
        super().__init__(self.message)


class ParseError(AppError):
    status_code = status.HTTP_400_BAD_REQUEST
    exit_code = PARSE_EXIT_CODE
    error_code = "parse_error"
    default_message = "Could not parse input"


class DomainError(AppError):
    """A well-formed request whose mathematics has no answer."""

    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    exit_code = DOMAIN_EXIT_CODE
    error_code = "domain_error"
    default_message = "Domain error"


class DivisionByZeroError(DomainError):
    error_code = "division_by_zero"
    default_message = "Division by zero"


class EventuallyZeroDivisorError(DomainError):
    error_code = "eventually_zero_divisor"
    default_message = "Divisor sequence is zero from some index on"


class UltrafilterDependentError(DomainError):
    """
    The verdict differs between residue classes of the index.

    Which answer is right depends on which residue class the (fixed,
    nonprincipal) ultrafilter contains, so no answer is returned.
    """

    error_code = "ultrafilter_dependent"
    default_message = "Verdict depends on the choice of ultrafilter"

    def __init__(
        self,
        message: str | None = None,
        verdicts: Mapping[int, str] | None = None,
        period: int | None = None,
    ):
        self.verdicts = dict(verdicts or {})
        self.period = period
        if message is None and self.verdicts and period is not None:
            parts = ", ".join(
                f"n = {residue} mod {period}: {verdict}"
                for residue, verdict in sorted(self.verdicts.items())
            )
            message = f"{self.default_message} ({parts})"
        super().__init__(message)


class NotLimitedError(DomainError):
    error_code = "not_limited"
    default_message = "Element is infinite"


class NotRationalFunctionError(DomainError):
    error_code = "not_rational_function"
    default_message = "Sequence contains a periodic selector"


class NoSignChangeError(DomainError):
    error_code = "no_sign_change"
    default_message = "Polynomial does not change sign on the interval"


class NegativeRadicandError(DomainError):
    error_code = "negative_radicand"
    default_message = "Square root of a negative number"


class DegenerateIntervalError(DomainError):
    error_code = "degenerate_interval"
    default_message = "Interval lower end must be below its upper end"


class UndefinedInstantiationError(DomainError):
    error_code = "undefined_instantiation"
    default_message = "Denominator vanishes at this index"


class NotIsolatingError(DomainError):
    error_code = "not_isolating"
    default_message = "Interval does not contain exactly one root"


class InvalidArgumentError(DomainError):
    error_code = "invalid_argument"
    default_message = "Invalid argument"
