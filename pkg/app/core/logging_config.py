import json
import logging
from typing import Any

from app.core.context import command_ctx, correlation_id_ctx
from app.core.enums import Environment
from app.core.settings import settings


class ContextFilter(logging.Filter):
    """Stamp every record with the correlation id, the running command and trace ids."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.correlation_id = correlation_id_ctx.get("") or "-"
        record.command = command_ctx.get("") or "-"
        try:
            from opentelemetry import trace

            ctx = trace.get_current_span().get_span_context()
            record.trace_id = format(ctx.trace_id, "032x") if ctx.is_valid else "-"
            record.span_id = format(ctx.span_id, "016x") if ctx.is_valid else "-"
        except Exception:
            record.trace_id = "-"
            record.span_id = "-"
        return True


class JsonFormatter(logging.Formatter):
    """One JSON object per record, for log aggregation."""

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "ts": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "logger": record.name,
            "line": record.lineno,
            "correlation_id": getattr(record, "correlation_id", "-"),
            "command": getattr(record, "command", "-"),
            "trace_id": getattr(record, "trace_id", "-"),
            "span_id": getattr(record, "span_id", "-"),
            "msg": record.getMessage(),
        }
        if record.exc_info:
            payload["exc"] = self.formatException(record.exc_info)
        return json.dumps(payload)


def build_log_config(level: str, formatter: str) -> dict[str, Any]:
    """
    dictConfig mapping with one stderr console handler.

    stdout is reserved for CLI results, so every record, uvicorn's included,
    goes to stderr.
    """
    console = {"handlers": ["console"], "level": level, "propagate": False}
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "filters": {
            "context": {"()": "app.core.logging_config.ContextFilter"},
        },
        "formatters": {
            "standard": {
                "format": "[{asctime}] [{levelname}] [{correlation_id}] [{command}] {name}:{lineno} - {message}",
                "datefmt": "%Y-%m-%d %H:%M:%S %z",
                "style": "{",
            },
            "json": {
                "()": "app.core.logging_config.JsonFormatter",
                "datefmt": "%Y-%m-%dT%H:%M:%S%z",
            },
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "level": level,
                "formatter": formatter,
                "filters": ["context"],
                "stream": "ext://sys.stderr",
            },
        },
        "loggers": {
            "": dict(console),
            "uvicorn": dict(console),
            "uvicorn.access": dict(console),
        },
    }


_formatter = "standard" if settings.app.environment == Environment.LOCAL else "json"

log_config = build_log_config(settings.app.log_level or "INFO", _formatter)


def cli_log_config(level: str) -> dict[str, Any]:
    """The service configuration with the console threshold set by -v."""
    return build_log_config(level, _formatter)
