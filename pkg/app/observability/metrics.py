from logging import getLogger

from opentelemetry import metrics
from opentelemetry.metrics import Counter, Histogram

logger = getLogger(__name__)


class _Instruments:
    """Holds all OTel metric instruments; populated once by create_metrics()."""

    commands_executed: Counter | None = None
    refinement_levels: Histogram | None = None
    hyper_levels_skipped: Counter | None = None
    ultrafilter_dependent: Counter | None = None
    instrumentation_failures: Counter | None = None


_m = _Instruments()


def create_metrics():
    """Create all metric instruments; call after init_telemetry() sets the provider."""
    if _m.commands_executed is not None:
        return

    meter = metrics.get_meter(__name__)

    _m.commands_executed = meter.create_counter(
        "app.commands.executed_total", description="Commands dispatched, by outcome"
    )
    _m.refinement_levels = meter.create_histogram(
        "app.ivt.refinement_levels", description="Grid levels run per IVT call"
    )
    _m.hyper_levels_skipped = meter.create_counter(
        "app.hyper_ivt.levels_skipped_total",
        description="Hyper-IVT levels skipped (undefined or no sign change)",
    )
    _m.ultrafilter_dependent = meter.create_counter(
        "app.ultrapower.ultrafilter_dependent_total",
        description="Sequence verdicts that depend on the ultrafilter",
    )
    _m.instrumentation_failures = meter.create_counter(
        "app.instrumentation.failures_total", description="Instrumentation failures"
    )


def _safe_add(counter, value, labels):
    try:
        if counter is not None:
            counter.add(value, labels)
    except Exception:
        pass  # never let metrics crash a computation


def _safe_record(histogram, value, labels):
    try:
        if histogram is not None:
            histogram.record(value, labels)
    except Exception:
        pass


def record_command(command: str, status: str, surface: str):
    labels = {"command": command, "status": status, "surface": surface}
    _safe_add(_m.commands_executed, 1, labels)


def record_refinement_levels(levels: int):
    _safe_record(_m.refinement_levels, levels, {})


def record_hyper_level_skipped(reason: str):
    _safe_add(_m.hyper_levels_skipped, 1, {"reason": reason})


def record_ultrafilter_dependent(operation: str):
    _safe_add(_m.ultrafilter_dependent, 1, {"operation": operation})


def record_instrumentation_failure(component: str):
    labels = {"component": component}
    _safe_add(_m.instrumentation_failures, 1, labels)
