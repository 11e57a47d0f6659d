import os
from logging import getLogger

from opentelemetry import metrics, trace
from opentelemetry.exporter.otlp.proto.grpc.metric_exporter import OTLPMetricExporter
from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
from opentelemetry.instrumentation.fastapi import FastAPIInstrumentor
from opentelemetry.sdk.metrics import MeterProvider
from opentelemetry.sdk.metrics.export import PeriodicExportingMetricReader
from opentelemetry.sdk.resources import SERVICE_NAME, SERVICE_VERSION, Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor

from app.core.settings import settings
from app.observability.metrics import create_metrics, record_instrumentation_failure

logger = getLogger(__name__)

# Providers can be installed once per process; the CLI and the app share them.
_providers: dict[str, object] = {}


def get_environment() -> str:
    """Get environment - prefers OTEL_ENVIRONMENT but falls back to ENV."""
    return os.getenv("OTEL_ENVIRONMENT", os.getenv("ENV", "dev"))


def get_tracer() -> trace.Tracer:
    return trace.get_tracer("app.services")


def _resource() -> Resource:
    engine = settings.engine
    return Resource.create(
        {
            SERVICE_NAME: os.getenv("OTEL_SERVICE_NAME", "hyperreal-ivt"),
            SERVICE_VERSION: os.getenv("OTEL_SERVICE_VERSION", "0.1.0"),
            "deployment.environment": get_environment(),
            "engine.default_width": engine.default_width_raw,
            "engine.default_levels": engine.default_levels,
            "engine.grid_count": engine.grid_count,
        }
    )


def _install_providers() -> None:
    otlp_endpoint = os.getenv("OTEL_EXPORTER_OTLP_ENDPOINT", "").strip() or None
    resource = _resource()

    tp = TracerProvider(resource=resource)
    if otlp_endpoint:
        tp.add_span_processor(
            BatchSpanProcessor(OTLPSpanExporter(endpoint=otlp_endpoint, insecure=True))
        )
    trace.set_tracer_provider(tp)

    readers = []
    if otlp_endpoint:
        readers.append(
            PeriodicExportingMetricReader(
                OTLPMetricExporter(endpoint=otlp_endpoint, insecure=True),
                export_interval_millis=5000,
            )
        )
    # Without an endpoint the provider still backs the metric API, exporting nowhere.
    mp = MeterProvider(resource=resource, metric_readers=readers)
    metrics.set_meter_provider(mp)

    create_metrics()
    _providers.update(tracer_provider=tp, meter_provider=mp)
    logger.debug("Telemetry initialised (OTLP endpoint: %s)", otlp_endpoint or "none")


def init_telemetry(app=None):
    """
    Initialize traces + metrics once per process.
    - app: FastAPI app instance (optional). The CLI calls this without one.
    """
    if not _providers:
        _install_providers()

    if app is not None:
        try:
            FastAPIInstrumentor.instrument_app(app)
        except Exception as e:
            logger.warning(f"FastAPI auto-instrumentation failed: {e}.")
            record_instrumentation_failure("fastapi")

    return dict(_providers)
