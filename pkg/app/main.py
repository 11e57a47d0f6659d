from logging import getLogger
from logging.config import dictConfig

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.middleware.trustedhost import TrustedHostMiddleware
from fastapi.responses import JSONResponse

from app.api.command_router import router as command_router
from app.api.health_router import router as health_router
from app.core.exceptions import AppError
from app.core.logging_config import log_config
from app.core.middleware import CORRELATION_HEADER, CorrelationIDMiddleware
from app.core.schemas import CommandResponse
from app.core.settings import settings
from app.observability.telemetry import init_telemetry

logger = getLogger(__name__)

dictConfig(log_config)


app = FastAPI(
    title="Hyperreal IVT",
    description="Exact real root isolation over Q and the intermediate value theorem over the non-Archimedean field Q(w).",
    version="0.1.0",
    docs_url="/docs",
    openapi_url="/openapi.json",
)


# Network/Server Level (For Allowing Server to Server Communication)
app.add_middleware(TrustedHostMiddleware, allowed_hosts=settings.core.allowed_hosts)

# Protection from Browser/Application Level (For Allowing Browser to Server Communication)
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.core.cors_origins,
    allow_credentials=False,
    allow_methods=["GET", "POST", "OPTIONS"],
    allow_headers=["Content-Type", CORRELATION_HEADER],
)

app.add_middleware(CorrelationIDMiddleware)

app.include_router(health_router, prefix="/api/v1/health", tags=["Health"])
app.include_router(command_router, prefix="/api/v1/commands", tags=["Commands"])

# Initialize telemetry (instruments FastAPI and adds auto-tracing)
init_telemetry(app=app)


# Exception Handlers: every error body is the CommandResponse envelope
def _error_response(status_code: int, error_code: str, message: str, **extra) -> JSONResponse:
    body = CommandResponse(
        command=None, status="error", error_code=error_code, error_message=message
    ).model_dump()
    return JSONResponse(status_code=status_code, content={**body, **extra})


@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    errors = [
        {"type": e.get("type"), "loc": e.get("loc"), "msg": e.get("msg")}
        for e in exc.errors()
    ]
    return _error_response(422, "validation_error", "Validation Failed", errors=errors)


@app.exception_handler(HTTPException)
async def http_exception_handler(request: Request, exc: HTTPException):
    return _error_response(exc.status_code, "http_error", str(exc.detail))


@app.exception_handler(AppError)
async def app_error_handler(request: Request, exc: AppError):
    return _error_response(exc.status_code, exc.error_code, exc.message)


@app.exception_handler(Exception)
async def unhandled_exception_handler(request: Request, exc: Exception):
    logger.error("Unhandled error processing %s", request.url.path, exc_info=exc)
    return _error_response(500, "internal_error", "Internal Server Error")
