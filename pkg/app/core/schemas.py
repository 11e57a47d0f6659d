from typing import Any, Literal

from pydantic import BaseModel


class CommandResponse(BaseModel):
    """Envelope shared by the CLI JSON mode and the HTTP API."""

    command: str | None
    status: Literal["success", "error"]
    result: dict[str, Any] | None = None
    error_code: str | None = None
    error_message: str | None = None
