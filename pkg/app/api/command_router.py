from fastapi import APIRouter, status
from fastapi.responses import JSONResponse

from app.core.schemas import CommandResponse
from app.schemas.command_schema import Command
from app.services.command_service import respond

router = APIRouter()


@router.post(
    "/",
    summary="Run a command",
    status_code=status.HTTP_200_OK,
    tags=["Commands"],
    response_model=CommandResponse,
    responses={
        400: {"model": CommandResponse, "description": "An argument does not parse"},
        422: {"model": CommandResponse, "description": "The mathematics has no answer"},
    },
)
def run_command(body: Command):
    """
    Run one command of the CLI command set.

    The body is a command discriminated by `kind`; the response is the same
    envelope `hyperivt --json` prints.
    """
    response, error = respond(body, surface="api")
    if error is not None:
        return JSONResponse(status_code=error.status_code, content=response.model_dump())
    return response
