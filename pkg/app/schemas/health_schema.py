from pydantic import BaseModel


class LivenessResponse(BaseModel):
    status: str
