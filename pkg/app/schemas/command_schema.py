from typing import Annotated, Literal

from pydantic import BaseModel, Field, TypeAdapter

from app.core.enums import FieldKind


class _CommandBase(BaseModel):
    width: str | None = Field(None, description="Interval width as a rational, e.g. 1/4294967296")
    grid: int | None = Field(None, ge=2, description="Cells per refinement level")
    field: FieldKind = Field(FieldKind.Q, description="Coefficient field of polynomial arguments")


class IsolateRootsCommand(_CommandBase):
    kind: Literal["isolate"] = "isolate"
    poly: str = Field(..., min_length=1)


class CountRootsCommand(_CommandBase):
    kind: Literal["count"] = "count"
    poly: str = Field(..., min_length=1)
    lo: str
    hi: str


class IvtRootCommand(_CommandBase):
    kind: Literal["ivt-root"] = "ivt-root"
    poly: str = Field(..., min_length=1)
    a: str
    b: str


class OddRootCommand(_CommandBase):
    kind: Literal["odd-root"] = "odd-root"
    poly: str = Field(..., min_length=1)


class SqrtCommand(_CommandBase):
    kind: Literal["sqrt"] = "sqrt"
    q: str


class ClassifyCommand(_CommandBase):
    kind: Literal["classify"] = "classify"
    element: str = Field(..., min_length=1)


class ShadowCommand(_CommandBase):
    kind: Literal["shadow"] = "shadow"
    element: str = Field(..., min_length=1)


class CompareCommand(_CommandBase):
    kind: Literal["compare"] = "compare"
    left: str = Field(..., min_length=1)
    right: str = Field(..., min_length=1)


class CutClassifyCommand(_CommandBase):
    kind: Literal["cut-classify"] = "cut-classify"
    poly: str = Field(..., min_length=1)
    lo: str
    hi: str


class HyperIvtCommand(_CommandBase):
    kind: Literal["hyper-ivt"] = "hyper-ivt"
    poly: str = Field(..., min_length=1)
    a: str
    b: str
    levels: int | None = Field(None, ge=1, le=256)
    field: FieldKind = FieldKind.QW


Command = Annotated[
    IsolateRootsCommand
    | CountRootsCommand
    | IvtRootCommand
    | OddRootCommand
    | SqrtCommand
    | ClassifyCommand
    | ShadowCommand
    | CompareCommand
    | CutClassifyCommand
    | HyperIvtCommand,
    Field(discriminator="kind"),
]

command_adapter: TypeAdapter[Command] = TypeAdapter(Command)
