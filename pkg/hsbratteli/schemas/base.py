from fractions import Fraction
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field


class BaseSchema(BaseModel):
    """Base schema with common Pydantic configuration."""

    model_config = ConfigDict(frozen=True)


# Exact rationals travel as "p/q" strings; renderers may add decimal columns.
Exact = Annotated[str, Field(json_schema_extra={"exact": True})]
OptionalExact = Annotated[str | None, Field(json_schema_extra={"exact": True})]


def exact(value: Fraction | int) -> str:
    return str(Fraction(value))


def exact_or_none(value: Fraction | int | None) -> str | None:
    return None if value is None else exact(value)


def is_exact_field(model: type[BaseModel], name: str) -> bool:
    extra = model.model_fields[name].json_schema_extra
    return isinstance(extra, dict) and bool(extra.get("exact"))
