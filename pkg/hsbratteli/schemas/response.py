from typing import Any

from pydantic import BaseModel, Field


class ErrorReport(BaseModel):
    """
    Standardized error report written to stderr.
    """

    error: str
    message: str
    exit_code: int
    details: Any | None = None

    class Config:
        json_schema_extra = {
            "example": {
                "error": "MissingEdge",
                "message": "no edge at offset 1 on level 3",
                "exit_code": 2,
                "details": {"level": 3, "offset": 1},
            }
        }


class Report[T](BaseModel):
    """
    Generic command report: one row per level or step plus a summary.

    Example:
        Report[HeightRow](
            command="heights",
            rows=[HeightRow(level=0, height="1")],
            summary={"levels": 1},
        )
    """

    command: str
    rows: list[T]
    summary: dict[str, Any] = Field(default_factory=dict)

    class Config:
        json_schema_extra = {
            "example": {
                "command": "extension",
                "rows": [{"level": 0, "vertex": 0, "f": "2", "sigma": "2", "alpha": "2"}],
                "summary": {"partial_value": "2", "verdict": "Finite"},
            }
        }
