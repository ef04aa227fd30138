from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator

from pmivec.utils.types import ProbabilityKind


class ContourConfig(BaseModel):
    """Contour bucketing options; unset centres and half-width fall back to the presets for kind."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    context_word: str
    kind: ProbabilityKind = "context_given_target"
    centers: tuple[float, ...] | None = None
    half_width: float | None = Field(default=None, gt=0)
    plot: bool = False

    @field_validator("centers")
    @classmethod
    def _non_empty(cls, value: tuple[float, ...] | None) -> tuple[float, ...] | None:
        if value is not None and not value:
            raise ValueError("centers must not be empty")
        return value
