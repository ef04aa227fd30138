from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from pmivec.corpus.stream import DEFAULT_SUBSAMPLE_T, DEFAULT_WINDOW


class CorpusConfig(BaseModel):
    """Vocabulary and co-occurrence counting options.

    subsample_t=None disables frequent-word subsampling.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    min_count: int = Field(default=5, ge=1)
    window: int = Field(default=DEFAULT_WINDOW, ge=1)
    subsample_t: float | None = Field(default=DEFAULT_SUBSAMPLE_T, gt=0)
    seed: int = 0
    max_tokens: int | None = Field(default=None, ge=0)
    threads: int = Field(default=1, ge=1)
