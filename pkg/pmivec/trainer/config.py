from __future__ import annotations

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from pmivec.utils.types import Variant


class TrainConfig(BaseModel):
    """Resolved training options.

    Defaults follow the published setup where it is stated (alpha = 0.5,
    k = 5, 100 epochs) and documented choices where it is silent
    (adagrad, lr 0.05, negative target = least observed regression target).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    variant: Variant = "D"
    d: int = Field(default=200, ge=1)
    epochs: int = Field(default=100, ge=0)
    learning_rate: float = Field(default=0.05, gt=0)
    optimizer: Literal["sgd", "adagrad"] = "adagrad"
    alpha1: float = Field(default=0.5, ge=0)
    alpha2: float = Field(default=0.5, ge=0)
    k: int = Field(default=5, ge=0)
    shift: float | None = None
    negative_target: float | None = None
    seed: int = 0
    parallel_mode: Literal["deterministic", "sharded"] = "deterministic"
    threads: int = Field(default=1, ge=1)
    weighting: Literal["uniform", "count"] = "uniform"
    # 1 applies every pair update on its own; larger values sum gradients per row over
    # batch_size positives (and their negatives) and apply one step per touched row
    batch_size: int = Field(default=1, ge=1)

    @property
    def resolved_shift(self) -> float:
        """Shift subtracted from PMI by the `shifted` variant (log k unless given)."""
        if self.shift is not None:
            return self.shift
        return math.log(self.k) if self.k > 0 else 0.0
