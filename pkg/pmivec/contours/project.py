from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pmivec.trainer.embeddings import EmbeddingPair
from pmivec.utils.exceptions import UndefinedAngleError
from pmivec.utils.types import BoolArray, FloatArray


@dataclass(frozen=True)
class ContourProjection:
    """Every target vector placed in the upper half-plane relative to one context vector.

    x = ||v_i|| cos(theta_ij), y = ||v_i|| sin(theta_ij) >= 0, where theta_ij
    is the angle between target v_i and context v_j'. Zero-norm targets
    have no angle; they are marked invalid and their point is (0, 0).
    """

    context_id: int
    context_norm: float
    x: FloatArray
    y: FloatArray
    valid: BoolArray

    @property
    def skipped(self) -> int:
        return int((~self.valid).sum())

    @property
    def context_point(self) -> tuple[float, float]:
        return (self.context_norm, 0.0)


def project_relative(pair: EmbeddingPair, j: int) -> ContourProjection:
    """Project all target vectors onto the plane of their angle with context vector j.

    Raises:
        IndexError: If j is out of range
        UndefinedAngleError: If the context vector is zero
    """
    if not 0 <= j < pair.n:
        raise IndexError(f"context id {j} out of range for {pair.n} words")
    context = pair.C[j]
    context_norm = float(np.linalg.norm(context))
    if context_norm == 0.0:
        raise UndefinedAngleError(f"context vector {j} is zero; angles are undefined")

    norms = np.linalg.norm(pair.W, axis=1)
    valid = norms > 0
    cos = np.zeros(pair.n)
    cos[valid] = np.clip((pair.W[valid] @ context) / (norms[valid] * context_norm), -1.0, 1.0)
    theta = np.arccos(cos)
    x = np.where(valid, norms * cos, 0.0)
    y = np.where(valid, norms * np.sin(theta), 0.0)
    return ContourProjection(context_id=j, context_norm=context_norm, x=x, y=y, valid=valid)
