from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy.stats import rankdata

from pmivec.utils.exceptions import UndefinedAngleError, UndefinedCorrelationError
from pmivec.utils.types import FloatArray


def cosine(u: FloatArray, v: FloatArray) -> float:
    """u . v / (||u|| ||v||), clamped to [-1, 1].

    Raises:
        UndefinedAngleError: If either vector is zero
    """
    norm_u = float(np.linalg.norm(u))
    norm_v = float(np.linalg.norm(v))
    if norm_u == 0.0 or norm_v == 0.0:
        raise UndefinedAngleError("cosine is undefined for a zero vector")
    return float(np.clip(np.dot(u, v) / (norm_u * norm_v), -1.0, 1.0))


def spearman_rho(model_scores: Sequence[float] | FloatArray, human_scores: Sequence[float] | FloatArray) -> float:
    """Spearman's rho: Pearson correlation of the average-rank vectors.

    Ties receive their average rank, so the result is the tie-corrected form.

    Raises:
        ValueError: If the lists differ in length or hold fewer than 2 items
        UndefinedCorrelationError: If either list is constant
    """
    x = np.asarray(model_scores, dtype=np.float64)
    y = np.asarray(human_scores, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"score lists must be 1-D and equal length, got {x.shape} and {y.shape}")
    if len(x) < 2:
        raise ValueError("at least 2 scores are required")

    rx = rankdata(x) - (len(x) + 1) / 2
    ry = rankdata(y) - (len(y) + 1) / 2
    sxx = float(rx @ rx)
    syy = float(ry @ ry)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError("rank variance is zero; correlation undefined")
    return float(np.clip((rx @ ry) / np.sqrt(sxx * syy), -1.0, 1.0))
