from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pmivec.utils.types import FloatArray, VectorKind


@dataclass
class EmbeddingPair:
    """Target matrix W and context matrix C.

    Row i of both matrices belongs to word id i (the d x n column layout
    stored transposed, so a word's vector is a contiguous row).
    """

    W: FloatArray
    C: FloatArray

    def __post_init__(self) -> None:
        if self.W.shape != self.C.shape or self.W.ndim != 2:
            raise ValueError(f"W and C must be matching n x d arrays, got {self.W.shape} and {self.C.shape}")

    @property
    def n(self) -> int:
        return self.W.shape[0]

    @property
    def d(self) -> int:
        return self.W.shape[1]

    def vectors(self, kind: VectorKind) -> FloatArray:
        """Target (W), context (C) or real-component (A = (W + C) / 2) vectors."""
        if kind == "W":
            return self.W
        if kind == "C":
            return self.C
        if kind == "A":
            return (self.W + self.C) / 2
        raise ValueError(f"Unknown vector kind: {kind}")

    def freeze(self) -> EmbeddingPair:
        """Mark both matrices read-only once training is done."""
        self.W.flags.writeable = False
        self.C.flags.writeable = False
        return self

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.W).all() and np.isfinite(self.C).all())


def init_embeddings(n: int, d: int, seed: int | np.random.SeedSequence) -> EmbeddingPair:
    """Draw W and C i.i.d. uniform on [-0.5/d, 0.5/d] from a seeded generator.

    Raises:
        ValueError: If n or d < 1
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    rng = np.random.default_rng(seed)
    bound = 0.5 / d
    W = rng.uniform(-bound, bound, size=(n, d))
    C = rng.uniform(-bound, bound, size=(n, d))
    return EmbeddingPair(W=W, C=C)
