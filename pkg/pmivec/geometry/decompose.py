from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pmivec.trainer.embeddings import EmbeddingPair
from pmivec.utils.types import FloatArray


@dataclass(frozen=True)
class ConjugateDecomposition:
    """Real part A = (W + C) / 2 and imaginary part B = (W - C) / 2.

    W = A + B and C = A - B, so for every word w . c = ||a||^2 - ||b||^2,
    the real-algebra form of target and context vectors being conjugates.
    """

    A: FloatArray
    B: FloatArray

    def recompose(self) -> EmbeddingPair:
        return EmbeddingPair(W=self.A + self.B, C=self.A - self.B)


def decompose(pair: EmbeddingPair) -> ConjugateDecomposition:
    return ConjugateDecomposition(A=(pair.W + pair.C) / 2, B=(pair.W - pair.C) / 2)


def conjugate_identity_error(pair: EmbeddingPair) -> FloatArray:
    """Per-word |w_i . c_i - (||a_i||^2 - ||b_i||^2)|."""
    parts = decompose(pair)
    self_dot = np.einsum("ij,ij->i", pair.W, pair.C)
    real = np.einsum("ij,ij->i", parts.A, parts.A)
    imag = np.einsum("ij,ij->i", parts.B, parts.B)
    return np.abs(self_dot - (real - imag))
