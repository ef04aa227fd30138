from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from pmivec.trainer.embeddings import EmbeddingPair
from pmivec.trainer.io import load_word2vec
from pmivec.utils.types import FloatArray, IntArray, VectorKind


@dataclass(frozen=True)
class WordVectors:
    """Word-keyed n x d vector table used for evaluation."""

    words: tuple[str, ...]
    matrix: FloatArray
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.matrix.ndim != 2 or self.matrix.shape[0] != len(self.words):
            raise ValueError(f"{len(self.words)} words for a matrix of shape {self.matrix.shape}")
        object.__setattr__(self, "index", {w: k for k, w in enumerate(self.words)})

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: object) -> bool:
        return word in self.index

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def vector(self, word: str) -> FloatArray:
        """Raises KeyError for an out-of-vocabulary word."""
        return self.matrix[self.index[word]]

    def ids(self, words: Iterable[str]) -> IntArray:
        return np.array([self.index[w] for w in words], dtype=np.int64)

    def covers(self, words: Iterable[str]) -> bool:
        return all(w in self.index for w in words)

    @classmethod
    def from_word2vec(cls, path: str | Path) -> WordVectors:
        words, matrix = load_word2vec(path)
        return cls(words=tuple(words), matrix=matrix)

    @classmethod
    def from_embeddings(
        cls, pair: EmbeddingPair, words: Sequence[str], kind: VectorKind = "A"
    ) -> WordVectors:
        return cls(words=tuple(words), matrix=pair.vectors(kind))
