from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from pmivec.eval.datasets import SimilaritySubset
from pmivec.eval.scoring import AnalogyResult, SimilarityResult
from pmivec.utils.types import VectorKind


class EvalConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    task: Literal["similarity", "analogy"] = "similarity"
    vectors: VectorKind = "A"
    subset: SimilaritySubset = "ALL"
    format: Literal["tsv", "wordsim353"] = "tsv"
    method: Literal["norm", "cosine"] = "norm"
    batch_size: int = Field(default=128, ge=1)


class CategoryScore(BaseModel):
    correct: int
    total: int
    accuracy: float


class EvalReport(BaseModel):
    """JSON report for one evaluation run."""

    model_config = ConfigDict(frozen=True)

    dataset: str
    task: Literal["similarity", "analogy"]
    subset: str | None = None
    vectors_used: VectorKind
    method: str | None = None
    score: float
    n_scored: int
    n_skipped: int
    categories: dict[str, CategoryScore] | None = None
    semantic_accuracy: float | None = None
    syntactic_accuracy: float | None = None

    @classmethod
    def for_similarity(
        cls, dataset: str, subset: str, vectors_used: VectorKind, result: SimilarityResult
    ) -> EvalReport:
        return cls(
            dataset=dataset,
            task="similarity",
            subset=subset,
            vectors_used=vectors_used,
            score=result.rho,
            n_scored=result.n_scored,
            n_skipped=result.n_skipped,
        )

    @classmethod
    def for_analogy(
        cls, dataset: str, vectors_used: VectorKind, method: str, result: AnalogyResult
    ) -> EvalReport:
        semantic = result.grouped(syntactic=False)
        syntactic = result.grouped(syntactic=True)
        return cls(
            dataset=dataset,
            task="analogy",
            vectors_used=vectors_used,
            method=method,
            score=result.accuracy,
            n_scored=result.n_scored,
            n_skipped=result.n_skipped,
            categories={
                name: CategoryScore(correct=acc.correct, total=acc.total, accuracy=acc.accuracy)
                for name, acc in result.per_category.items()
            },
            semantic_accuracy=semantic.accuracy if semantic.total else None,
            syntactic_accuracy=syntactic.accuracy if syntactic.total else None,
        )

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.model_dump_json(indent=2, exclude_none=True), encoding="utf-8")
