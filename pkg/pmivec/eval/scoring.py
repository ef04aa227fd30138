from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from pmivec.eval.datasets import AnalogyDataset, SimilarityDataset, is_syntactic
from pmivec.eval.metrics import cosine, spearman_rho
from pmivec.eval.vectors import WordVectors
from pmivec.lifecycle.observability import track_stage
from pmivec.utils.exceptions import InsufficientCoverageError, UndefinedAngleError
from pmivec.utils.types import FloatArray, IntArray

logger = logging.getLogger(__name__)

AnalogyMethod = Literal["norm", "cosine"]


@dataclass(frozen=True)
class SimilarityResult:
    rho: float
    n_scored: int
    n_skipped: int


@dataclass(frozen=True)
class CategoryAccuracy:
    correct: int
    total: int

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else float("nan")


@dataclass(frozen=True)
class AnalogyResult:
    accuracy: float
    n_correct: int
    n_scored: int
    n_skipped: int
    per_category: dict[str, CategoryAccuracy]
    predictions: IntArray

    def grouped(self, syntactic: bool) -> CategoryAccuracy:
        """Pooled accuracy over semantic (False) or syntactic (True) categories."""
        parts = [acc for name, acc in self.per_category.items() if is_syntactic(name) == syntactic]
        return CategoryAccuracy(
            correct=sum(p.correct for p in parts), total=sum(p.total for p in parts)
        )


def evaluate_similarity(vectors: WordVectors, dataset: SimilarityDataset) -> SimilarityResult:
    """Spearman rho between cosine similarities and human scores.

    Pairs with an out-of-vocabulary word are dropped and counted. So are pairs
    with a zero vector, whose cosine is undefined; each logs a warning.

    Raises:
        InsufficientCoverageError: If fewer than 2 pairs can be scored
    """
    model: list[float] = []
    human: list[float] = []
    for pair in dataset.pairs:
        if pair.word1 not in vectors or pair.word2 not in vectors:
            continue
        try:
            similarity = cosine(vectors.vector(pair.word1), vectors.vector(pair.word2))
        except UndefinedAngleError:
            logger.warning(f"Skipping ({pair.word1}, {pair.word2}): zero vector, cosine undefined")
            continue
        model.append(similarity)
        human.append(pair.score)

    skipped = len(dataset) - len(model)
    if len(model) < 2:
        raise InsufficientCoverageError(
            f"only {len(model)} of {len(dataset)} similarity pairs can be scored"
        )
    rho = spearman_rho(model, human)
    logger.info(
        f"Similarity {dataset.name}/{dataset.subset}: rho={rho:.4f} "
        f"({len(model)} scored, {skipped} skipped)"
    )
    return SimilarityResult(rho=rho, n_scored=len(model), n_skipped=skipped)


def _predict_batch(
    matrix: FloatArray,
    sq_norms: FloatArray,
    unit: FloatArray | None,
    ids: IntArray,
    method: AnalogyMethod,
) -> IntArray:
    """Best candidate id for each (a, b, c) row of ids, question words excluded."""
    a, b, c = ids[:, 0], ids[:, 1], ids[:, 2]
    rows = np.arange(len(ids))
    if method == "norm":
        # ||t + v||^2 = ||t||^2 + 2 t.v + ||v||^2 with t = v_a - v_b - v_c
        t = matrix[a] - matrix[b] - matrix[c]
        scores = 2.0 * (t @ matrix.T) + sq_norms
        for col in (a, b, c):
            scores[rows, col] = np.inf
        return np.argmin(scores, axis=1)

    target = unit[b] - unit[a] + unit[c]
    scores = target @ unit.T
    for col in (a, b, c):
        scores[rows, col] = -np.inf
    return np.argmax(scores, axis=1)


def evaluate_analogy(
    vectors: WordVectors,
    dataset: AnalogyDataset,
    method: AnalogyMethod = "norm",
    batch_size: int = 128,
    threads: int = 1,
) -> AnalogyResult:
    """Accuracy of analogy predictions over in-vocabulary questions.

    method="norm" predicts argmin_d ||v_a - v_b - v_c + v_d|| over the whole
    vocabulary; method="cosine" predicts argmax cos(v_d, v_b - v_a + v_c) on
    unit-normalised vectors. Both exclude a, b and c from the candidates.
    Questions with any out-of-vocabulary word are skipped and counted.

    Raises:
        InsufficientCoverageError: If no question is fully in vocabulary
        ValueError: On an unknown method or a non-positive batch size
    """
    if method not in ("norm", "cosine"):
        raise ValueError(f"Unknown analogy method: {method}")
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")

    scored = [q for q in dataset.questions if vectors.covers(q.words)]
    skipped = len(dataset) - len(scored)
    if not scored:
        raise InsufficientCoverageError(f"none of {len(dataset)} analogy questions is in vocabulary")

    ids = np.array([[vectors.index[w] for w in q.words] for q in scored], dtype=np.int64)
    matrix = vectors.matrix
    sq_norms = np.einsum("ij,ij->i", matrix, matrix)
    unit = None
    if method == "cosine":
        norms = np.sqrt(sq_norms)
        unit = matrix / np.where(norms > 0, norms, 1.0)[:, None]

    def predict(start: int) -> IntArray:
        return _predict_batch(matrix, sq_norms, unit, ids[start : start + batch_size, :3], method)

    starts = range(0, len(ids), batch_size)
    with track_stage("analogy", questions=len(ids), method=method):
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(predict, starts))
        else:
            parts = [predict(s) for s in starts]
    predictions = np.concatenate(parts)
    hits = predictions == ids[:, 3]

    tally: dict[str, list[int]] = defaultdict(lambda: [0, 0])
    for question, hit in zip(scored, hits.tolist()):
        tally[question.category][0] += int(hit)
        tally[question.category][1] += 1
    per_category = {
        name: CategoryAccuracy(correct=tally[name][0], total=tally[name][1])
        for name in dataset.categories
        if name in tally
    }

    n_correct = int(hits.sum())
    result = AnalogyResult(
        accuracy=n_correct / len(scored),
        n_correct=n_correct,
        n_scored=len(scored),
        n_skipped=skipped,
        per_category=per_category,
        predictions=predictions,
    )
    logger.info(
        f"Analogy {dataset.name} ({method}): accuracy={result.accuracy:.4f} "
        f"({len(scored)} scored, {skipped} skipped)"
    )
    return result
