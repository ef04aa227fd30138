from pmivec.eval.datasets import (
    SimilarityPair,
    SimilarityDataset,
    AnalogyQuestion,
    AnalogyDataset,
    SIMILARITY_SUBSETS,
    is_syntactic,
    load_similarity,
    load_analogy,
)
from pmivec.eval.vectors import WordVectors
from pmivec.eval.metrics import cosine, spearman_rho
from pmivec.eval.scoring import (
    SimilarityResult,
    CategoryAccuracy,
    AnalogyResult,
    evaluate_similarity,
    evaluate_analogy,
)
from pmivec.eval.report import EvalConfig, EvalReport, CategoryScore

__all__ = [
    "SimilarityPair",
    "SimilarityDataset",
    "AnalogyQuestion",
    "AnalogyDataset",
    "SIMILARITY_SUBSETS",
    "is_syntactic",
    "load_similarity",
    "load_analogy",
    "WordVectors",
    "cosine",
    "spearman_rho",
    "SimilarityResult",
    "CategoryAccuracy",
    "AnalogyResult",
    "evaluate_similarity",
    "evaluate_analogy",
    "EvalConfig",
    "EvalReport",
    "CategoryScore",
]
