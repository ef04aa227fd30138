from __future__ import annotations

import csv
import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict

from pmivec.cooccur.pmi import PmiMatrix
from pmivec.geometry.decompose import conjugate_identity_error
from pmivec.geometry.diagnostics import IdentityResiduals, ResidualSummary, factorization_residuals
from pmivec.trainer.embeddings import EmbeddingPair
from pmivec.utils.types import BoolArray, FloatArray

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("word", "norm_w", "norm_c", "internal_angle", "min_length", "self_pmi")


class GeometrySummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_words: int
    mean_internal_angle: float
    undefined_angles: int
    clamped_min_lengths: int
    conjugate_identity_max_error: float
    mean_abs_self_residual: float
    factorization_mse: float
    factorization_max_abs: float


@dataclass(frozen=True)
class GeometryReport:
    """Per-word geometry arrays in word-id order plus a summary.

    internal_angle is NaN for words with a zero-norm vector. min_length is 0
    for words whose self-PMI is negative; those words are flagged in
    clamped and left out of the self-residual mean.
    """

    words: tuple[str, ...]
    norm_w: FloatArray
    norm_c: FloatArray
    internal_angle: FloatArray
    min_length: FloatArray
    clamped: BoolArray
    self_dot: FloatArray
    self_pmi: FloatArray
    summary: GeometrySummary


def geometry_report(pair: EmbeddingPair, pmi: PmiMatrix, words: Sequence[str]) -> GeometryReport:
    """Compute internal angles, minimum lengths and identity residuals for every word.

    Raises:
        ValueError: If words, embeddings and PMI disagree on the vocabulary size
    """
    if not (len(words) == pair.n == pmi.n):
        raise ValueError(
            f"size mismatch: {len(words)} words, {pair.n} embedding rows, {pmi.n} PMI rows"
        )

    norm_w = np.linalg.norm(pair.W, axis=1)
    norm_c = np.linalg.norm(pair.C, axis=1)
    self_dot = np.einsum("ij,ij->i", pair.W, pair.C)
    denom = norm_w * norm_c
    defined = denom > 0

    angle = np.full(pair.n, np.nan)
    angle[defined] = np.arccos(np.clip(self_dot[defined] / denom[defined], -1.0, 1.0))

    clamped = pmi.self_pmi < 0
    min_length = np.sqrt(np.maximum(pmi.self_pmi, 0.0))
    unclamped = ~clamped
    self_res = np.abs(self_dot[unclamped] - pmi.self_pmi[unclamped])

    fact = factorization_residuals(pair, pmi)
    summary = GeometrySummary(
        n_words=pair.n,
        mean_internal_angle=float(angle[defined].mean()) if defined.any() else float("nan"),
        undefined_angles=int((~defined).sum()),
        clamped_min_lengths=int(clamped.sum()),
        conjugate_identity_max_error=float(conjugate_identity_error(pair).max()),
        mean_abs_self_residual=float(self_res.mean()) if len(self_res) else float("nan"),
        factorization_mse=float(np.mean(fact**2)) if len(fact) else float("nan"),
        factorization_max_abs=float(np.abs(fact).max()) if len(fact) else float("nan"),
    )
    if summary.clamped_min_lengths:
        logger.warning(
            f"{summary.clamped_min_lengths} words have negative self-PMI; minimum length clamped to 0"
        )
    return GeometryReport(
        words=tuple(words),
        norm_w=norm_w,
        norm_c=norm_c,
        internal_angle=angle,
        min_length=min_length,
        clamped=clamped,
        self_dot=self_dot,
        self_pmi=pmi.self_pmi.copy(),
        summary=summary,
    )


def _json_floats(values: FloatArray) -> list[float | None]:
    return [float(v) if np.isfinite(v) else None for v in values]


def write_geometry_json(report: GeometryReport, path: str | Path) -> None:
    """Summary plus per-word arrays; non-finite values are written as null."""
    payload = {
        "summary": json.loads(report.summary.model_dump_json()),
        "words": list(report.words),
        "norm_w": _json_floats(report.norm_w),
        "norm_c": _json_floats(report.norm_c),
        "internal_angle": _json_floats(report.internal_angle),
        "min_length": _json_floats(report.min_length),
        "min_length_clamped": [bool(v) for v in report.clamped],
        "self_dot": _json_floats(report.self_dot),
        "self_pmi": _json_floats(report.self_pmi),
    }
    Path(path).write_text(json.dumps(payload, indent=2), encoding="utf-8")


def write_geometry_csv(report: GeometryReport, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for k, word in enumerate(report.words):
            writer.writerow(
                [
                    word,
                    repr(float(report.norm_w[k])),
                    repr(float(report.norm_c[k])),
                    repr(float(report.internal_angle[k])),
                    repr(float(report.min_length[k])),
                    repr(float(report.self_pmi[k])),
                ]
            )


class ResidualStats(BaseModel):
    mean_abs: float | None
    median_abs: float | None
    p90_abs: float | None
    max_abs: float | None
    count: int

    @classmethod
    def of(cls, summary: ResidualSummary) -> ResidualStats:
        def clean(v: float) -> float | None:
            return v if np.isfinite(v) else None

        return cls(
            mean_abs=clean(summary.mean_abs),
            median_abs=clean(summary.median_abs),
            p90_abs=clean(summary.p90_abs),
            max_abs=clean(summary.max_abs),
            count=summary.count,
        )


class IdentityReport(BaseModel):
    """Summaries of the log-probability and exponentiated (relative) identity residuals."""

    n_pairs: int
    log_word: ResidualStats
    log_pair: ResidualStats
    relative_word: ResidualStats
    relative_pair: ResidualStats

    @classmethod
    def build(cls, logs: IdentityResiduals, relative: IdentityResiduals) -> IdentityReport:
        return cls(
            n_pairs=len(logs.pairs),
            log_word=ResidualStats.of(logs.word_summary),
            log_pair=ResidualStats.of(logs.pair_summary),
            relative_word=ResidualStats.of(relative.word_summary),
            relative_pair=ResidualStats.of(relative.pair_summary),
        )
