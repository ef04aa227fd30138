from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from pmivec.cooccur.stats import CooccurrenceStats
from pmivec.utils.types import FloatArray, IntArray, ProbabilityKind

logger = logging.getLogger(__name__)

# log-probability bucket centres and half-widths per conditional
PRESET_CENTERS: dict[str, tuple[float, ...]] = {
    "context_given_target": (-6.8, -5.7, -4.5, -3.2),
    "target_given_context": (-17.8, -16.0, -15.6, -14.5, -12.7),
}
PRESET_HALF_WIDTH: dict[str, float] = {
    "context_given_target": 0.4,
    "target_given_context": 0.7,
}


@dataclass(frozen=True)
class ContourBuckets:
    """Words grouped by the log of a conditional probability involving one context word.

    log_prob is NaN for words that never co-occur with the context word;
    those words are in no bucket. Buckets overlap when two centres are
    closer than 2 * half_width, in which case a word may sit in several.
    """

    kind: ProbabilityKind
    context_id: int
    centers: tuple[float, ...]
    half_width: float
    members: tuple[IntArray, ...]
    log_prob: FloatArray
    overlapping: bool

    def __len__(self) -> int:
        return len(self.centers)

    def labels_of(self, i: int) -> list[float]:
        """Centres of every bucket containing word i, in bucket order."""
        return [c for c, ids in zip(self.centers, self.members) if i in ids]


def conditional_log_probabilities(
    stats: CooccurrenceStats, kind: ProbabilityKind, j: int
) -> FloatArray:
    """log p(c=j | w=i) or log p(w=i | c=j) for every word i, NaN where the pair is unobserved.

    p(c|w) = count(w, c) / target_count(w); p(w|c) = count(w, c) / context_count(c).
    """
    if not 0 <= j < stats.n:
        raise IndexError(f"context id {j} out of range for {stats.n} words")
    if kind not in PRESET_CENTERS:
        raise ValueError(f"Unknown probability kind: {kind}")

    mask = stats.cols == j
    rows = stats.rows[mask]
    counts = stats.counts[mask].astype(np.float64)
    if kind == "context_given_target":
        denom = stats.target_counts[rows].astype(np.float64)
    else:
        denom = np.full(len(rows), float(stats.context_counts[j]))

    log_prob = np.full(stats.n, np.nan)
    log_prob[rows] = np.log(counts) - np.log(denom)
    return log_prob


def bucket_by_logprob(
    stats: CooccurrenceStats,
    kind: ProbabilityKind,
    j: int,
    centers: Sequence[float] | None = None,
    half_width: float | None = None,
) -> ContourBuckets:
    """Assign word i to bucket c iff |log p - c| <= half_width.

    centers and half_width default to the presets for kind.

    Raises:
        ValueError: If centers is empty or half_width <= 0
        IndexError: If j is out of range
    """
    centers = tuple(float(c) for c in (PRESET_CENTERS[kind] if centers is None else centers))
    half_width = PRESET_HALF_WIDTH[kind] if half_width is None else float(half_width)
    if not centers:
        raise ValueError("at least one bucket centre is required")
    if half_width <= 0:
        raise ValueError("half_width must be > 0")

    log_prob = conditional_log_probabilities(stats, kind, j)
    observed = np.isfinite(log_prob)
    members = tuple(
        np.flatnonzero(observed & (np.abs(np.where(observed, log_prob, 0.0) - c) <= half_width))
        for c in centers
    )

    ordered = np.sort(np.asarray(centers))
    overlapping = bool(len(ordered) > 1 and (np.diff(ordered) < 2 * half_width).any())
    if overlapping:
        logger.warning(
            f"Bucket centres {centers} are closer than 2 * half_width = {2 * half_width}; "
            "buckets overlap"
        )
    logger.info(
        f"Bucketed {int(observed.sum())} words by {kind} on context {j}: "
        + ", ".join(f"{c}: {len(ids)}" for c, ids in zip(centers, members))
    )
    return ContourBuckets(
        kind=kind,
        context_id=j,
        centers=centers,
        half_width=half_width,
        members=members,
        log_prob=log_prob,
        overlapping=overlapping,
    )
