from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from pmivec.cooccur.stats import CooccurrenceStats
from pmivec.utils.exceptions import NoSelfPairError
from pmivec.utils.types import (
    SELF_FILL_FACTOR,
    SELF_PMI_POSITIVE_GATE,
    BoolArray,
    FloatArray,
    IntArray,
    pair_keys,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelfPmi:
    """Per-word self-PMI with fill-in provenance.

    filled marks every word whose self-joint was not observed. undefined marks
    the subset with a zero marginal, where the substituted joint still gives no
    finite PMI; those values are 0.
    """

    values: FloatArray
    filled: BoolArray
    p_min: float
    undefined: BoolArray


@dataclass(frozen=True)
class PmiMatrix:
    """Sparse PMI entries for observed pairs plus the self-PMI vector.

    Entries are a coordinate list sorted by (i, j). Unobserved pairs store
    nothing. Immutable after construction.
    """

    n: int
    rows: IntArray
    cols: IntArray
    values: FloatArray
    self_pmi: FloatArray
    self_filled: BoolArray

    @property
    def nnz(self) -> int:
        return len(self.values)

    @cached_property
    def keys(self) -> IntArray:
        """Sorted pair keys i * n + j, computed once."""
        return pair_keys(self.rows, self.cols, self.n)

    def get(self, i: int, j: int) -> float | None:
        """Stored PMI of (i, j), or None when the pair was never observed."""
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"pair ({i}, {j}) out of range for vocabulary of size {self.n}")
        keys = self.keys
        key = i * self.n + j
        pos = int(np.searchsorted(keys, key))
        if pos < len(keys) and keys[pos] == key:
            return float(self.values[pos])
        return None

    def to_dense(self, fill: float = np.nan) -> FloatArray:
        """Dense n x n array of stored entries, unobserved cells set to fill."""
        dense = np.full((self.n, self.n), fill, dtype=np.float64)
        dense[self.rows, self.cols] = self.values
        return dense


def _check_nonempty(stats: CooccurrenceStats) -> None:
    if stats.total_pairs <= 0:
        raise ValueError("co-occurrence stats are empty")


def pmi(stats: CooccurrenceStats, i: int, j: int) -> float | None:
    """PMI of an ordered pair from maximum-likelihood count ratios.

    Returns:
        log(p(i,j) / (p(i) p(j))) when the pair was observed, else None

    Raises:
        IndexError: If i or j is out of range
        ValueError: If stats are empty
    """
    _check_nonempty(stats)
    count = stats.count(i, j)
    if count == 0:
        return None
    return float(
        np.log(count)
        + np.log(stats.total_pairs)
        - np.log(stats.target_counts[i])
        - np.log(stats.context_counts[j])
    )


def self_joint_probabilities(stats: CooccurrenceStats) -> tuple[FloatArray, BoolArray, float]:
    """Self-joint probabilities p(w_i, w_i') with unobserved ones set to 2/3 p_min.

    Returns:
        (joint probabilities, observed mask, p_min)

    Raises:
        NoSelfPairError: If no word co-occurs with itself anywhere
    """
    _check_nonempty(stats)
    total = float(stats.total_pairs)
    diag = stats.diagonal()
    observed = diag > 0
    if not observed.any():
        raise NoSelfPairError(
            "No word co-occurs with itself; the 2/3 p_min self-joint fill-in is undefined"
        )
    p_min = float(diag[observed].min()) / total
    joint = np.where(observed, diag / total, SELF_FILL_FACTOR * p_min)
    return joint, observed, p_min


def self_pmi_fill(stats: CooccurrenceStats) -> SelfPmi:
    """Self-PMI for every word, substituting 2/3 p_min for unobserved self-joints.

    p_min is the smallest observed self-joint probability. Every word with an
    unobserved self-pair gets its PMI from the substituted joint 2/3 p_min,
    except words that never occur in the counted stream: with a zero marginal
    that PMI would be +inf, so they are set to 0 and marked undefined.

    Raises:
        NoSelfPairError: If no word co-occurs with itself anywhere
    """
    total = float(stats.total_pairs)
    joint, observed, p_min = self_joint_probabilities(stats)

    present = (stats.target_counts > 0) & (stats.context_counts > 0)
    values = np.zeros(stats.n, dtype=np.float64)
    values[present] = (
        np.log(joint[present])
        - np.log(stats.target_counts[present] / total)
        - np.log(stats.context_counts[present] / total)
    )

    absent = int((~present).sum())
    if absent:
        logger.warning(f"{absent} words never occur in the counted stream; self-PMI set to 0")
    filled = ~observed
    logger.info(f"Filled {int(filled.sum())} of {stats.n} self-PMI values (p_min={p_min:.3e})")
    return SelfPmi(values=values, filled=filled, p_min=p_min, undefined=~present)


def build_pmi_matrix(stats: CooccurrenceStats) -> PmiMatrix:
    """PMI for every observed pair plus the filled self-PMI vector.

    Raises:
        NoSelfPairError: Propagated from self_pmi_fill
    """
    self_pmi = self_pmi_fill(stats)
    total = float(stats.total_pairs)
    values = (
        np.log(stats.counts.astype(np.float64))
        + np.log(total)
        - np.log(stats.target_counts[stats.rows].astype(np.float64))
        - np.log(stats.context_counts[stats.cols].astype(np.float64))
    )
    matrix = PmiMatrix(
        n=stats.n,
        rows=stats.rows.copy(),
        cols=stats.cols.copy(),
        values=values,
        self_pmi=self_pmi.values,
        self_filled=self_pmi.filled,
    )
    logger.info(f"Built PMI matrix with {matrix.nnz} entries over {matrix.n} words")
    return matrix


def self_pmi_positive_fraction(matrix: PmiMatrix) -> float:
    """Fraction of observed (not filled) self-PMI values that are positive.

    Logs a warning when the fraction does not exceed the 0.9 soft gate.
    """
    observed = ~matrix.self_filled
    if not observed.any():
        return float("nan")
    fraction = float((matrix.self_pmi[observed] > 0).mean())
    if fraction <= SELF_PMI_POSITIVE_GATE:
        logger.warning(
            f"Only {fraction:.3f} of observed self-PMI values are positive "
            f"(expected > {SELF_PMI_POSITIVE_GATE})"
        )
    return fraction
