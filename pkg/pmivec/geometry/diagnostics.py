from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from pmivec.cooccur.pmi import PmiMatrix, self_joint_probabilities
from pmivec.cooccur.stats import CooccurrenceStats
from pmivec.trainer.embeddings import EmbeddingPair
from pmivec.utils.exceptions import UndefinedAngleError
from pmivec.utils.types import FloatArray, IntArray

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WordGeometry:
    """Internal angle, norms and minimum length of one word's vector pair."""

    word_id: int
    internal_angle: float
    norm_w: float
    norm_c: float
    min_length: float
    min_length_clamped: bool
    self_dot: float
    self_pmi: float

    @property
    def residual(self) -> float:
        """self_dot - PMI_ii; zero when the self relation is met exactly."""
        return self.self_dot - self.self_pmi


@dataclass(frozen=True)
class SplitHeight:
    """Length of the component in the new dimension.

    Real (propped up) when the minimum length exceeds ||s||, otherwise the
    magnitude b of the conjugate pair +-bi.
    """

    value: float
    imaginary: bool


@dataclass(frozen=True)
class ResidualSummary:
    mean_abs: float
    median_abs: float
    p90_abs: float
    max_abs: float
    count: int

    @classmethod
    def of(cls, residuals: FloatArray) -> ResidualSummary:
        finite = np.abs(residuals[np.isfinite(residuals)])
        if len(finite) == 0:
            nan = float("nan")
            return cls(nan, nan, nan, nan, 0)
        return cls(
            mean_abs=float(finite.mean()),
            median_abs=float(np.median(finite)),
            p90_abs=float(np.percentile(finite, 90)),
            max_abs=float(finite.max()),
            count=len(finite),
        )


@dataclass(frozen=True)
class IdentityResiduals:
    """Per-word and per-pair residuals of a probability/vector identity."""

    word_residuals: FloatArray
    pairs: IntArray
    pair_residuals: FloatArray
    word_summary: ResidualSummary = field(init=False)
    pair_summary: ResidualSummary = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "word_summary", ResidualSummary.of(self.word_residuals))
        object.__setattr__(self, "pair_summary", ResidualSummary.of(self.pair_residuals))


def word_geometry(pair: EmbeddingPair, self_pmi_i: float, i: int) -> WordGeometry:
    """Internal angle and minimum length of word i.

    Raises:
        IndexError: If i is out of range
        UndefinedAngleError: If either vector has zero norm
    """
    if not 0 <= i < pair.n:
        raise IndexError(f"word id {i} out of range for {pair.n} words")
    w, c = pair.W[i], pair.C[i]
    norm_w = float(np.linalg.norm(w))
    norm_c = float(np.linalg.norm(c))
    if norm_w == 0.0 or norm_c == 0.0:
        raise UndefinedAngleError(f"word {i} has a zero-norm vector; internal angle undefined")

    self_dot = float(w @ c)
    cos = min(1.0, max(-1.0, self_dot / (norm_w * norm_c)))
    clamped = self_pmi_i < 0
    return WordGeometry(
        word_id=i,
        internal_angle=math.acos(cos),
        norm_w=norm_w,
        norm_c=norm_c,
        min_length=math.sqrt(max(self_pmi_i, 0.0)),
        min_length_clamped=clamped,
        self_dot=self_dot,
        self_pmi=self_pmi_i,
    )


def split_height(d_i: float, s_norm: float) -> SplitHeight:
    """Solve h = sqrt(d_i^2 - ||s||^2) for the new-dimension component.

    Raises:
        ValueError: If either length is negative
    """
    if d_i < 0 or s_norm < 0:
        raise ValueError("lengths must be >= 0")
    disc = d_i * d_i - s_norm * s_norm
    if disc >= 0:
        return SplitHeight(value=math.sqrt(disc), imaginary=False)
    return SplitHeight(value=math.sqrt(-disc), imaginary=True)


def _log_marginals(stats: CooccurrenceStats) -> FloatArray:
    """log p(w_i) as the mean of log target and log context marginals."""
    total = float(stats.total_pairs)
    with np.errstate(divide="ignore"):
        return 0.5 * (np.log(stats.target_counts / total) + np.log(stats.context_counts / total))


def _sample_pairs(stats: CooccurrenceStats, n_pairs: int, seed: int) -> IntArray:
    """Sample observed off-diagonal pairs without replacement."""
    off = np.flatnonzero(stats.rows != stats.cols)
    rng = np.random.default_rng(seed)
    take = rng.choice(off, size=min(n_pairs, len(off)), replace=False) if len(off) else off
    take = np.sort(take)
    return np.stack([stats.rows[take], stats.cols[take]], axis=1)


def _pair_dots(pair: EmbeddingPair, pairs: IntArray) -> FloatArray:
    """(v_i - v_j) . (v_i' - v_j') for every (i, j) row of pairs."""
    i, j = pairs[:, 0], pairs[:, 1]
    return np.einsum("ij,ij->i", pair.W[i] - pair.W[j], pair.C[i] - pair.C[j])


def _log_joint(stats: CooccurrenceStats, pairs: IntArray) -> FloatArray:
    total = float(stats.total_pairs)
    counts = stats.counts_of(pairs[:, 0], pairs[:, 1]).astype(np.float64)
    with np.errstate(divide="ignore"):
        return np.log(counts / total)


def log_probability_residuals(
    pair: EmbeddingPair,
    stats: CooccurrenceStats,
    pairs: IntArray | None = None,
    n_pairs: int = 500,
    seed: int = 0,
) -> IdentityResiduals:
    """Residuals of the log-probability identities implied by v_i . v_j' = PMI_ij.

    Per word:  log p(w_i) - (-v_i.v_i'/2 + log p(w_i,w_i')/2)
    Per pair:  log p(w_i,w_j') - (-(v_i-v_j).(v_i'-v_j')/2 + log(p(w_i,w_i') p(w_j,w_j'))/2)

    Unobserved self-joints use the 2/3 p_min fill-in. Pairs default to a
    seeded sample of observed off-diagonal pairs.

    Raises:
        NoSelfPairError: If no self-joint is observed, so none can be filled
    """
    joint_self, _, _ = self_joint_probabilities(stats)
    log_self = np.log(joint_self)
    log_p = _log_marginals(stats)

    self_dot = np.einsum("ij,ij->i", pair.W, pair.C)
    word_res = log_p - (-self_dot / 2 + log_self / 2)

    if pairs is None:
        pairs = _sample_pairs(stats, n_pairs, seed)
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    i, j = pairs[:, 0], pairs[:, 1]
    predicted = -_pair_dots(pair, pairs) / 2 + (log_self[i] + log_self[j]) / 2
    pair_res = _log_joint(stats, pairs) - predicted

    result = IdentityResiduals(word_residuals=word_res, pairs=pairs, pair_residuals=pair_res)
    logger.info(
        f"Log-probability identity residuals: words mean |r|={result.word_summary.mean_abs:.3e}, "
        f"pairs mean |r|={result.pair_summary.mean_abs:.3e}"
    )
    return result


def quasi_sphere_check(
    pair: EmbeddingPair,
    stats: CooccurrenceStats,
    pairs: IntArray | None = None,
    n_pairs: int = 500,
    seed: int = 0,
) -> IdentityResiduals:
    """Relative residuals of the exponentiated identities.

    exp(-v_i.v_i'/2) = p(w_i) / sqrt(p(w_i,w_i'))
    exp(-(v_i-v_j).(v_i'-v_j')/2) = p(w_i,w_j') / sqrt(p(w_i,w_i') p(w_j,w_j'))

    The conjugate products v.v-bar are evaluated in real form as v_i . v_i'.
    Residuals are lhs / rhs - 1.
    """
    joint_self, _, _ = self_joint_probabilities(stats)
    p = np.exp(_log_marginals(stats))

    self_dot = np.einsum("ij,ij->i", pair.W, pair.C)
    with np.errstate(divide="ignore", invalid="ignore"):
        word_res = np.exp(-self_dot / 2) / (p / np.sqrt(joint_self)) - 1.0

    if pairs is None:
        pairs = _sample_pairs(stats, n_pairs, seed)
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    i, j = pairs[:, 0], pairs[:, 1]
    joint = np.exp(_log_joint(stats, pairs))
    with np.errstate(divide="ignore", invalid="ignore"):
        rhs = joint / np.sqrt(joint_self[i] * joint_self[j])
        pair_res = np.exp(-_pair_dots(pair, pairs) / 2) / rhs - 1.0

    return IdentityResiduals(word_residuals=word_res, pairs=pairs, pair_residuals=pair_res)


def factorization_residuals(pair: EmbeddingPair, pmi: PmiMatrix) -> FloatArray:
    """v_i . v_j' - PMI_ij for every stored entry, in entry order."""
    dots = np.einsum("ij,ij->i", pair.W[pmi.rows], pair.C[pmi.cols])
    return dots - pmi.values
