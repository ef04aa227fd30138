from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from pmivec.cooccur.pmi import PmiMatrix
from pmivec.lifecycle.observability import track_stage
from pmivec.trainer.config import TrainConfig
from pmivec.trainer.embeddings import EmbeddingPair, init_embeddings
from pmivec.trainer.losses import (
    batch_loss_and_grad_D,
    batch_loss_and_grad_L,
    batch_loss_and_grad_P,
    loss_and_grad_D,
    loss_and_grad_L,
    loss_and_grad_P,
    loss_and_grad_shifted,
)
from pmivec.trainer.negatives import draw_negatives
from pmivec.trainer.optim import Optimizer, make_optimizer
from pmivec.utils.exceptions import TrainingDivergedError
from pmivec.utils.types import LENGTH_TARGET_EPSILON, FloatArray, IntArray

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EpochLoss:
    """Mean per-pair losses of one epoch."""

    epoch: int
    mean_positive_loss: float
    mean_negative_loss: float


@dataclass(frozen=True)
class TrainResult:
    """Trained embeddings plus the per-epoch loss trace."""

    embeddings: EmbeddingPair
    trace: list[EpochLoss] = field(default_factory=list)
    negative_target: float = 0.0
    clamped_length_targets: int = 0


@dataclass(frozen=True)
class _Plan:
    """Everything a worker needs to run updates, fixed for the whole run."""

    config: TrainConfig
    rows: IntArray
    cols: IntArray
    targets: FloatArray
    self_pmi: FloatArray
    length_self_pmi: FloatArray
    weights: FloatArray
    negative_target: float


def clamp_length_targets(self_pmi: FloatArray) -> tuple[FloatArray, int]:
    """Replace non-positive self-PMI by epsilon so sqrt(PMI_ii) is defined."""
    bad = self_pmi <= 0
    return np.where(bad, LENGTH_TARGET_EPSILON, self_pmi), int(bad.sum())


def _run_updates(
    plan: _Plan,
    pair: EmbeddingPair,
    optimizer: Optimizer,
    order: IntArray,
    negatives: IntArray,
    epoch: int,
) -> tuple[float, float]:
    """Apply positive updates in the given order, each followed by its negatives.

    Returns:
        (sum of positive losses, sum of negative losses)
    """
    cfg = plan.config
    W, C = pair.W, pair.C
    shift = cfg.resolved_shift
    pos_total = 0.0
    neg_total = 0.0

    for slot, e in enumerate(order.tolist()):
        i = int(plan.rows[e])
        j = int(plan.cols[e])
        w = plan.weights[e]

        if cfg.variant == "D":
            loss, gv, gc = loss_and_grad_D(W[i], C[j], plan.targets[e])
            g_ctx = None
        elif cfg.variant == "shifted":
            # targets already hold PMI; shift applied here
            loss, gv, gc = loss_and_grad_shifted(W[i], C[j], plan.targets[e], shift)
            g_ctx = None
        elif cfg.variant == "L":
            loss, gv, gc = loss_and_grad_L(
                W[i], C[j], plan.targets[e],
                plan.length_self_pmi[i], plan.length_self_pmi[j],
                cfg.alpha1, cfg.alpha2,
            )
            g_ctx = None
        else:
            loss, gv, g_ctx, gc = loss_and_grad_P(
                W[i], C[i], C[j], plan.targets[e], plan.self_pmi[i], cfg.alpha1, cfg.alpha2
            )

        if not math.isfinite(loss):
            raise TrainingDivergedError(
                f"Non-finite loss at entry {e} ({i}, {j}) in epoch {epoch}", entry=e, epoch=epoch
            )

        optimizer.step("W", i, w * gv)
        if g_ctx is None:
            optimizer.step("C", j, w * gc)
        elif i == j:
            optimizer.step("C", j, w * (gc + g_ctx))
        else:
            optimizer.step("C", j, w * gc)
            optimizer.step("C", i, w * g_ctx)
        optimizer.advance()
        pos_total += loss

        for a, b in negatives[slot].tolist():
            nloss, ga, gb = loss_and_grad_D(W[a], C[b], plan.negative_target)
            if not math.isfinite(nloss):
                raise TrainingDivergedError(
                    f"Non-finite negative loss after entry {e} in epoch {epoch}", entry=e, epoch=epoch
                )
            optimizer.step("W", a, ga)
            optimizer.step("C", b, gb)
            optimizer.advance()
            neg_total += nloss

    return pos_total, neg_total


def _row_sums(rows: IntArray, grads: FloatArray) -> tuple[IntArray, FloatArray]:
    """Sum gradient rows that share a parameter row."""
    unique, inverse = np.unique(rows, return_inverse=True)
    summed = np.zeros((len(unique), grads.shape[1]))
    np.add.at(summed, inverse, grads)
    return unique, summed


def _run_batched(
    plan: _Plan,
    pair: EmbeddingPair,
    optimizer: Optimizer,
    order: IntArray,
    negatives: IntArray,
    epoch: int,
) -> tuple[float, float]:
    """_run_updates over blocks of batch_size positives.

    Every gradient in a block is taken at the parameters as they stood before
    the block; gradients hitting the same row are summed and applied as one
    optimizer step.
    """
    cfg = plan.config
    W, C = pair.W, pair.C
    k = negatives.shape[1]
    pos_total = 0.0
    neg_total = 0.0

    for start in range(0, len(order), cfg.batch_size):
        e = order[start : start + cfg.batch_size]
        i, j = plan.rows[e], plan.cols[e]
        w = plan.weights[e][:, None]
        targets = plan.targets[e]

        g_ctx = None
        if cfg.variant == "D":
            loss, gv, gc = batch_loss_and_grad_D(W[i], C[j], targets)
        elif cfg.variant == "shifted":
            loss, gv, gc = batch_loss_and_grad_D(W[i], C[j], targets - cfg.resolved_shift)
        elif cfg.variant == "L":
            loss, gv, gc = batch_loss_and_grad_L(
                W[i], C[j], targets,
                plan.length_self_pmi[i], plan.length_self_pmi[j],
                cfg.alpha1, cfg.alpha2,
            )
        else:
            loss, gv, g_ctx, gc = batch_loss_and_grad_P(
                W[i], C[i], C[j], targets, plan.self_pmi[i], cfg.alpha1, cfg.alpha2
            )

        bad = ~np.isfinite(loss)
        if bad.any():
            entry = int(e[bad][0])
            raise TrainingDivergedError(
                f"Non-finite loss at entry {entry} in epoch {epoch}", entry=entry, epoch=epoch
            )

        w_rows, w_grads = [i], [w * gv]
        c_rows, c_grads = [j], [w * gc]
        if g_ctx is not None:
            c_rows.append(i)
            c_grads.append(w * g_ctx)

        if k:
            neg = negatives[start : start + cfg.batch_size].reshape(-1, 2)
            a, b = neg[:, 0], neg[:, 1]
            nloss, ga, gb = batch_loss_and_grad_D(W[a], C[b], np.full(len(neg), plan.negative_target))
            if not np.isfinite(nloss).all():
                entry = int(e[0])
                raise TrainingDivergedError(
                    f"Non-finite negative loss in the block starting at entry {entry} in epoch {epoch}",
                    entry=entry,
                    epoch=epoch,
                )
            w_rows.append(a)
            w_grads.append(ga)
            c_rows.append(b)
            c_grads.append(gb)
            neg_total += float(nloss.sum())

        optimizer.step_rows("W", *_row_sums(np.concatenate(w_rows), np.concatenate(w_grads)))
        optimizer.step_rows("C", *_row_sums(np.concatenate(c_rows), np.concatenate(c_grads)))
        optimizer.advance(len(e) * (1 + k))
        pos_total += float(loss.sum())

    return pos_total, neg_total


def _make_plan(pmi: PmiMatrix, config: TrainConfig, weights: FloatArray | None) -> tuple[_Plan, int]:
    targets = pmi.values
    regression_targets = targets - config.resolved_shift if config.variant == "shifted" else targets
    if config.negative_target is not None:
        negative_target = config.negative_target
    else:
        negative_target = float(regression_targets.min())

    length_self_pmi, clamped = clamp_length_targets(pmi.self_pmi)
    if config.variant == "L" and clamped:
        logger.warning(
            f"Clamped {clamped} non-positive self-PMI length targets to sqrt({LENGTH_TARGET_EPSILON})"
        )

    if config.weighting == "count":
        if weights is None or len(weights) != pmi.nnz:
            raise ValueError("count weighting needs one pair count per stored PMI entry")
        scaled = np.asarray(weights, dtype=np.float64)
        scaled = scaled / scaled.mean()
    else:
        scaled = np.ones(pmi.nnz, dtype=np.float64)

    plan = _Plan(
        config=config,
        rows=pmi.rows,
        cols=pmi.cols,
        targets=targets,
        self_pmi=pmi.self_pmi,
        length_self_pmi=length_self_pmi,
        weights=scaled,
        negative_target=negative_target,
    )
    return plan, clamped


def train(pmi: PmiMatrix, config: TrainConfig, weights: FloatArray | None = None) -> TrainResult:
    """Fit W and C to the PMI matrix by per-pair stochastic gradient descent.

    Each epoch visits every stored entry once in a seeded shuffled order. Every
    positive update is followed by k negative updates that regress unobserved
    pairs toward the negative target. With batch_size > 1 the updates of
    batch_size consecutive positives and their negatives are computed together
    and applied as one step per touched row. In deterministic mode the result
    is a pure function of (pmi, config); sharded mode runs lock-free workers whose
    overlapping writes make the result nondeterministic.

    Args:
        pmi: PMI matrix to fit
        config: Resolved training options
        weights: Pair counts aligned with the PMI entries (count weighting only)

    Returns:
        TrainResult with frozen embeddings and per-epoch losses

    Raises:
        ValueError: If the matrix has fewer than 2 words or no entries
        TrainingDivergedError: If a loss becomes non-finite
        NegativeSamplingError: If negatives cannot be drawn
    """
    if pmi.n < 2:
        raise ValueError("training needs a vocabulary of at least 2 words")
    if pmi.nnz == 0:
        raise ValueError("PMI matrix has no stored entries")

    init_seq, order_seq = np.random.SeedSequence(config.seed).spawn(2)
    pair = init_embeddings(pmi.n, config.d, init_seq)
    plan, clamped = _make_plan(pmi, config, weights)

    nnz = pmi.nnz
    k = config.k
    total_steps = config.epochs * nnz * (1 + k)
    optimizer = make_optimizer(
        config.optimizer, config.learning_rate, {"W": pair.W, "C": pair.C}, total_steps
    )
    exclusion = pmi.keys
    rng = np.random.default_rng(order_seq)
    sharded = config.parallel_mode == "sharded" and config.threads > 1
    run = _run_batched if config.batch_size > 1 else _run_updates

    logger.info(
        f"Training variant {config.variant}: n={pmi.n}, d={config.d}, entries={nnz}, "
        f"epochs={config.epochs}, k={k}, batch size={config.batch_size}, negative target={plan.negative_target:.4f}, "
        f"mode={'sharded' if sharded else 'deterministic'}"
    )

    trace: list[EpochLoss] = []
    for epoch in range(config.epochs):
        with track_stage("epoch", epoch=epoch, variant=config.variant) as ctx:
            order = rng.permutation(nnz)
            negatives = draw_negatives(rng, pmi.n, k * nnz, exclusion).reshape(nnz, k, 2)

            if sharded:
                shards = np.array_split(np.arange(nnz), config.threads)
                with ThreadPoolExecutor(max_workers=config.threads) as pool:
                    futures = [
                        pool.submit(run, plan, pair, optimizer, order[s], negatives[s], epoch)
                        for s in shards
                        if len(s)
                    ]
                    sums = [f.result() for f in futures]
                pos_total = sum(p for p, _ in sums)
                neg_total = sum(q for _, q in sums)
            else:
                pos_total, neg_total = run(plan, pair, optimizer, order, negatives, epoch)

            record = EpochLoss(
                epoch=epoch,
                mean_positive_loss=pos_total / nnz,
                mean_negative_loss=neg_total / (nnz * k) if k else 0.0,
            )
            ctx["mean_positive_loss"] = record.mean_positive_loss
            ctx["mean_negative_loss"] = record.mean_negative_loss
        trace.append(record)

        if (epoch + 1) % 10 == 0 or epoch + 1 == config.epochs:
            logger.info(
                f"Epoch {epoch + 1}/{config.epochs}: positive loss {record.mean_positive_loss:.6f}, "
                f"negative loss {record.mean_negative_loss:.6f}"
            )
        else:
            logger.debug(f"Epoch {epoch + 1}: positive loss {record.mean_positive_loss:.6f}")

    return TrainResult(
        embeddings=pair.freeze(),
        trace=trace,
        negative_target=plan.negative_target,
        clamped_length_targets=clamped,
    )
