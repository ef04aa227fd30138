from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence

import numpy as np

from pmivec.corpus.vocab import TokenStream, Vocabulary
from pmivec.utils.types import FloatArray

logger = logging.getLogger(__name__)

DEFAULT_SUBSAMPLE_T = 1e-4
DEFAULT_WINDOW = 10


def discard_probabilities(vocab: Vocabulary, t: float) -> FloatArray:
    """Per-id discard probability max(0, 1 - sqrt(t / f)) with f = count / total_tokens."""
    if t <= 0:
        raise ValueError("subsample threshold t must be > 0")
    freq = vocab.counts.astype(np.float64) / vocab.total_tokens
    return np.maximum(0.0, 1.0 - np.sqrt(t / freq))


def subsample(
    tokens: Sequence[str],
    vocab: Vocabulary,
    t: float,
    rng: np.random.Generator | int | None = None,
) -> TokenStream:
    """Drop frequent tokens at random and encode the survivors.

    Out-of-vocabulary tokens are always discarded. One uniform draw is made
    per input token, so the output is a pure function of the seed.

    Args:
        tokens: Token sequence in corpus order
        vocab: Vocabulary built on the same corpus
        t: Subsampling threshold (> 0)
        rng: Generator or seed

    Returns:
        TokenStream of retained ids
    """
    p_discard = discard_probabilities(vocab, t)
    rng = np.random.default_rng(rng)

    ids = vocab.lookup(tokens)
    draws = rng.random(len(ids))
    in_vocab = ids >= 0
    keep = in_vocab.copy()
    keep[in_vocab] = draws[in_vocab] >= p_discard[ids[in_vocab]]

    kept = ids[keep]
    logger.info(
        f"Subsampled {len(ids)} tokens to {len(kept)} "
        f"({int((~in_vocab).sum())} out of vocabulary, t={t:g})"
    )
    return TokenStream(kept)


def pair_stream(stream: TokenStream, window: int) -> Iterator[tuple[int, int]]:
    """Yield (target, context) id pairs from a fixed symmetric window.

    Every position p emits (id[p], id[q]) for q != p with |q - p| <= window,
    clipped at the stream edges. No random window shrinking.
    """
    if window < 1:
        raise ValueError("window must be >= 1")

    ids = stream.ids.tolist()
    length = len(ids)
    for p, target in enumerate(ids):
        lo = max(0, p - window)
        hi = min(length, p + window + 1)
        for q in range(lo, hi):
            if q != p:
                yield target, ids[q]


def pair_total(length: int, window: int) -> int:
    """Number of pairs pair_stream emits for a stream of the given length."""
    if length < 2:
        return 0
    total = 0
    for offset in range(1, min(window, length - 1) + 1):
        total += 2 * (length - offset)
    return total
