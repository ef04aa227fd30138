from __future__ import annotations

from collections.abc import Collection

import numpy as np

from pmivec.utils.exceptions import NegativeSamplingError
from pmivec.utils.types import NEGATIVE_ATTEMPT_FACTOR, IntArray, WordPair, pair_keys


def as_exclusion_keys(pairs: IntArray | Collection[WordPair], n: int) -> IntArray:
    """Sorted int64 keys i * n + j for a set of observed pairs.

    An ndarray is taken to already hold sorted keys.
    """
    if isinstance(pairs, np.ndarray):
        return pairs.astype(np.int64, copy=False)
    if not pairs:
        return np.zeros(0, dtype=np.int64)
    arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
    return np.unique(pair_keys(arr[:, 0], arr[:, 1], n))


def _is_member(keys: IntArray, sorted_keys: IntArray) -> np.ndarray:
    if len(sorted_keys) == 0:
        return np.zeros(len(keys), dtype=bool)
    pos = np.searchsorted(sorted_keys, keys)
    pos[pos == len(sorted_keys)] = 0
    return sorted_keys[pos] == keys


def draw_negatives(
    rng: np.random.Generator,
    n: int,
    k: int,
    exclusion: IntArray | Collection[WordPair],
) -> IntArray:
    """Draw k ordered pairs uniformly among unobserved, non-self pairs.

    Candidates are drawn uniformly over {0..n-1}^2 and rejected when they are
    self-pairs or in the exclusion set. At most 1000 * k candidates are drawn.

    Args:
        rng: Seeded generator (consumed)
        n: Vocabulary size
        k: Number of pairs to return
        exclusion: Observed pairs, as sorted keys or a collection of (i, j)

    Returns:
        int64 array of shape (k, 2)

    Raises:
        ValueError: If k < 0
        NegativeSamplingError: If the attempt budget is exhausted
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return np.zeros((0, 2), dtype=np.int64)

    excluded = as_exclusion_keys(exclusion, n)
    budget = NEGATIVE_ATTEMPT_FACTOR * k
    attempts = 0
    accepted: list[IntArray] = []
    need = k
    while need > 0:
        if attempts >= budget:
            raise NegativeSamplingError(
                f"Drew {attempts} candidates but only {k - need} of {k} negatives were "
                f"unobserved; the PMI matrix is too dense to sample from"
            )
        batch = min(max(2 * need, 64), budget - attempts)
        i = rng.integers(0, n, size=batch, dtype=np.int64)
        j = rng.integers(0, n, size=batch, dtype=np.int64)
        attempts += batch
        ok = (i != j) & ~_is_member(pair_keys(i, j, n), excluded)
        good = np.stack([i[ok], j[ok]], axis=1)[:need]
        accepted.append(good)
        need -= len(good)
    return np.concatenate(accepted, axis=0)
