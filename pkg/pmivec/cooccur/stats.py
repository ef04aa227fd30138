from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np
import scipy.sparse as sp

from pmivec.corpus.vocab import TokenStream
from pmivec.utils.types import IntArray, WordPair, pair_keys

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CooccurrenceStats:
    """Frozen co-occurrence counts as a coordinate list sorted by (target, context).

    Marginals are derived by summation, so row sums equal target_counts and
    column sums equal context_counts.
    """

    n: int
    rows: IntArray
    cols: IntArray
    counts: IntArray
    target_counts: IntArray
    context_counts: IntArray
    total_pairs: int

    @property
    def nnz(self) -> int:
        return len(self.counts)

    @cached_property
    def keys(self) -> IntArray:
        """Sorted pair keys i * n + j, computed once."""
        return pair_keys(self.rows, self.cols, self.n)

    def count(self, i: int, j: int) -> int:
        """Observed count of the ordered pair (i, j); 0 when unobserved."""
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"pair ({i}, {j}) out of range for vocabulary of size {self.n}")
        return int(self.counts_of(np.array([i]), np.array([j]))[0])

    def counts_of(self, i: IntArray, j: IntArray) -> IntArray:
        """Vectorised count: observed counts of the pairs (i[k], j[k]), 0 where unobserved."""
        keys = self.keys
        wanted = pair_keys(i, j, self.n)
        out = np.zeros(len(wanted), dtype=np.int64)
        if len(keys) == 0:
            return out
        pos = np.minimum(np.searchsorted(keys, wanted), len(keys) - 1)
        found = keys[pos] == wanted
        out[found] = self.counts[pos[found]]
        return out

    def diagonal(self) -> IntArray:
        """Self-pair counts pair_counts(i, i) for every id."""
        diag = np.zeros(self.n, dtype=np.int64)
        on_diag = self.rows == self.cols
        diag[self.rows[on_diag]] = self.counts[on_diag]
        return diag

    def to_csr(self) -> sp.csr_matrix:
        return sp.csr_matrix((self.counts, (self.rows, self.cols)), shape=(self.n, self.n))

    def is_symmetric(self) -> bool:
        """True when pair_counts(i, j) == pair_counts(j, i) for all pairs."""
        csr = self.to_csr()
        return (csr != csr.T).nnz == 0

    @classmethod
    def empty(cls, n: int) -> CooccurrenceStats:
        zeros = np.zeros(0, dtype=np.int64)
        return cls(
            n=n,
            rows=zeros,
            cols=zeros.copy(),
            counts=zeros.copy(),
            target_counts=np.zeros(n, dtype=np.int64),
            context_counts=np.zeros(n, dtype=np.int64),
            total_pairs=0,
        )

    @classmethod
    def from_sparse(cls, matrix: sp.spmatrix) -> CooccurrenceStats:
        """Freeze a square sparse count matrix (duplicates are summed)."""
        csr = sp.csr_matrix(matrix, dtype=np.int64)
        csr.sum_duplicates()
        csr.eliminate_zeros()
        csr.sort_indices()
        n = csr.shape[0]
        coo = csr.tocoo()
        return cls(
            n=n,
            rows=coo.row.astype(np.int64),
            cols=coo.col.astype(np.int64),
            counts=coo.data.astype(np.int64),
            target_counts=np.asarray(csr.sum(axis=1), dtype=np.int64).ravel(),
            context_counts=np.asarray(csr.sum(axis=0), dtype=np.int64).ravel(),
            total_pairs=int(coo.data.sum()),
        )


def count_pairs(pairs: Iterable[WordPair], n: int | None = None) -> CooccurrenceStats:
    """Exact multiset counts of (target, context) pairs.

    Args:
        pairs: Pair iterator, e.g. from pair_stream
        n: Vocabulary size (inferred as max id + 1 when omitted)

    Returns:
        Frozen CooccurrenceStats
    """
    counter: Counter[WordPair] = Counter(pairs)
    if not counter:
        return CooccurrenceStats.empty(n or 0)

    rows = np.fromiter((i for i, _ in counter), dtype=np.int64, count=len(counter))
    cols = np.fromiter((j for _, j in counter), dtype=np.int64, count=len(counter))
    data = np.fromiter(counter.values(), dtype=np.int64, count=len(counter))
    if n is None:
        n = int(max(rows.max(), cols.max())) + 1
    return CooccurrenceStats.from_sparse(sp.coo_matrix((data, (rows, cols)), shape=(n, n)))


def _count_shard(ids: IntArray, window: int, n: int, start: int, stop: int) -> sp.csr_matrix:
    """Count pairs whose target position lies in [start, stop)."""
    length = len(ids)
    acc = sp.csr_matrix((n, n), dtype=np.int64)
    for offset in range(1, window + 1):
        # context to the right: target p, context p + offset
        hi = min(stop, length - offset)
        if hi > start:
            t = ids[start:hi]
            c = ids[start + offset : hi + offset]
            acc = acc + sp.coo_matrix((np.ones(len(t), dtype=np.int64), (t, c)), shape=(n, n)).tocsr()
        # context to the left: target p, context p - offset
        lo = max(start, offset)
        if stop > lo:
            t = ids[lo:stop]
            c = ids[lo - offset : stop - offset]
            acc = acc + sp.coo_matrix((np.ones(len(t), dtype=np.int64), (t, c)), shape=(n, n)).tocsr()
    return acc


def count_stream(stream: TokenStream, window: int, n: int, threads: int = 1) -> CooccurrenceStats:
    """Vectorised equivalent of count_pairs(pair_stream(stream, window)).

    With threads > 1 the target positions are split into contiguous shards
    counted in parallel and merged by summation.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if threads < 1:
        raise ValueError("threads must be >= 1")

    ids = np.asarray(stream.ids, dtype=np.int64)
    if len(ids) and int(ids.max()) >= n:
        raise IndexError(f"stream id {int(ids.max())} out of range for vocabulary of size {n}")

    bounds = np.linspace(0, len(ids), threads + 1).astype(np.int64)
    shards = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    if not shards:
        return CooccurrenceStats.empty(n)

    if len(shards) == 1:
        parts = [_count_shard(ids, window, n, *shards[0])]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda s: _count_shard(ids, window, n, *s), shards))
        logger.debug(f"Counted {len(shards)} shards over {len(ids)} positions")

    stats = CooccurrenceStats.from_sparse(reduce(lambda a, b: a + b, parts))
    logger.info(f"Counted {stats.total_pairs} pairs ({stats.nnz} distinct, window={window})")
    return stats


def merge_stats(a: CooccurrenceStats, b: CooccurrenceStats) -> CooccurrenceStats:
    """Sum two count tables over the same vocabulary (associative and commutative)."""
    if a.n != b.n:
        raise ValueError(f"Cannot merge stats over vocabularies of size {a.n} and {b.n}")
    return CooccurrenceStats.from_sparse(a.to_csr() + b.to_csr())
