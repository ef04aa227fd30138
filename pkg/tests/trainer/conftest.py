import numpy as np
import pytest

from pmivec.cooccur import PmiMatrix


@pytest.fixture
def ring_pmi():
    """Sparse PMI over 30 words where only ring neighbours are observed."""
    n = 30
    rng = np.random.default_rng(5)
    ids = np.arange(n)
    rows = np.concatenate([ids, ids, ids])
    cols = np.concatenate([ids, (ids + 1) % n, (ids - 1) % n])
    order = np.argsort(rows * n + cols)
    rows, cols = rows[order], cols[order]
    values = rng.uniform(-0.5, 1.5, size=len(rows))
    diag = rows == cols
    self_pmi = np.zeros(n)
    self_pmi[rows[diag]] = values[diag]
    return PmiMatrix(
        n=n,
        rows=rows.astype(np.int64),
        cols=cols.astype(np.int64),
        values=values,
        self_pmi=self_pmi,
        self_filled=np.zeros(n, dtype=bool),
    )
