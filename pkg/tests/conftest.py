import numpy as np
import pytest

from pmivec import disable_tracing
from pmivec.cooccur import build_pmi_matrix, count_stream
from pmivec.corpus import TokenStream
from pmivec.trainer import EmbeddingPair, TrainConfig, train

SYNTHETIC_N = 20
SYNTHETIC_LENGTH = 10_000
SYNTHETIC_WINDOW = 2


@pytest.fixture(autouse=True)
def reset_tracing():
    """Reset observability state between tests."""
    yield
    disable_tracing()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def synthetic_stream():
    """Seeded uniform token stream over a 20-word vocabulary."""
    ids = np.random.default_rng(7).integers(0, SYNTHETIC_N, size=SYNTHETIC_LENGTH, dtype=np.int64)
    return TokenStream(ids)


@pytest.fixture(scope="session")
def synthetic_stats(synthetic_stream):
    return count_stream(synthetic_stream, SYNTHETIC_WINDOW, SYNTHETIC_N)


@pytest.fixture(scope="session")
def synthetic_pmi(synthetic_stats):
    return build_pmi_matrix(synthetic_stats)


@pytest.fixture(scope="session")
def synthetic_words():
    return [f"w{i:02d}" for i in range(SYNTHETIC_N)]


@pytest.fixture(scope="session")
def exact_pair(synthetic_pmi):
    """Embeddings with v_i . v_j' equal to every stored PMI and every self-PMI.

    Built from the SVD of the dense PMI matrix (unobserved cells set to 0,
    diagonal set to the filled self-PMI), so d = n.
    """
    dense = synthetic_pmi.to_dense(fill=0.0)
    np.fill_diagonal(dense, synthetic_pmi.self_pmi)
    u, s, vt = np.linalg.svd(dense)
    root = np.sqrt(s)
    return EmbeddingPair(W=u * root, C=vt.T * root)


@pytest.fixture(scope="session")
def exact_fit(synthetic_pmi):
    """D variant trained to (near) exact factorization of the synthetic matrix."""
    config = TrainConfig(variant="D", d=32, epochs=500, learning_rate=0.05, k=0, seed=0)
    return train(synthetic_pmi, config)
