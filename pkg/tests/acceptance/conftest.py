import os
from pathlib import Path

import pytest

from pmivec import build_pmi_matrix, build_vocab, count_stream, read_corpus, subsample, train
from pmivec.trainer import TrainConfig

TEXT8_TOKENS = 3_200_000
TEXT8_MIN_COUNT = 5
TEXT8_WINDOW = 10


def _env_path(name: str) -> Path:
    value = os.environ.get(name)
    if not value or not Path(value).is_file():
        pytest.skip(f"{name} does not point at a file")
    return Path(value)


@pytest.fixture(scope="session")
def text8_path():
    return _env_path("PMIVEC_TEXT8")


@pytest.fixture(scope="session")
def wordsim_path():
    return _env_path("PMIVEC_WORDSIM")


@pytest.fixture(scope="session")
def analogy_path():
    return _env_path("PMIVEC_ANALOGY")


@pytest.fixture(scope="session")
def text8_counts(text8_path):
    """Vocabulary and count table for the first 3.2m text8 tokens."""
    tokens = read_corpus(text8_path, TEXT8_TOKENS)
    vocab = build_vocab(tokens, TEXT8_MIN_COUNT)
    stream = subsample(tokens, vocab, 1e-4, 0)
    stats = count_stream(stream, TEXT8_WINDOW, len(vocab))
    return vocab, stats


@pytest.fixture(scope="session")
def text8_pmi(text8_counts):
    return build_pmi_matrix(text8_counts[1])


@pytest.fixture(scope="session")
def trained(text8_pmi):
    """Lazily trained d=500 models keyed by variant."""
    cache = {}

    def get(variant: str):
        if variant not in cache:
            cfg = TrainConfig(variant=variant, d=500, epochs=100, k=5, seed=0, batch_size=1024)
            cache[variant] = train(text8_pmi, cfg).embeddings
        return cache[variant]

    return get
