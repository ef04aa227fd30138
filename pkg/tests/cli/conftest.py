import numpy as np
import pytest

from pmivec.cli.main import main
from pmivec.cooccur import write_pmi
from pmivec.corpus import Vocabulary, write_vocab


@pytest.fixture(scope="session")
def ring_corpus(tmp_path_factory):
    """40-word corpus where each token is followed by itself or one of its next two neighbours."""
    rng = np.random.default_rng(21)
    steps = rng.integers(0, 3, size=3_000)
    ids = np.cumsum(steps) % 40
    path = tmp_path_factory.mktemp("corpus") / "ring.txt"
    path.write_text(" ".join(f"w{i}" for i in ids) + "\n", encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def cooccur_dir(ring_corpus, tmp_path_factory):
    out = tmp_path_factory.mktemp("cooccur")
    code = main(
        ["cooccur", str(ring_corpus), "--min-count", "1", "--window", "2", "--no-subsample", "--out", str(out)]
    )
    assert code == 0
    return out


@pytest.fixture(scope="session")
def train_dir(cooccur_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp("train")
    code = main(
        ["train", str(cooccur_dir / "pmi.bin"), "--dim", "8", "--epochs", "3", "-k", "2", "--out-dir", str(out)]
    )
    assert code == 0
    return out


@pytest.fixture(scope="session")
def synthetic_dir(synthetic_pmi, synthetic_stream, synthetic_words, tmp_path_factory):
    """pmi.bin and vocab.txt for the dense 20-word synthetic matrix."""
    out = tmp_path_factory.mktemp("synthetic")
    counts = np.bincount(synthetic_stream.ids, minlength=len(synthetic_words))
    vocab = Vocabulary(words=tuple(synthetic_words), counts=counts, total_tokens=len(synthetic_stream))
    write_vocab(vocab, out / "vocab.txt")
    write_pmi(synthetic_pmi, out / "pmi.bin")
    return out
