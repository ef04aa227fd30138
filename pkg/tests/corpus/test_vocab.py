import logging
from collections import Counter

import numpy as np
import pytest

from pmivec.corpus import (
    CorpusConfig,
    build_vocab,
    read_corpus,
    read_vocab,
    tokenize,
    write_vocab,
)
from pmivec.utils import ArtifactFormatError, EmptyVocabularyError


class TestTokenize:
    def test_whitespace_runs_and_case(self):
        assert tokenize("Hello  World\n") == ["hello", "world"]

    def test_empty_input(self):
        assert tokenize("") == []

    def test_normalized_text_unchanged(self):
        assert tokenize("a b a b") == ["a", "b", "a", "b"]

    def test_tabs_and_carriage_returns(self):
        assert tokenize("one\ttwo\r\nTHREE") == ["one", "two", "three"]

    def test_malformed_bytes_skip_token(self, caplog):
        with caplog.at_level(logging.WARNING):
            tokens = tokenize(b"good bad\xff\xfe word")
        assert tokens == ["good", "word"]
        assert any("Skipped 1 tokens" in r.message for r in caplog.records)

    def test_valid_utf8_bytes(self):
        assert tokenize("Café naïve".encode()) == ["café", "naïve"]


class TestReadCorpus:
    def test_reads_and_lowercases(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text("The cat\nsat ON the mat\n", encoding="utf-8")
        assert read_corpus(path) == ["the", "cat", "sat", "on", "the", "mat"]

    def test_max_tokens_prefix(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text("a b c d e f", encoding="utf-8")
        assert read_corpus(path, max_tokens=3) == ["a", "b", "c"]
        assert read_corpus(path, max_tokens=0) == []

    def test_negative_max_tokens(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text("a", encoding="utf-8")
        with pytest.raises(ValueError):
            read_corpus(path, max_tokens=-1)

    def test_matches_tokenize_on_whole_text(self, tmp_path):
        text = " ".join(f"tok{i % 37}" for i in range(5_000))
        path = tmp_path / "corpus.txt"
        path.write_text(text, encoding="utf-8")
        assert read_corpus(path) == tokenize(text)


class TestBuildVocab:
    def test_below_threshold_dropped(self):
        vocab = build_vocab(["a", "a", "a", "b"], min_count=2)
        assert vocab.words == ("a",)
        assert list(vocab.counts) == [3]
        assert vocab.total_tokens == 3

    def test_ties_broken_lexicographically(self):
        vocab = build_vocab(["b", "a", "b", "a"], min_count=2)
        assert vocab.id_of("a") == 0
        assert vocab.id_of("b") == 1

    def test_descending_count_order(self):
        vocab = build_vocab(list("cccbba"), min_count=1)
        assert vocab.words == ("c", "b", "a")

    def test_matches_brute_force_count(self):
        rng = np.random.default_rng(3)
        tokens = [f"w{int(x)}" for x in rng.zipf(1.5, size=10_000) % 500]
        vocab = build_vocab(tokens, min_count=5)
        expected = {w for w, c in Counter(tokens).items() if c >= 5}
        assert set(vocab.words) == expected
        assert vocab.total_tokens == sum(vocab.counts)
        assert all(c >= 5 for c in vocab.counts)

    def test_index_is_bijection(self):
        vocab = build_vocab(list("abcabcab"), min_count=1)
        assert sorted(vocab.index.values()) == list(range(len(vocab)))
        assert all(vocab.words[vocab.id_of(w)] == w for w in vocab.words)

    def test_deterministic(self):
        tokens = list("zyxzyxzzq")
        assert build_vocab(tokens, 1) == build_vocab(tokens, 1)

    def test_empty_result(self):
        with pytest.raises(EmptyVocabularyError):
            build_vocab(["a", "b"], min_count=2)

    def test_min_count_validated(self):
        with pytest.raises(ValueError):
            build_vocab(["a"], min_count=0)

    def test_encode_drops_unknown(self):
        vocab = build_vocab(["a", "a", "b"], min_count=1)
        assert list(vocab.encode(["a", "zzz", "b"]).ids) == [0, 1]
        assert list(vocab.lookup(["a", "zzz"])) == [0, -1]
        assert "zzz" not in vocab

    def test_frequency(self):
        vocab = build_vocab(["a", "a", "a", "b"], min_count=1)
        assert vocab.frequency(0) == pytest.approx(0.75)


class TestVocabIO:
    def test_write_then_read(self, tmp_path):
        vocab = build_vocab(list("aaabbc"), min_count=1)
        path = tmp_path / "vocab.txt"
        write_vocab(vocab, path)
        assert path.read_text(encoding="utf-8") == "#tokens=6\na\t3\nb\t2\nc\t1\n"
        assert read_vocab(path) == vocab

    def test_missing_header(self, tmp_path):
        path = tmp_path / "vocab.txt"
        path.write_text("a\t3\n", encoding="utf-8")
        with pytest.raises(ArtifactFormatError):
            read_vocab(path)

    def test_total_mismatch(self, tmp_path):
        path = tmp_path / "vocab.txt"
        path.write_text("#tokens=5\na\t3\n", encoding="utf-8")
        with pytest.raises(ArtifactFormatError):
            read_vocab(path)

    def test_bad_line(self, tmp_path):
        path = tmp_path / "vocab.txt"
        path.write_text("#tokens=3\na 3\n", encoding="utf-8")
        with pytest.raises(ArtifactFormatError, match=":2:"):
            read_vocab(path)


class TestCorpusConfig:
    def test_defaults(self):
        config = CorpusConfig()
        assert config.min_count == 5
        assert config.window == 10
        assert config.subsample_t == 1e-4

    def test_rejects_unknown_field(self):
        with pytest.raises(ValueError):
            CorpusConfig(windw=3)

    def test_rejects_bad_window(self):
        with pytest.raises(ValueError):
            CorpusConfig(window=0)

    def test_subsampling_can_be_disabled(self):
        assert CorpusConfig(subsample_t=None).subsample_t is None
