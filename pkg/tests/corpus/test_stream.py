import math
from collections import Counter

import numpy as np
import pytest

from pmivec.corpus import (
    TokenStream,
    build_vocab,
    discard_probabilities,
    pair_stream,
    pair_total,
    subsample,
)


def brute_force_pairs(ids, window):
    pairs = []
    for p in range(len(ids)):
        for q in range(len(ids)):
            if q != p and abs(q - p) <= window:
                pairs.append((ids[p], ids[q]))
    return pairs


class TestDiscardProbabilities:
    def test_frequency_equal_to_threshold(self):
        vocab = build_vocab(["a", "b", "c", "d"], min_count=1)
        np.testing.assert_array_equal(discard_probabilities(vocab, 0.25), 0.0)

    def test_frequency_four_times_threshold(self):
        vocab = build_vocab(["a", "a", "a", "a"] + [f"x{i}" for i in range(12)], min_count=1)
        p = discard_probabilities(vocab, 0.0625)
        assert p[vocab.id_of("a")] == pytest.approx(0.5)

    def test_rare_words_never_discarded(self):
        vocab = build_vocab(["a"] * 99 + ["b"], min_count=1)
        assert discard_probabilities(vocab, 0.05)[vocab.id_of("b")] == 0.0

    def test_threshold_must_be_positive(self):
        vocab = build_vocab(["a"], min_count=1)
        with pytest.raises(ValueError):
            discard_probabilities(vocab, 0.0)


class TestSubsample:
    def test_large_threshold_is_identity(self):
        tokens = list("abacabad")
        vocab = build_vocab(tokens, min_count=1)
        stream = subsample(tokens, vocab, t=1.0, rng=0)
        np.testing.assert_array_equal(stream.ids, vocab.encode(tokens).ids)

    def test_out_of_vocabulary_always_dropped(self):
        vocab = build_vocab(["a", "a"], min_count=2)
        stream = subsample(["a", "z", "a", "y"], vocab, t=1.0, rng=0)
        assert list(stream.ids) == [0, 0]

    def test_same_seed_same_stream(self):
        tokens = ["a"] * 900 + ["b"] * 100
        vocab = build_vocab(tokens, min_count=1)
        first = subsample(tokens, vocab, t=0.01, rng=42)
        second = subsample(tokens, vocab, t=0.01, rng=42)
        np.testing.assert_array_equal(first.ids, second.ids)

    def test_expected_retained_count(self):
        tokens = ["a"] * 900 + ["b"] * 100
        vocab = build_vocab(tokens, min_count=1)
        keep = math.sqrt(0.01 / 0.9)
        expected = 900 * keep
        standard_error = math.sqrt(900 * keep * (1 - keep)) / math.sqrt(1000)

        a = vocab.id_of("a")
        kept = [
            int((subsample(tokens, vocab, t=0.01, rng=seed).ids == a).sum())
            for seed in range(1000)
        ]
        assert abs(np.mean(kept) - expected) < 3 * standard_error


class TestPairStream:
    def test_adjacency_pairs(self):
        assert list(pair_stream(TokenStream(np.array([0, 1, 2])), 1)) == [
            (0, 1),
            (1, 0),
            (1, 2),
            (2, 1),
        ]

    def test_single_token_has_no_pairs(self):
        assert list(pair_stream(TokenStream(np.array([0])), 10)) == []

    def test_alternating_stream_multiset(self):
        pairs = Counter(pair_stream(TokenStream(np.array([0, 1, 0, 1])), 1))
        assert pairs == Counter({(0, 1): 3, (1, 0): 3})

    def test_matches_brute_force(self):
        rng = np.random.default_rng(1)
        for length in (0, 1, 2, 7, 50):
            ids = rng.integers(0, 6, size=length)
            for window in (1, 3, 10):
                pairs = list(pair_stream(TokenStream(ids), window))
                assert Counter(pairs) == Counter(brute_force_pairs(ids.tolist(), window))
                assert len(pairs) == pair_total(length, window)

    def test_pair_multiset_is_symmetric(self):
        ids = np.random.default_rng(2).integers(0, 5, size=40)
        pairs = Counter(pair_stream(TokenStream(ids), 4))
        assert all(pairs[(i, j)] == pairs[(j, i)] for i, j in pairs)

    def test_window_validated(self):
        with pytest.raises(ValueError):
            list(pair_stream(TokenStream(np.array([0, 1])), 0))
