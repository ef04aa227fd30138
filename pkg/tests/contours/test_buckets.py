import logging
import math

import numpy as np
import pytest
import scipy.sparse as sp

from pmivec.contours import (
    PRESET_CENTERS,
    ContourConfig,
    bucket_by_logprob,
    conditional_log_probabilities,
)
from pmivec.cooccur import CooccurrenceStats


@pytest.fixture
def quarter_stats():
    # p(c=1 | w=0) = 1/4; p(w=0 | c=1) = 1/2; word 1 never precedes context 1
    return CooccurrenceStats.from_sparse(sp.csr_matrix(np.array([[3, 1], [1, 0]])))


class TestConditionalLogProbabilities:
    def test_context_given_target(self, quarter_stats):
        log_prob = conditional_log_probabilities(quarter_stats, "context_given_target", 1)
        assert log_prob[0] == pytest.approx(-math.log(4))
        assert math.isnan(log_prob[1])

    def test_target_given_context(self, quarter_stats):
        log_prob = conditional_log_probabilities(quarter_stats, "target_given_context", 0)
        np.testing.assert_allclose(log_prob, [math.log(3 / 4), math.log(1 / 4)])

    def test_probabilities_sum_to_one(self, synthetic_stats):
        log_prob = conditional_log_probabilities(synthetic_stats, "target_given_context", 3)
        assert np.nansum(np.exp(log_prob)) == pytest.approx(1.0)

    def test_bad_kind(self, quarter_stats):
        with pytest.raises(ValueError):
            conditional_log_probabilities(quarter_stats, "joint", 0)

    def test_out_of_range(self, quarter_stats):
        with pytest.raises(IndexError):
            conditional_log_probabilities(quarter_stats, "context_given_target", 2)


class TestBucketByLogprob:
    def test_boundary_is_inclusive(self, quarter_stats):
        edge = abs(conditional_log_probabilities(quarter_stats, "context_given_target", 1)[0])
        buckets = bucket_by_logprob(
            quarter_stats, "context_given_target", 1, centers=[0.0], half_width=edge
        )
        assert buckets.members[0].tolist() == [0]

    def test_just_outside_boundary(self, quarter_stats):
        buckets = bucket_by_logprob(
            quarter_stats, "context_given_target", 1, centers=[0.0], half_width=math.log(4) - 1e-9
        )
        assert buckets.members[0].tolist() == []

    def test_empty_bucket(self, quarter_stats):
        buckets = bucket_by_logprob(quarter_stats, "context_given_target", 1, centers=[-20.0], half_width=0.1)
        assert len(buckets) == 1
        assert len(buckets.members[0]) == 0

    def test_unobserved_words_in_no_bucket(self, quarter_stats):
        buckets = bucket_by_logprob(quarter_stats, "context_given_target", 1, centers=[-1.0], half_width=50.0)
        assert buckets.labels_of(1) == []
        assert buckets.labels_of(0) == [-1.0]

    def test_presets(self, synthetic_stats):
        buckets = bucket_by_logprob(synthetic_stats, "target_given_context", 0)
        assert buckets.centers == PRESET_CENTERS["target_given_context"]
        assert buckets.half_width == 0.7

    def test_overlap_flagged(self, quarter_stats, caplog):
        with caplog.at_level(logging.WARNING):
            buckets = bucket_by_logprob(
                quarter_stats, "context_given_target", 1, centers=[-1.5, -1.3], half_width=0.2
            )
        assert buckets.overlapping
        assert buckets.labels_of(0) == [-1.5, -1.3]
        assert any("overlap" in r.message for r in caplog.records)

    def test_preset_overlap(self, synthetic_stats):
        # -16.0 and -15.6 sit closer than 2 * 0.7
        assert bucket_by_logprob(synthetic_stats, "target_given_context", 0).overlapping

    def test_invalid_buckets(self, quarter_stats):
        with pytest.raises(ValueError):
            bucket_by_logprob(quarter_stats, "context_given_target", 1, centers=[])
        with pytest.raises(ValueError):
            bucket_by_logprob(quarter_stats, "context_given_target", 1, centers=[0.0], half_width=0.0)


class TestContourConfig:
    def test_defaults(self):
        config = ContourConfig(context_word="the")
        assert config.kind == "context_given_target"
        assert config.centers is None

    def test_empty_centers(self):
        with pytest.raises(ValueError):
            ContourConfig(context_word="the", centers=())

    def test_bad_half_width(self):
        with pytest.raises(ValueError):
            ContourConfig(context_word="the", half_width=-1.0)
