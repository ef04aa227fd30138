from pmivec.cooccur.stats import (
    CooccurrenceStats,
    count_pairs,
    count_stream,
    merge_stats,
)
from pmivec.cooccur.pmi import (
    PmiMatrix,
    SelfPmi,
    pmi,
    self_pmi_fill,
    self_joint_probabilities,
    build_pmi_matrix,
    self_pmi_positive_fraction,
)
from pmivec.cooccur.io import (
    read_pmi,
    write_pmi,
    write_pmi_tsv,
    read_stats,
    write_stats,
)

__all__ = [
    "CooccurrenceStats",
    "count_pairs",
    "count_stream",
    "merge_stats",
    "PmiMatrix",
    "SelfPmi",
    "pmi",
    "self_pmi_fill",
    "self_joint_probabilities",
    "build_pmi_matrix",
    "self_pmi_positive_fraction",
    "read_pmi",
    "write_pmi",
    "write_pmi_tsv",
    "read_stats",
    "write_stats",
]
