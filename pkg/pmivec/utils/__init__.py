from pmivec.utils.exceptions import (
    PmivecError,
    EmptyVocabularyError,
    NoSelfPairError,
    NegativeSamplingError,
    TrainingDivergedError,
    UndefinedAngleError,
    UndefinedCorrelationError,
    InsufficientCoverageError,
    DatasetFormatError,
    ArtifactFormatError,
    UsageError,
)
from pmivec.utils.types import (
    FloatArray,
    IntArray,
    BoolArray,
    WordPair,
    Variant,
    VectorKind,
    ProbabilityKind,
    SELF_FILL_FACTOR,
    LENGTH_TARGET_EPSILON,
    NEGATIVE_ATTEMPT_FACTOR,
    SELF_PMI_POSITIVE_GATE,
    pair_keys,
)
from pmivec.utils.digest import file_digest

__all__ = [
    "PmivecError",
    "EmptyVocabularyError",
    "NoSelfPairError",
    "NegativeSamplingError",
    "TrainingDivergedError",
    "UndefinedAngleError",
    "UndefinedCorrelationError",
    "InsufficientCoverageError",
    "DatasetFormatError",
    "ArtifactFormatError",
    "UsageError",
    "FloatArray",
    "IntArray",
    "BoolArray",
    "WordPair",
    "Variant",
    "VectorKind",
    "ProbabilityKind",
    "SELF_FILL_FACTOR",
    "LENGTH_TARGET_EPSILON",
    "NEGATIVE_ATTEMPT_FACTOR",
    "SELF_PMI_POSITIVE_GATE",
    "pair_keys",
    "file_digest",
]
