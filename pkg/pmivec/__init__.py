__version__ = "0.1.0"

from pmivec.corpus import (
    Vocabulary,
    TokenStream,
    read_corpus,
    build_vocab,
    subsample,
    pair_stream,
)
from pmivec.cooccur import (
    CooccurrenceStats,
    PmiMatrix,
    count_pairs,
    count_stream,
    build_pmi_matrix,
    self_pmi_fill,
)
from pmivec.trainer import (
    TrainConfig,
    EmbeddingPair,
    TrainResult,
    train,
)
from pmivec.geometry import (
    decompose,
    word_geometry,
    split_height,
    log_probability_residuals,
    quasi_sphere_check,
    geometry_report,
)
from pmivec.eval import (
    WordVectors,
    load_similarity,
    load_analogy,
    evaluate_similarity,
    evaluate_analogy,
)
from pmivec.contours import (
    project_relative,
    bucket_by_logprob,
    export_contour_csv,
)
from pmivec.lifecycle import (
    enable_tracing,
    disable_tracing,
    StageEvent,
    add_listener,
    track_stage,
)
from pmivec.utils import (
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

__all__ = [
    # Version
    "__version__",
    # Corpus
    "Vocabulary",
    "TokenStream",
    "read_corpus",
    "build_vocab",
    "subsample",
    "pair_stream",
    # Co-occurrence
    "CooccurrenceStats",
    "PmiMatrix",
    "count_pairs",
    "count_stream",
    "build_pmi_matrix",
    "self_pmi_fill",
    # Training
    "TrainConfig",
    "EmbeddingPair",
    "TrainResult",
    "train",
    # Geometry
    "decompose",
    "word_geometry",
    "split_height",
    "log_probability_residuals",
    "quasi_sphere_check",
    "geometry_report",
    # Evaluation
    "WordVectors",
    "load_similarity",
    "load_analogy",
    "evaluate_similarity",
    "evaluate_analogy",
    # Contours
    "project_relative",
    "bucket_by_logprob",
    "export_contour_csv",
    # Lifecycle
    "enable_tracing",
    "disable_tracing",
    "StageEvent",
    "add_listener",
    "track_stage",
    # Errors
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
]
