from __future__ import annotations


class PmivecError(Exception):
    """Base exception for all pmivec errors."""


class EmptyVocabularyError(PmivecError):
    """Raised when no word survives the min-count filter."""


class NoSelfPairError(PmivecError):
    """Raised when no word co-occurs with itself, so self-PMI cannot be filled."""


class NegativeSamplingError(PmivecError):
    """Raised when negative pairs cannot be drawn within the attempt budget."""


class TrainingDivergedError(PmivecError):
    """Raised when a non-finite loss is encountered during training."""

    def __init__(self, message: str, *, entry: int, epoch: int) -> None:
        super().__init__(message)
        self.entry = entry
        self.epoch = epoch


class UndefinedAngleError(PmivecError):
    """Raised when an angle is requested for a zero-norm vector."""


class UndefinedCorrelationError(PmivecError):
    """Raised when a rank correlation has zero variance on one side."""


class InsufficientCoverageError(PmivecError):
    """Raised when too few dataset items are in vocabulary (or otherwise scorable) to score."""


class DatasetFormatError(PmivecError):
    """Raised when an evaluation dataset line cannot be parsed."""

    def __init__(self, message: str, *, line_number: int) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ArtifactFormatError(PmivecError):
    """Raised when a vocabulary, stats, PMI or vector file is malformed."""


class UsageError(PmivecError):
    """Raised when a command-line flag fails validation."""

    def __init__(self, message: str, *, flag: str) -> None:
        super().__init__(f"{flag}: {message}")
        self.flag = flag
