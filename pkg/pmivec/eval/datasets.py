"""Readers for word-similarity and analogy benchmark files.

Similarity files are either tab-separated ``word1<TAB>word2<TAB>score`` with an
optional header line, or the WordSim353 CSV layout (``Word 1,Word 2,Human (mean)``
header, comma-separated). Analogy files use the questions-words layout: a line
``: category`` opens a section, every other non-blank line holds four
whitespace-separated words ``a b c d`` read as "a is to b as c is to d".

All words are lowercased to match corpus tokens.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from pmivec.utils.exceptions import DatasetFormatError

logger = logging.getLogger(__name__)

SimilarityFormat = Literal["tsv", "wordsim353"]
SimilaritySubset = Literal["ALL", "SIM", "REL"]
SIMILARITY_SUBSETS: tuple[str, ...] = ("ALL", "SIM", "REL")
SYNTACTIC_PREFIX = "gram"


@dataclass(frozen=True)
class SimilarityPair:
    word1: str
    word2: str
    score: float


@dataclass(frozen=True)
class SimilarityDataset:
    """Word pairs with human similarity ratings, in file order."""

    name: str
    subset: SimilaritySubset
    pairs: tuple[SimilarityPair, ...]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class AnalogyQuestion:
    a: str
    b: str
    c: str
    answer: str
    category: str

    @property
    def words(self) -> tuple[str, str, str, str]:
        return (self.a, self.b, self.c, self.answer)


@dataclass(frozen=True)
class AnalogyDataset:
    name: str
    questions: tuple[AnalogyQuestion, ...]

    def __len__(self) -> int:
        return len(self.questions)

    @property
    def categories(self) -> tuple[str, ...]:
        """Section names in order of first appearance."""
        return tuple(dict.fromkeys(q.category for q in self.questions))


def is_syntactic(category: str) -> bool:
    return category.startswith(SYNTACTIC_PREFIX)


def _parse_score(raw: str, line_number: int) -> float:
    try:
        score = float(raw)
    except ValueError as e:
        raise DatasetFormatError(f"bad score {raw!r}", line_number=line_number) from e
    if not math.isfinite(score):
        raise DatasetFormatError(f"non-finite score {raw!r}", line_number=line_number)
    return score


def load_similarity(
    path: str | Path,
    format: SimilarityFormat = "tsv",
    subset: SimilaritySubset = "ALL",
) -> SimilarityDataset:
    """Parse a similarity file, preserving line order.

    A pair repeated in either order keeps its first score; later copies are
    dropped with a warning. The WordSim353 combined file repeats money/bank.

    Raises:
        DatasetFormatError: On a malformed line or a non-finite score; the
            message carries the line number
        ValueError: On an unknown format or subset
    """
    if format not in ("tsv", "wordsim353"):
        raise ValueError(f"Unknown similarity format: {format}")
    if subset not in SIMILARITY_SUBSETS:
        raise ValueError(f"Unknown similarity subset: {subset}")
    separator = "\t" if format == "tsv" else ","

    pairs: list[SimilarityPair] = []
    seen: dict[frozenset[str], int] = {}
    with open(path, encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            fields = [field.strip() for field in line.split(separator)]
            if len(fields) < 3 or not fields[0] or not fields[1] or not fields[2]:
                raise DatasetFormatError(
                    f"expected word1{separator!r}word2{separator!r}score", line_number=line_number
                )
            if line_number == 1 and not pairs:
                try:
                    float(fields[2])
                except ValueError:
                    # header row
                    continue
            score = _parse_score(fields[2], line_number)
            word1, word2 = fields[0].lower(), fields[1].lower()
            key = frozenset((word1, word2))
            if key in seen:
                logger.warning(
                    f"{path}:{line_number}: pair ({word1}, {word2}) already given on line {seen[key]}, "
                    f"keeping the first score"
                )
                continue
            seen[key] = line_number
            pairs.append(SimilarityPair(word1, word2, score))

    logger.info(f"Loaded {len(pairs)} similarity pairs from {path}")
    return SimilarityDataset(name=Path(path).stem, subset=subset, pairs=tuple(pairs))


def load_analogy(path: str | Path) -> AnalogyDataset:
    """Parse a questions-words analogy file.

    Questions before the first section header fall in category "default".

    Raises:
        DatasetFormatError: If a line does not hold four distinct words
    """
    questions: list[AnalogyQuestion] = []
    category = "default"
    with open(path, encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith(":"):
                category = line[1:].strip()
                if not category:
                    raise DatasetFormatError("empty category name", line_number=line_number)
                continue
            words = line.lower().split()
            if len(words) != 4:
                raise DatasetFormatError(
                    f"expected 4 words, found {len(words)}", line_number=line_number
                )
            if len(set(words)) != 4:
                raise DatasetFormatError(
                    f"question words must be distinct: {line}", line_number=line_number
                )
            questions.append(AnalogyQuestion(*words, category=category))

    logger.info(f"Loaded {len(questions)} analogy questions from {path}")
    return AnalogyDataset(name=Path(path).stem, questions=tuple(questions))
