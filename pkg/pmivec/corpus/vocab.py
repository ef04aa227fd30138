from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from pmivec.utils.exceptions import ArtifactFormatError, EmptyVocabularyError
from pmivec.utils.types import IntArray

logger = logging.getLogger(__name__)

REPLACEMENT_CHAR = "\ufffd"
_READ_CHUNK = 1 << 20
_HEADER_PREFIX = "#tokens="


@dataclass(frozen=True)
class TokenStream:
    """Word ids in corpus order; every id is below the vocabulary size."""

    ids: IntArray

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True)
class Vocabulary:
    """Word <-> id map with post-filter counts.

    Ids follow descending count, ties broken lexicographically.
    """

    words: tuple[str, ...]
    counts: IntArray
    total_tokens: int
    index: dict[str, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self.index:
            object.__setattr__(self, "index", {w: i for i, w in enumerate(self.words)})

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: object) -> bool:
        return word in self.index

    def id_of(self, word: str) -> int:
        """Return the id of a word. Raises KeyError when out of vocabulary."""
        return self.index[word]

    def frequency(self, word_id: int) -> float:
        """Corpus frequency count / total_tokens of a word id."""
        return float(self.counts[word_id]) / self.total_tokens

    def encode(self, tokens: Iterable[str]) -> TokenStream:
        """Map tokens to ids, dropping out-of-vocabulary tokens."""
        index = self.index
        ids = [index[t] for t in tokens if t in index]
        return TokenStream(np.asarray(ids, dtype=np.int64))

    def lookup(self, tokens: Iterable[str]) -> IntArray:
        """Map tokens to ids with -1 marking out-of-vocabulary tokens."""
        index = self.index
        return np.fromiter((index.get(t, -1) for t in tokens), dtype=np.int64)


def _split_tokens(text: str) -> tuple[list[str], int]:
    """Whitespace split + lowercase; tokens carrying a replacement char are skipped."""
    tokens: list[str] = []
    skipped = 0
    for raw in text.split():
        if REPLACEMENT_CHAR in raw:
            skipped += 1
            continue
        tokens.append(raw.lower())
    return tokens, skipped


def tokenize(text: str | bytes) -> list[str]:
    """Split text on whitespace runs and lowercase every token.

    Bytes are decoded as UTF-8; malformed sequences are replaced and the
    token containing them is skipped. Skipped tokens are tallied in a warning.

    Args:
        text: Raw text or UTF-8 bytes

    Returns:
        List of non-empty lowercase tokens
    """
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8", errors="replace")
    tokens, skipped = _split_tokens(text)
    if skipped:
        logger.warning(f"Skipped {skipped} tokens containing malformed byte sequences")
    return tokens


def _iter_chunks(path: Path) -> Iterator[str]:
    """Yield decoded chunks of a file that never split a token."""
    tail = b""
    with open(path, "rb") as f:
        while True:
            block = f.read(_READ_CHUNK)
            if not block:
                break
            data = tail + block
            # ASCII whitespace never occurs inside a multi-byte UTF-8 sequence
            cut = max(data.rfind(b" "), data.rfind(b"\n"), data.rfind(b"\t"), data.rfind(b"\r"))
            if cut < 0:
                tail = data
                continue
            tail = data[cut + 1 :]
            yield data[: cut + 1].decode("utf-8", errors="replace")
    if tail:
        yield tail.decode("utf-8", errors="replace")


def read_corpus(path: str | Path, max_tokens: int | None = None) -> list[str]:
    """Tokenize a UTF-8 text file, optionally keeping only its first tokens.

    Args:
        path: Plain text corpus
        max_tokens: Keep only this many leading tokens (None keeps all)

    Returns:
        Token list
    """
    if max_tokens is not None and max_tokens < 0:
        raise ValueError("max_tokens must be >= 0")

    tokens: list[str] = []
    skipped = 0
    for chunk in _iter_chunks(Path(path)):
        part, bad = _split_tokens(chunk)
        tokens.extend(part)
        skipped += bad
        if max_tokens is not None and len(tokens) >= max_tokens:
            del tokens[max_tokens:]
            break

    if skipped:
        logger.warning(f"Skipped {skipped} tokens containing malformed byte sequences")
    logger.info(f"Read {len(tokens)} tokens from {path}")
    return tokens


def build_vocab(tokens: Iterable[str], min_count: int) -> Vocabulary:
    """Count tokens and keep the words seen at least min_count times.

    Args:
        tokens: Token sequence
        min_count: Minimum raw count to retain a word

    Returns:
        Vocabulary with ids by descending count, ties lexicographic

    Raises:
        ValueError: If min_count < 1
        EmptyVocabularyError: If no word reaches min_count
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")

    counter = Counter(tokens)
    kept = sorted(
        ((w, c) for w, c in counter.items() if c >= min_count),
        key=lambda wc: (-wc[1], wc[0]),
    )
    if not kept:
        raise EmptyVocabularyError(
            f"No word appears at least {min_count} times ({len(counter)} distinct words seen)"
        )

    words = tuple(w for w, _ in kept)
    counts = np.array([c for _, c in kept], dtype=np.int64)
    vocab = Vocabulary(words=words, counts=counts, total_tokens=int(counts.sum()))
    logger.info(
        f"Built vocabulary of {len(vocab)} words ({vocab.total_tokens} retained tokens, "
        f"min_count={min_count})"
    )
    return vocab


def write_vocab(vocab: Vocabulary, path: str | Path) -> None:
    """Write the vocabulary as a '#tokens=' header plus 'word<TAB>count' lines in id order."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{_HEADER_PREFIX}{vocab.total_tokens}\n")
        for word, count in zip(vocab.words, vocab.counts):
            f.write(f"{word}\t{int(count)}\n")


def read_vocab(path: str | Path) -> Vocabulary:
    """Read a vocabulary file written by write_vocab.

    Raises:
        ArtifactFormatError: If the header, a line or the count total is malformed
    """
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n")
        if not header.startswith(_HEADER_PREFIX):
            raise ArtifactFormatError(f"{path}: missing '{_HEADER_PREFIX}' header")
        try:
            total = int(header[len(_HEADER_PREFIX) :])
        except ValueError as e:
            raise ArtifactFormatError(f"{path}: bad token total in header") from e

        words: list[str] = []
        counts: list[int] = []
        for line_number, line in enumerate(f, start=2):
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 2:
                raise ArtifactFormatError(f"{path}:{line_number}: expected 'word<TAB>count'")
            try:
                counts.append(int(parts[1]))
            except ValueError as e:
                raise ArtifactFormatError(f"{path}:{line_number}: bad count") from e
            words.append(parts[0])

    if sum(counts) != total:
        raise ArtifactFormatError(f"{path}: counts sum to {sum(counts)}, header says {total}")
    if not words:
        raise EmptyVocabularyError(f"{path}: vocabulary file has no words")
    return Vocabulary(words=tuple(words), counts=np.array(counts, dtype=np.int64), total_tokens=total)
