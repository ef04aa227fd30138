from __future__ import annotations

import csv
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from pmivec.trainer.train import EpochLoss
from pmivec.utils.exceptions import ArtifactFormatError
from pmivec.utils.types import FloatArray

LOSS_TRACE_FIELDS = ("epoch", "mean_positive_loss", "mean_negative_loss")


def save_word2vec(vectors: FloatArray, words: Sequence[str], path: str | Path) -> None:
    """Write vectors in word2vec text format: 'n d' then 'word v1 ... vd' per row.

    Values are written with repr, which round-trips float64 exactly.
    """
    if len(words) != vectors.shape[0]:
        raise ValueError(f"{len(words)} words for {vectors.shape[0]} vectors")
    n, d = vectors.shape
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{n} {d}\n")
        for word, row in zip(words, vectors.tolist()):
            f.write(word + " " + " ".join(map(repr, row)) + "\n")


def load_word2vec(path: str | Path) -> tuple[list[str], FloatArray]:
    """Read a word2vec text file into (words, n x d float64 matrix).

    Raises:
        ArtifactFormatError: If the header or a row is malformed
    """
    with open(path, encoding="utf-8") as f:
        header = f.readline().split()
        try:
            n, d = int(header[0]), int(header[1])
        except (IndexError, ValueError) as e:
            raise ArtifactFormatError(f"{path}: expected 'n d' header") from e

        words: list[str] = []
        matrix = np.empty((n, d), dtype=np.float64)
        for row, line in enumerate(f):
            parts = line.rstrip("\n").split(" ")
            if row >= n:
                raise ArtifactFormatError(f"{path}: more than {n} vector rows")
            if len(parts) != d + 1:
                raise ArtifactFormatError(
                    f"{path}:{row + 2}: expected word and {d} values, found {len(parts) - 1}"
                )
            words.append(parts[0])
            try:
                matrix[row] = np.asarray(parts[1:], dtype=np.float64)
            except ValueError as e:
                raise ArtifactFormatError(f"{path}:{row + 2}: bad vector value") from e

    if len(words) != n:
        raise ArtifactFormatError(f"{path}: header promises {n} rows, found {len(words)}")
    return words, matrix


def write_loss_trace(trace: Sequence[EpochLoss], path: str | Path) -> None:
    """CSV 'epoch,mean_positive_loss,mean_negative_loss', one row per epoch."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(LOSS_TRACE_FIELDS)
        for record in trace:
            writer.writerow(
                [record.epoch, repr(record.mean_positive_loss), repr(record.mean_negative_loss)]
            )


def read_loss_trace(path: str | Path) -> list[EpochLoss]:
    with open(path, encoding="utf-8", newline="") as f:
        return [
            EpochLoss(
                epoch=int(row["epoch"]),
                mean_positive_loss=float(row["mean_positive_loss"]),
                mean_negative_loss=float(row["mean_negative_loss"]),
            )
            for row in csv.DictReader(f)
        ]
