"""Binary and text serialisation for count tables and PMI matrices.

All binary layouts are little-endian. PMI files:
    header  {magic b"PMI1", n: u64, nnz: u64}
    nnz x   {i: u32, j: u32, pmi: f64}
    n x     {self_pmi: f64, filled: u8}
Count files:
    header  {magic b"CNT1", n: u64, nnz: u64}
    nnz x   {i: u32, j: u32, count: u64}
    n x     target count u64, then n x context count u64
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from pmivec.cooccur.pmi import PmiMatrix
from pmivec.cooccur.stats import CooccurrenceStats
from pmivec.utils.exceptions import ArtifactFormatError

PMI_MAGIC = b"PMI1"
STATS_MAGIC = b"CNT1"

_HEADER = struct.Struct("<4sQQ")
PMI_RECORD = np.dtype([("i", "<u4"), ("j", "<u4"), ("pmi", "<f8")])
SELF_RECORD = np.dtype([("self_pmi", "<f8"), ("filled", "u1")])
COUNT_RECORD = np.dtype([("i", "<u4"), ("j", "<u4"), ("count", "<u8")])


def _read_header(data: bytes, magic: bytes, path: str | Path) -> tuple[int, int]:
    if len(data) < _HEADER.size:
        raise ArtifactFormatError(f"{path}: truncated header")
    found, n, nnz = _HEADER.unpack_from(data)
    if found != magic:
        raise ArtifactFormatError(f"{path}: bad magic {found!r}, expected {magic!r}")
    return n, nnz


def write_pmi(matrix: PmiMatrix, path: str | Path) -> None:
    """Write a PmiMatrix in the PMI1 binary layout."""
    records = np.empty(matrix.nnz, dtype=PMI_RECORD)
    records["i"] = matrix.rows
    records["j"] = matrix.cols
    records["pmi"] = matrix.values
    selfs = np.empty(matrix.n, dtype=SELF_RECORD)
    selfs["self_pmi"] = matrix.self_pmi
    selfs["filled"] = matrix.self_filled.astype(np.uint8)
    with open(path, "wb") as f:
        f.write(_HEADER.pack(PMI_MAGIC, matrix.n, matrix.nnz))
        f.write(records.tobytes())
        f.write(selfs.tobytes())


def read_pmi(path: str | Path) -> PmiMatrix:
    """Read a PMI1 file.

    Raises:
        ArtifactFormatError: On bad magic, size mismatch or non-finite values
    """
    data = Path(path).read_bytes()
    n, nnz = _read_header(data, PMI_MAGIC, path)
    expected = _HEADER.size + nnz * PMI_RECORD.itemsize + n * SELF_RECORD.itemsize
    if len(data) != expected:
        raise ArtifactFormatError(f"{path}: expected {expected} bytes, found {len(data)}")

    records = np.frombuffer(data, dtype=PMI_RECORD, count=nnz, offset=_HEADER.size)
    selfs = np.frombuffer(
        data, dtype=SELF_RECORD, count=n, offset=_HEADER.size + nnz * PMI_RECORD.itemsize
    )
    values = records["pmi"].astype(np.float64)
    self_pmi = selfs["self_pmi"].astype(np.float64)
    if not (np.isfinite(values).all() and np.isfinite(self_pmi).all()):
        raise ArtifactFormatError(f"{path}: non-finite PMI value")
    if nnz and (records["i"].max() >= n or records["j"].max() >= n):
        raise ArtifactFormatError(f"{path}: entry index out of range")

    return PmiMatrix(
        n=n,
        rows=records["i"].astype(np.int64),
        cols=records["j"].astype(np.int64),
        values=values,
        self_pmi=self_pmi,
        self_filled=selfs["filled"].astype(bool),
    )


def write_pmi_tsv(matrix: PmiMatrix, path: str | Path) -> None:
    """Debug export, one 'i<TAB>j<TAB>pmi' line per stored entry."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for i, j, v in zip(matrix.rows.tolist(), matrix.cols.tolist(), matrix.values.tolist()):
            f.write(f"{i}\t{j}\t{v!r}\n")


def write_stats(stats: CooccurrenceStats, path: str | Path) -> None:
    """Write a CooccurrenceStats in the CNT1 binary layout."""
    records = np.empty(stats.nnz, dtype=COUNT_RECORD)
    records["i"] = stats.rows
    records["j"] = stats.cols
    records["count"] = stats.counts
    with open(path, "wb") as f:
        f.write(_HEADER.pack(STATS_MAGIC, stats.n, stats.nnz))
        f.write(records.tobytes())
        f.write(stats.target_counts.astype("<u8").tobytes())
        f.write(stats.context_counts.astype("<u8").tobytes())


def read_stats(path: str | Path) -> CooccurrenceStats:
    """Read a CNT1 file and re-check the marginal invariants.

    Raises:
        ArtifactFormatError: On bad magic, size mismatch or inconsistent marginals
    """
    data = Path(path).read_bytes()
    n, nnz = _read_header(data, STATS_MAGIC, path)
    expected = _HEADER.size + nnz * COUNT_RECORD.itemsize + 2 * n * 8
    if len(data) != expected:
        raise ArtifactFormatError(f"{path}: expected {expected} bytes, found {len(data)}")

    offset = _HEADER.size
    records = np.frombuffer(data, dtype=COUNT_RECORD, count=nnz, offset=offset)
    offset += nnz * COUNT_RECORD.itemsize
    target = np.frombuffer(data, dtype="<u8", count=n, offset=offset).astype(np.int64)
    context = np.frombuffer(data, dtype="<u8", count=n, offset=offset + n * 8).astype(np.int64)

    rows = records["i"].astype(np.int64)
    cols = records["j"].astype(np.int64)
    counts = records["count"].astype(np.int64)
    if not (
        np.array_equal(np.bincount(rows, weights=counts, minlength=n).astype(np.int64), target)
        and np.array_equal(np.bincount(cols, weights=counts, minlength=n).astype(np.int64), context)
    ):
        raise ArtifactFormatError(f"{path}: marginals do not match pair counts")

    return CooccurrenceStats(
        n=n,
        rows=rows,
        cols=cols,
        counts=counts,
        target_counts=target,
        context_counts=context,
        total_pairs=int(counts.sum()),
    )
