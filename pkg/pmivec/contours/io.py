from __future__ import annotations

import csv
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from pmivec.contours.buckets import ContourBuckets
from pmivec.contours.project import ContourProjection
from pmivec.utils.exceptions import ArtifactFormatError

logger = logging.getLogger(__name__)

CONTOUR_COLUMNS = ("word", "x", "y", "bucket", "log_prob")


@dataclass(frozen=True)
class ContourRow:
    word: str
    x: float
    y: float
    bucket: float
    log_prob: float


def export_contour_csv(
    projection: ContourProjection,
    buckets: ContourBuckets,
    words: Sequence[str],
    path: str | Path,
) -> int:
    """Write one row per (word, bucket) membership, ordered by word id then bucket.

    Words with an undefined projection are left out. Floats are written
    with repr so they parse back exactly.

    Returns:
        Number of data rows written
    """
    if len(words) != len(projection.x):
        raise ValueError(f"{len(words)} words for {len(projection.x)} projected points")
    membership = sorted(
        (int(i), k)
        for k, ids in enumerate(buckets.members)
        for i in ids
        if projection.valid[i]
    )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CONTOUR_COLUMNS)
        for i, k in membership:
            writer.writerow(
                [
                    words[i],
                    repr(float(projection.x[i])),
                    repr(float(projection.y[i])),
                    repr(buckets.centers[k]),
                    repr(float(buckets.log_prob[i])),
                ]
            )
    logger.info(f"Wrote {len(membership)} contour rows to {path}")
    return len(membership)


def read_contour_csv(path: str | Path) -> list[ContourRow]:
    """Raises ArtifactFormatError on a bad header or value."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CONTOUR_COLUMNS:
            raise ArtifactFormatError(f"{path}: expected header {','.join(CONTOUR_COLUMNS)}")
        rows: list[ContourRow] = []
        for line_number, fields in enumerate(reader, start=2):
            if len(fields) != len(CONTOUR_COLUMNS):
                raise ArtifactFormatError(f"{path}:{line_number}: expected {len(CONTOUR_COLUMNS)} fields")
            try:
                values = [float(v) for v in fields[1:]]
            except ValueError as e:
                raise ArtifactFormatError(f"{path}:{line_number}: bad number") from e
            rows.append(ContourRow(fields[0], *values))
    return rows


def render_contours(
    projection: ContourProjection,
    buckets: ContourBuckets,
    path: str | Path,
    title: str | None = None,
) -> bool:
    """Scatter all projected targets, coloured by bucket, to a static image.

    Needs matplotlib. Any failure is logged as a warning and reported by
    returning False; it never raises.
    """
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        logger.warning("matplotlib is not installed; skipping contour plot")
        return False

    try:
        fig, ax = plt.subplots(figsize=(7, 5))
        valid = projection.valid
        ax.scatter(projection.x[valid], projection.y[valid], s=2, c="lightgrey", label="all words")
        for center, ids in zip(buckets.centers, buckets.members):
            ids = ids[valid[ids]]
            ax.scatter(projection.x[ids], projection.y[ids], s=6, label=f"{center:g} ± {buckets.half_width:g}")
        ax.scatter(*projection.context_point, marker="*", s=120, c="black", label="context")
        ax.axvline(0.0, color="grey", linewidth=0.5)
        ax.set_xlabel("||v|| cos θ")
        ax.set_ylabel("||v|| sin θ")
        ax.set_title(title or f"{buckets.kind}, context {buckets.context_id}")
        ax.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
    except Exception as e:
        logger.warning(f"Contour plot failed: {e}")
        return False
    return True
