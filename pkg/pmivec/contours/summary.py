from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from pmivec.contours.buckets import ContourBuckets
from pmivec.contours.project import ContourProjection


@dataclass(frozen=True)
class BucketStats:
    center: float
    count: int
    mean_x: float
    std_x: float


@dataclass(frozen=True)
class ContourSummary:
    """Per-bucket spread of the projection onto the context direction.

    monotonic: mean x strictly increases with bucket centre over non-empty
    buckets. within_spread is the mean within-bucket std of x;
    between_spread is the std of the bucket means.
    """

    buckets: tuple[BucketStats, ...]
    monotonic: bool
    within_spread: float
    between_spread: float

    @property
    def orthogonal(self) -> bool:
        return self.within_spread < self.between_spread


def contour_summary(projection: ContourProjection, buckets: ContourBuckets) -> ContourSummary:
    stats: list[BucketStats] = []
    for center, ids in zip(buckets.centers, buckets.members):
        ids = ids[projection.valid[ids]]
        xs = projection.x[ids]
        stats.append(
            BucketStats(
                center=center,
                count=len(ids),
                mean_x=float(xs.mean()) if len(xs) else float("nan"),
                std_x=float(xs.std()) if len(xs) else float("nan"),
            )
        )

    filled = sorted((b for b in stats if b.count > 0), key=lambda b: b.center)
    means = np.array([b.mean_x for b in filled])
    monotonic = bool(len(means) > 1 and (np.diff(means) > 0).all())
    within = float(np.mean([b.std_x for b in filled])) if filled else float("nan")
    between = float(means.std()) if len(means) > 1 else float("nan")
    return ContourSummary(
        buckets=tuple(stats), monotonic=monotonic, within_spread=within, between_spread=between
    )
