from pmivec.contours.project import ContourProjection, project_relative
from pmivec.contours.buckets import (
    PRESET_CENTERS,
    PRESET_HALF_WIDTH,
    ContourBuckets,
    conditional_log_probabilities,
    bucket_by_logprob,
)
from pmivec.contours.summary import BucketStats, ContourSummary, contour_summary
from pmivec.contours.io import (
    CONTOUR_COLUMNS,
    ContourRow,
    export_contour_csv,
    read_contour_csv,
    render_contours,
)
from pmivec.contours.config import ContourConfig

__all__ = [
    "ContourProjection",
    "project_relative",
    "PRESET_CENTERS",
    "PRESET_HALF_WIDTH",
    "ContourBuckets",
    "conditional_log_probabilities",
    "bucket_by_logprob",
    "BucketStats",
    "ContourSummary",
    "contour_summary",
    "CONTOUR_COLUMNS",
    "ContourRow",
    "export_contour_csv",
    "read_contour_csv",
    "render_contours",
    "ContourConfig",
]
