from pmivec.geometry.decompose import (
    ConjugateDecomposition,
    decompose,
    conjugate_identity_error,
)
from pmivec.geometry.diagnostics import (
    WordGeometry,
    SplitHeight,
    ResidualSummary,
    IdentityResiduals,
    word_geometry,
    split_height,
    log_probability_residuals,
    quasi_sphere_check,
    factorization_residuals,
)
from pmivec.geometry.report import (
    GeometrySummary,
    GeometryReport,
    geometry_report,
    ResidualStats,
    IdentityReport,
    write_geometry_json,
    write_geometry_csv,
)

__all__ = [
    "ConjugateDecomposition",
    "decompose",
    "conjugate_identity_error",
    "WordGeometry",
    "SplitHeight",
    "ResidualSummary",
    "IdentityResiduals",
    "word_geometry",
    "split_height",
    "log_probability_residuals",
    "quasi_sphere_check",
    "factorization_residuals",
    "GeometrySummary",
    "GeometryReport",
    "ResidualStats",
    "IdentityReport",
    "geometry_report",
    "write_geometry_json",
    "write_geometry_csv",
]
