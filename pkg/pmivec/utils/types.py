from typing import Literal

import numpy as np
import numpy.typing as npt

# Type aliases for better clarity
FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]
BoolArray = npt.NDArray[np.bool_]
WordPair = tuple[int, int]

Variant = Literal["D", "L", "P", "shifted"]
VectorKind = Literal["W", "C", "A"]
ProbabilityKind = Literal["context_given_target", "target_given_context"]

# Constants
SELF_FILL_FACTOR = 2.0 / 3.0  # Unobserved self-joint probability = factor * p_min
LENGTH_TARGET_EPSILON = 1e-3  # Floor for self-PMI before taking the square root
NEGATIVE_ATTEMPT_FACTOR = 1000  # Rejection attempts allowed per requested negative
SELF_PMI_POSITIVE_GATE = 0.9


def pair_keys(rows: npt.ArrayLike, cols: npt.ArrayLike, n: int) -> IntArray:
    """Encode (i, j) coordinates as sortable row-major keys i * n + j.

    Args:
        rows: Target ids
        cols: Context ids
        n: Vocabulary size

    Returns:
        int64 key array
    """
    return np.asarray(rows, dtype=np.int64) * np.int64(n) + np.asarray(cols, dtype=np.int64)
