"""Input validation helpers used by loaders, estimators and configs.

Every loader funnels raw values through these checks so that non-finite
entries are rejected at the boundary and never reach the numerics.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DataValidationError


def as_float_matrix(values, name="values"):
    """Coerce to a 2-D float64 array, rejecting anything else."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise DataValidationError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    return arr


def check_finite_matrix(arr, name="values"):
    """Reject NaN/Inf, citing the (row, column) of the first offender (1-based)."""
    bad = ~np.isfinite(arr)
    if bad.any():
        r, c = np.argwhere(bad)[0]
        raise DataValidationError(
            f"non-finite value in {name} at row {r + 1}, column {c + 1}"
        )
    return arr


def check_positive(value, name):
    if not value > 0:
        raise DataValidationError(f"{name} must be positive, got {value!r}")
    return value


def check_count(value, name, minimum=1):
    if int(value) != value or value < minimum:
        raise DataValidationError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_unit_interval(value, name):
    if not 0.0 <= value <= 1.0:
        raise DataValidationError(f"{name} must lie in [0, 1], got {value!r}")
    return float(value)


def check_consistent_length(a, b, name_a="first", name_b="second"):
    if len(a) != len(b):
        raise DataValidationError(
            f"length mismatch: {name_a} has {len(a)} items, {name_b} has {len(b)}"
        )
