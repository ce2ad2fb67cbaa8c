"""Input validation helpers used by the estimators and the CLI."""

import math
from numbers import Integral, Real

import numpy as np

from .exceptions import DomainError, MalformedMatrix


def check_fraction(value, name, *, low_open=True):
    """Return ``value`` as float if it lies in (0, 1] (or [0, 1])."""
    if isinstance(value, bool) or not isinstance(value, Real):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if math.isnan(value) or value > 1.0 or value < 0.0 or (low_open and value == 0.0):
        bounds = "(0, 1]" if low_open else "[0, 1]"
        raise DomainError(f"{name} must be in {bounds}, got {value}")
    return value


def check_int(value, name, *, minimum=0):
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_similarity_matrix(rows, *, atol=1e-9):
    """Validate a square, symmetric [0, 1] matrix and return it as float64.

    The diagonal is forced to 1 and tiny asymmetries (within ``atol``) are
    symmetrised by averaging.
    """
    try:
        arr = np.asarray(rows, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise MalformedMatrix(f"matrix is not numeric: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedMatrix(f"matrix must be square and non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MalformedMatrix("matrix contains non-finite entries")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise MalformedMatrix("matrix entries must lie in [0, 1]")
    if np.max(np.abs(arr - arr.T)) > atol:
        raise MalformedMatrix(f"matrix is asymmetric beyond {atol}")
    arr = (arr + arr.T) / 2.0
    np.fill_diagonal(arr, 1.0)
    return arr
