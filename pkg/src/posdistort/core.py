"""Distortion functionals on strictly positive vectors and matrices.

Matrices and vectors are plain ``numpy`` float arrays.  Every public
function validates its inputs (finite, strictly positive) before doing any
arithmetic, because all formulas below divide by entries.
"""

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NonPositiveEntry, NotTwoByTwo

__all__ = [
    "SlopeRange",
    "validate",
    "validate_vector",
    "slopes",
    "dist",
    "oriented_distortion",
    "distortion",
    "cross_ratio",
    "multiply",
]


class SlopeRange(NamedTuple):
    """Extremal coordinatewise ratios ``min y_i/x_i`` and ``max y_i/x_i``."""

    lo: float
    hi: float


def _check_positive(arr):
    bad = ~(np.isfinite(arr) & (arr > 0))
    if bad.any():
        index = np.argwhere(bad)[0]
        raise NonPositiveEntry(index, arr[tuple(index)].item())
    return arr


def validate(raw):
    """Return ``raw`` as a float array after checking every entry is positive.

    Accepts a single matrix or a stack of matrices (``ndim >= 2``).  Raises
    `NonPositiveEntry` with the index of the first offending entry.
    """
    try:
        arr = np.asarray(raw, dtype=float)
    except ValueError as exc:
        raise DimensionMismatch(f"matrix is not rectangular: {exc}") from None
    if arr.ndim < 2 or 0 in arr.shape:
        raise DimensionMismatch(f"expected a non-empty matrix, got shape {arr.shape}")
    return _check_positive(arr)


def validate_vector(raw):
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatch(f"expected a non-empty vector, got shape {arr.shape}")
    return _check_positive(arr)


def _same_length(*vectors):
    out = [validate_vector(v) for v in vectors]
    if len({v.size for v in out}) != 1:
        raise DimensionMismatch(f"vector lengths differ: {[v.size for v in out]}")
    return out


def slopes(x, y):
    """Smallest and largest of the ratios ``y_i / x_i``."""
    x, y = _same_length(x, y)
    ratios = y / x
    return SlopeRange(float(ratios.min()), float(ratios.max()))


def dist(x, y):
    """Multiplicative misalignment ``s+/s-`` of two positive vectors (>= 1)."""
    lo, hi = slopes(x, y)
    return hi / lo


def oriented_distortion(a):
    """``a11*a22 / (a12*a21)`` for a 2x2 positive matrix."""
    a = validate(a)
    if a.shape != (2, 2):
        raise NotTwoByTwo(f"expected a 2x2 matrix, got shape {a.shape}")
    return float(a[0, 0] * a[1, 1] / (a[0, 1] * a[1, 0]))


def distortion(a):
    """Largest cross-ratio over all 2x2 submatrices of ``a``.

    Computed as the maximum over column pairs ``(k, l)`` of
    ``dist(a[:, l], a[:, k])``, which costs ``O(d1 * d2**2)``.  Matrices with a
    single row or column have no 2x2 submatrix and get distortion 1.

    Parameters
    ----------
    a : array_like, shape (..., d1, d2)
        A positive matrix or a stack of them.

    Returns
    -------
    float or ndarray
        Distortion of each matrix, always ``>= 1``.
    """
    a = validate(a)
    # ratios[..., i, k, l] = a_ik / a_il
    ratios = a[..., :, :, None] / a[..., :, None, :]
    spread = ratios.max(axis=-3) / ratios.min(axis=-3)
    out = spread.max(axis=(-2, -1))
    return float(out) if out.ndim == 0 else out


def cross_ratio(x, y, u, v):
    """``(x.u)(y.v) / ((x.v)(y.u))``: oriented distortion of the block
    obtained by pairing rows ``x, y`` with columns ``u, v``."""
    x, y, u, v = _same_length(x, y, u, v)
    return float((x @ u) * (y @ v) / ((x @ v) * (y @ u)))


def multiply(a, b):
    a = validate(a)
    b = validate(b)
    if a.shape[-1] != b.shape[-2]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b
