"""Hilbert projective metric and the log-scale envelope.

``theta(h, p)`` bounds ``d_H(Ax, Ay)`` in terms of ``h = d_H(x, y)`` when
``p = sqrt(distortion(A))``.  It is tangent to the Birkhoff-Bushell line
``kappa * h`` at 0 and saturates at ``2 log p``.
"""

from dataclasses import dataclass

import numpy as np

from .core import _same_length, dist, distortion, validate
from .envelope import _at_least_one, _scalar
from .errors import DimensionMismatch, OutOfDomain

__all__ = [
    "CurveTable",
    "hilbert_distance",
    "theta",
    "bb_kappa",
    "comparison_curve",
    "contraction_check",
]


def hilbert_distance(x, y):
    return float(np.log(dist(x, y)))


def theta(h, p):
    """``2 log((1 + p e^{h/2}) / (p + e^{h/2}))``.

    Evaluated as ``2 log1p((p - 1)(1 - e^{-h/2}) / (1 + p e^{-h/2}))``, which
    never overflows and keeps full relative accuracy for small ``h``.
    """
    h = np.asarray(h, dtype=float)
    if np.isnan(h).any() or (h < 0).any():
        raise OutOfDomain(f"h must be >= 0, got {h!r}")
    p = _at_least_one("p", p)
    decay = np.exp(-h / 2)
    return _scalar(2 * np.log1p((p - 1) * -np.expm1(-h / 2) / (1 + p * decay)))


def bb_kappa(a):
    """Birkhoff-Bushell contraction coefficient ``(sqrt(R) - 1) / (sqrt(R) + 1)``."""
    p = np.sqrt(distortion(a))
    return float((p - 1) / (p + 1))


@dataclass(frozen=True)
class CurveTable:
    """Sampled comparison of ``theta`` with the linear bound and saturation level."""

    h: np.ndarray
    theta: np.ndarray
    bb_line: np.ndarray
    saturation: float
    p: float

    @property
    def rows(self):
        """Array of shape (samples, 4): h, theta, bb_line, saturation."""
        sat = np.full_like(self.h, self.saturation)
        return np.column_stack([self.h, self.theta, self.bb_line, sat])


def comparison_curve(p, h_max, samples):
    p = float(_at_least_one("p", p))
    if not h_max > 0 or not np.isfinite(h_max):
        raise OutOfDomain(f"h_max must be positive and finite, got {h_max!r}")
    if samples < 2:
        raise OutOfDomain(f"samples must be >= 2, got {samples}")
    h = np.linspace(0.0, h_max, int(samples))
    k = (p - 1) / (p + 1)
    return CurveTable(h, theta(h, p), k * h, 2 * float(np.log(p)), p)


def contraction_check(a, x, y):
    """Return ``(d_H(Ax, Ay), theta(d_H(x, y), p), kappa * d_H(x, y))``.

    With ``p = sqrt(distortion(a))`` the three values are ordered
    ``lhs <= theta_bound <= bb_bound``.
    """
    a = validate(a)
    x, y = _same_length(x, y)
    if a.shape[1] != x.size:
        raise DimensionMismatch(f"matrix {a.shape} cannot act on vectors of length {x.size}")
    h = hilbert_distance(x, y)
    p = np.sqrt(distortion(a))
    lhs = hilbert_distance(a @ x, a @ y)
    return lhs, theta(h, p), float((p - 1) / (p + 1) * h)
