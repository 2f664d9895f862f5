"""Distortion bounds along products ``P_n = A_n ... A_1``."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import distortion, validate
from .envelope import _at_least_one, psi
from .errors import AllConverged, DimensionMismatch, InsufficientData, OutOfDomain

__all__ = [
    "BoundTrajectory",
    "ProductAccumulator",
    "propagate",
    "closed_form",
    "kappa",
    "accumulate",
    "decay_rate",
]

# Below this many factors kappa**n is formed by repeated multiplication.
_POWER_LOOP_MAX = 64
CONVERGED_TOL = 1e-13


@dataclass(frozen=True)
class BoundTrajectory:
    """Per-factor bounds ``p`` on sqrt-distortion, cumulative bounds ``q``,
    and distortion bounds ``r_bound = q**2``."""

    p: np.ndarray
    q: np.ndarray
    r_bound: np.ndarray


def propagate(p_bounds):
    p = _at_least_one("p_bounds", p_bounds)
    if p.ndim != 1 or p.size == 0:
        raise OutOfDomain("p_bounds must be a non-empty sequence")
    q = np.empty_like(p)
    q[0] = p[0]
    for n in range(1, p.size):
        q[n] = psi(p[n], q[n - 1])
    return BoundTrajectory(p, q, q**2)


def kappa(alpha):
    """Contraction coefficient ``(sqrt(alpha) - 1) / (sqrt(alpha) + 1)``."""
    s = np.sqrt(float(_at_least_one("alpha", alpha)))
    return (s - 1) / (s + 1)


def _kappa_power(k, n):
    if k == 0.0:
        return 0.0
    if n < _POWER_LOOP_MAX:
        out = 1.0
        for _ in range(n):
            out *= k
        return out
    return float(np.exp(n * np.log(k)))


def closed_form(alpha, n):
    """Uniform-bound solution of the recursion after ``n`` factors.

    Returns
    -------
    q_n : float
        ``1 + 2 k**n / (1 - k**n)``, bound on ``sqrt(distortion(P_n))``.
    r_bound : float
        ``1 + 4 k**n / (1 - k**n)**2``, bound on ``distortion(P_n)``.
    kappa : float
        ``k = (sqrt(alpha) - 1) / (sqrt(alpha) + 1)``.
    """
    if int(n) != n or n < 1:
        raise OutOfDomain(f"n must be an integer >= 1, got {n!r}")
    k = kappa(alpha)
    kn = _kappa_power(k, int(n))
    return 1 + 2 * kn / (1 - kn), 1 + 4 * kn / (1 - kn) ** 2, k


@dataclass(frozen=True)
class ProductAccumulator:
    """Running product with columns rescaled to max 1 after every step.

    New factors enter on the left, so only column scaling commutes with the
    next multiplication: ``A (P D) = (A P) D``.  Row scaling would not.
    Each `accumulate` call returns a new accumulator; ``history`` holds
    ``(n, distortion(P_n))`` pairs.
    """

    current: Optional[np.ndarray] = None
    step_count: int = 0
    history: tuple = field(default=())


def accumulate(acc, a):
    """Left-multiply the running product by ``a`` and record its distortion."""
    a = validate(a)
    if acc.current is None:
        product = a
    else:
        if a.shape[1] != acc.current.shape[0]:
            raise DimensionMismatch(
                f"factor {acc.step_count + 1} has shape {a.shape}, "
                f"cannot left-multiply running product of shape {acc.current.shape}"
            )
        product = a @ acc.current
    product = product / product.max(axis=0, keepdims=True)
    n = acc.step_count + 1
    return ProductAccumulator(product, n, acc.history + ((n, distortion(product)),))


def decay_rate(history):
    """Least-squares slope of ``log(sqrt(R_n) - 1)`` against ``n``.

    Entries with ``sqrt(R_n) - 1 <= 1e-13`` are treated as converged and
    dropped before fitting.
    """
    history = list(history)
    if len(history) < 3:
        raise InsufficientData(f"need at least 3 history entries, got {len(history)}")
    n = np.array([h[0] for h in history], dtype=float)
    excess = np.sqrt(np.array([h[1] for h in history], dtype=float)) - 1
    keep = excess > CONVERGED_TOL
    if not keep.any():
        raise AllConverged("every entry has distortion 1 within tolerance")
    if keep.sum() < 2:
        raise InsufficientData("fewer than 2 unconverged entries to fit")
    slope, _ = np.polyfit(n[keep], np.log(excess[keep]), 1)
    return float(slope)
