"""Constructive reduction of a four-vector cross-ratio to dimension two.

`push_extremal` moves every ratio ``y_i/x_i`` (then ``v_i/u_i``) to an end of
its slope range without decreasing ``cross_ratio(x, y, u, v)``.
`collapse_2d` aggregates such an endpoint configuration into 2-vectors with
the same slope ranges and a cross-ratio at least as large.
`four_point_collapse` chains the two.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import _same_length, cross_ratio, slopes
from .errors import PreconditionViolated

__all__ = [
    "PushResult",
    "CollapseResult",
    "push_extremal",
    "collapse_2d",
    "four_point_collapse",
    "endpoint_profile",
]

ENDPOINT_RTOL = 1e-9


@dataclass(frozen=True)
class PushResult:
    y_star: np.ndarray
    v_star: np.ndarray
    value_before: float
    value_after: float


@dataclass(frozen=True)
class CollapseResult:
    """Two-dimensional configuration ``(x2, y2; u2, v2)``.

    ``v_tilde`` is the aggregated (pre-monotonicity) version of ``v``; it is
    ``None`` for the degenerate constructions, which skip aggregation.
    """

    x2: np.ndarray
    y2: np.ndarray
    u2: np.ndarray
    v2: np.ndarray
    value_before: float
    value_after: float
    v_tilde: Optional[np.ndarray] = None


def _sweep(base, z, lo, hi, objective):
    """One ascending pass of the coordinate update on ``z``.

    ``objective(z)`` is fractional linear in each coordinate with positive
    denominator, hence monotone on ``[lo*base_i, hi*base_i]``; comparing its
    two endpoint values decides the direction.  Ties go to the low end.
    """
    z = z.copy()
    for i in range(z.size):
        ratio = z[i] / base[i]
        if ratio == lo or ratio == hi:
            continue
        z[i] = lo * base[i]
        at_lo = objective(z)
        z[i] = hi * base[i]
        at_hi = objective(z)
        if not at_hi > at_lo:
            z[i] = lo * base[i]
    return z


def push_extremal(x, y, u, v):
    x, y, u, v = _same_length(x, y, u, v)
    a_lo, a_hi = slopes(x, y)
    b_lo, b_hi = slopes(u, v)
    before = cross_ratio(x, y, u, v)
    y_star = _sweep(x, y, a_lo, a_hi, lambda z: cross_ratio(x, z, u, v))
    v_star = _sweep(u, v, b_lo, b_hi, lambda w: cross_ratio(x, y_star, u, w))
    return PushResult(y_star, v_star, before, cross_ratio(x, y_star, u, v_star))


def _endpoint_mask(ratios, lo, hi, name):
    """True where a ratio sits at ``hi``, False where at ``lo``."""
    near_lo = np.isclose(ratios, lo, rtol=ENDPOINT_RTOL, atol=0)
    near_hi = np.isclose(ratios, hi, rtol=ENDPOINT_RTOL, atol=0)
    if not (near_lo | near_hi).all():
        i = int(np.flatnonzero(~(near_lo | near_hi))[0])
        raise PreconditionViolated(
            f"ratio {name}[{i}] = {ratios[i]!r} is not at an endpoint of [{lo!r}, {hi!r}]"
        )
    # Nearest endpoint wins when the range is narrower than the tolerance.
    return np.abs(ratios - hi) < np.abs(ratios - lo)


def collapse_2d(x, y, u, v):
    """Aggregate an endpoint configuration into 2-vectors.

    Requires every ``y_i/x_i`` to equal ``s-(x, y)`` or ``s+(x, y)`` and every
    ``v_i/u_i`` to equal ``s-(u, v)`` or ``s+(u, v)`` (relative tolerance
    1e-9).  Indices are split by which end ``y_i/x_i`` sits at; ``x`` is summed
    and ``u``, ``v`` are ``x``-weighted averages over each part.  Finally ``v``
    is replaced by ``(b- * u-, b+ * u+)``, which can only raise the
    cross-ratio.
    """
    x, y, u, v = _same_length(x, y, u, v)
    a_lo, a_hi = slopes(x, y)
    b_lo, b_hi = slopes(u, v)
    upper = _endpoint_mask(y / x, a_lo, a_hi, "y/x")
    _endpoint_mask(v / u, b_lo, b_hi, "v/u")
    before = cross_ratio(x, y, u, v)

    ones = np.ones(2)
    if a_lo == a_hi:
        x2, y2, u2, v2 = ones, np.array([a_lo, a_lo]), ones, np.array([b_lo, b_hi])
        return CollapseResult(x2, y2, u2, v2, before, cross_ratio(x2, y2, u2, v2))
    if b_lo == b_hi:
        x2, y2, u2, v2 = ones, np.array([a_lo, a_hi]), ones, np.array([b_lo, b_lo])
        return CollapseResult(x2, y2, u2, v2, before, cross_ratio(x2, y2, u2, v2))

    parts = (~upper, upper)
    x2 = np.array([x[m].sum() for m in parts])
    u2 = np.array([(x[m] * u[m]).sum() for m in parts]) / x2
    v_tilde = np.array([(x[m] * v[m]).sum() for m in parts]) / x2
    y2 = np.array([a_lo, a_hi]) * x2
    v2 = np.array([b_lo, b_hi]) * u2
    return CollapseResult(x2, y2, u2, v2, before, cross_ratio(x2, y2, u2, v2), v_tilde)


def endpoint_profile(x2, y2, u2, b1, b2):
    """``cross_ratio(x2, y2; u2, (b1*u2[0], b2*u2[1]))``.

    Decreasing in ``b1`` and increasing in ``b2`` whenever
    ``y2[0]/x2[0] < y2[1]/x2[1]``.
    """
    return cross_ratio(x2, y2, u2, np.array([b1 * u2[0], b2 * u2[1]]))


def four_point_collapse(x, y, u, v):
    x, y, u, v = _same_length(x, y, u, v)
    pushed = push_extremal(x, y, u, v)
    collapsed = collapse_2d(x, pushed.y_star, u, pushed.v_star)
    return CollapseResult(
        collapsed.x2,
        collapsed.y2,
        collapsed.u2,
        collapsed.v2,
        pushed.value_before,
        collapsed.value_after,
        collapsed.v_tilde,
    )
