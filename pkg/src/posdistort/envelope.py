"""Envelope functions and extremal 2x2 witnesses.

``phi(alpha, beta)`` is the sharp upper bound on ``distortion(A @ B)`` given
``distortion(A) <= alpha`` and ``distortion(B) <= beta``; ``psi`` is the same
bound on the square-root scale.
"""

from dataclasses import dataclass

import numpy as np

from .core import distortion, oriented_distortion, validate
from .errors import OutOfDomain

__all__ = [
    "WitnessPair",
    "phi",
    "psi",
    "f_profile",
    "t_star",
    "witness_pair",
    "complete_right",
    "complete_left",
    "empirical_max",
]

# Computed distortions fed back in may land a few ulps below 1.
CLAMP_TOL = 1e-12


def _at_least_one(name, value):
    arr = np.asarray(value, dtype=float)
    if np.isnan(arr).any() or (arr < 1 - CLAMP_TOL).any():
        raise OutOfDomain(f"{name} must be >= 1, got {value!r}")
    return np.maximum(arr, 1.0)


def _scalar(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def phi(alpha, beta):
    """Envelope function ``((1 + sqrt(alpha*beta)) / (sqrt(alpha) + sqrt(beta)))**2``."""
    sa = np.sqrt(_at_least_one("alpha", alpha))
    sb = np.sqrt(_at_least_one("beta", beta))
    return _scalar(((1 + sa * sb) / (sa + sb)) ** 2)


def psi(p, q):
    """Möbius form ``(1 + p*q) / (p + q)`` of the envelope on the sqrt scale."""
    p = _at_least_one("p", p)
    q = _at_least_one("q", q)
    return _scalar((1 + p * q) / (p + q))


def f_profile(alpha, beta, t):
    """Distortion of the normalized product as a function of the coupling ``t = u*v``."""
    alpha = _at_least_one("alpha", alpha)
    beta = _at_least_one("beta", beta)
    t = np.asarray(t, dtype=float)
    if not (t > 0).all():
        raise OutOfDomain(f"t must be > 0, got {t!r}")
    ab = alpha * beta
    return _scalar((1 + t) * (1 + ab * t) / ((1 + beta * t) * (1 + alpha * t)))


def t_star(alpha, beta):
    alpha = _at_least_one("alpha", alpha)
    beta = _at_least_one("beta", beta)
    return _scalar(1 / np.sqrt(alpha * beta))


@dataclass(frozen=True)
class WitnessPair:
    a: np.ndarray
    b: np.ndarray
    achieved: float
    target: float

    @property
    def product(self):
        return self.a @ self.b


def witness_pair(alpha, beta, u=1.0):
    """Build ``A = [[1, u], [1, alpha*u]]`` and ``B = [[1, 1], [v, beta*v]]``
    with ``u*v = t_star(alpha, beta)``, so that ``distortion(A @ B) == phi(alpha, beta)``.
    """
    alpha = float(_at_least_one("alpha", alpha))
    beta = float(_at_least_one("beta", beta))
    if not u > 0 or not np.isfinite(u):
        raise OutOfDomain(f"u must be a positive finite number, got {u!r}")
    v = t_star(alpha, beta) / u
    a = np.array([[1.0, u], [1.0, alpha * u]])
    b = np.array([[1.0, 1.0], [v, beta * v]])
    return WitnessPair(a, b, distortion(a @ b), phi(alpha, beta))


def complete_right(a, beta):
    """Return ``b`` with ``distortion(b) == beta`` maximizing ``distortion(a @ b)``.

    Rows of ``a`` are rescaled to ``[[1, x], [1, y]]``; the coupling is then
    placed at the optimum with the column order of ``b`` matched to the
    orientation of ``a``.
    """
    a = validate(a)
    beta = float(_at_least_one("beta", beta))
    alpha = distortion(a)
    x = a[0, 1] / a[0, 0]
    y = a[1, 1] / a[1, 0]
    ts = t_star(alpha, beta)
    if oriented_distortion(a) >= 1:
        v = ts / x
        return np.array([[1.0, 1.0], [v, beta * v]])
    v = ts / y
    return np.array([[1.0, 1.0], [beta * v, v]])


def complete_left(b, alpha):
    """Return ``a`` with ``distortion(a) == alpha`` maximizing ``distortion(a @ b)``.

    Uses ``distortion(M) == distortion(M.T)``: complete ``b.T`` on the right
    and transpose back.
    """
    b = validate(b)
    return complete_right(b.T, alpha).T.copy()


def empirical_max(alpha, beta, trials, seed, chunk=20_000):
    """Monte Carlo lower estimate of ``max distortion(A @ B)`` over
    ``distortion(A) <= alpha``, ``distortion(B) <= beta``.

    Each trial draws distortion targets ``ra, rb`` uniformly in ``[1, bound]``,
    a scale ``u`` log-uniform in ``[1e-3, 1e3]`` and a coupling ``t``
    log-uniform over ``[e**-1 / sqrt(alpha*beta), e]`` (which contains every
    possible maximizer), builds ``A = [[1, u], [1, ra*u]]`` and
    ``B = [[1, 1], [v, rb*v]]`` with ``v = t/u``, and records
    ``distortion(A @ B)``.  Trials are processed in chunks whose generators
    derive from ``(seed, chunk index)``, so the result depends only on
    ``(alpha, beta, trials, seed)``.
    """
    alpha = float(_at_least_one("alpha", alpha))
    beta = float(_at_least_one("beta", beta))
    if trials < 1:
        raise OutOfDomain(f"trials must be >= 1, got {trials}")
    best = 1.0
    for index, start in enumerate(range(0, trials, chunk)):
        n = min(chunk, trials - start)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
        ra = rng.uniform(1.0, alpha, size=n)
        rb = rng.uniform(1.0, beta, size=n)
        u = np.exp(rng.uniform(-3 * np.log(10), 3 * np.log(10), size=n))
        t = np.exp(rng.uniform(-1 - 0.5 * np.log(alpha * beta), 1, size=n))
        v = t / u
        a = np.empty((n, 2, 2))
        a[:, :, 0] = 1.0
        a[:, 0, 1] = u
        a[:, 1, 1] = ra * u
        b = np.empty((n, 2, 2))
        b[:, 0, :] = 1.0
        b[:, 1, 0] = v
        b[:, 1, 1] = rb * v
        best = max(best, float(np.max(distortion(a @ b))))
    return best
