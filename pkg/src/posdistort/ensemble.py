"""Seeded random ensembles of factor sequences with bounded distortion.

Every trial draws from its own ``numpy`` PCG64 generator seeded with
``SeedSequence(seed, spawn_key=(trial,))``, so a trial's factors depend only
on ``(seed, trial)`` and not on how many trials run or in what order.
"""

from dataclasses import dataclass

import numpy as np

from .core import distortion
from .errors import ConfigError
from .products import ProductAccumulator, accumulate, closed_form

__all__ = ["EnsembleConfig", "EnsembleResult", "trial_rng", "random_factor", "run_ensemble"]

BOUND_RTOL = 1e-9
CONSTRUCTION = (
    "factor = D1 (J + eps E) D2; J all-ones, E uniform [0,1], D1/D2 diagonal 2^k with "
    "k uniform in [-8, 8], eps bisected so that alpha^0.5 <= R <= alpha"
)

_MAX_REDRAWS = 1000
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class EnsembleConfig:
    dimension: int
    length: int
    alpha: float
    trials: int
    seed: int

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 2:
            raise ConfigError(f"dimension must be an integer >= 2, got {self.dimension!r}")
        if int(self.length) != self.length or self.length < 1:
            raise ConfigError(f"length must be an integer >= 1, got {self.length!r}")
        if not (np.isfinite(self.alpha) and self.alpha >= 1):
            raise ConfigError(f"alpha must be finite and >= 1, got {self.alpha!r}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError(f"trials must be an integer >= 1, got {self.trials!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an integer in [0, 2**64), got {self.seed!r}")


def trial_rng(seed, trial):
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(trial),)))


def _core_factor(rng, d, alpha):
    ones = np.ones((d, d))
    if alpha == 1:
        return ones
    floor = np.sqrt(alpha)
    for _ in range(_MAX_REDRAWS):
        e = rng.uniform(0.0, 1.0, size=(d, d))
        # distortion(J + eps E) tends to distortion(E) as eps grows
        if not (e > 0).all() or distortion(e) <= floor:
            continue
        lo, hi = 0.0, 1.0
        while distortion(ones + hi * e) < floor and hi < 1e12:
            lo, hi = hi, 2 * hi
        r = distortion(ones + hi * e)
        if r < floor:
            continue
        if r <= alpha:
            return ones + hi * e
        for _ in range(_MAX_BISECTIONS):
            mid = 0.5 * (lo + hi)
            m = ones + mid * e
            r = distortion(m)
            if r < floor:
                lo = mid
            elif r > alpha:
                hi = mid
            else:
                return m
    raise ConfigError(f"could not construct a {d}x{d} factor with distortion in [{floor}, {alpha}]")


def random_factor(rng, d, alpha):
    """A ``d x d`` positive matrix with ``sqrt(alpha) <= distortion <= alpha``.

    For ``alpha == 1`` the factor is rank one.  The diagonal scalings are
    powers of two, so they change no distortion value even in floating point.
    """
    m = _core_factor(rng, d, alpha)
    d1 = 2.0 ** rng.integers(-8, 9, size=d)
    d2 = 2.0 ** rng.integers(-8, 9, size=d)
    return d1[:, None] * m * d2[None, :]


@dataclass(frozen=True)
class EnsembleResult:
    """``actual[t, n-1]`` is the distortion of ``P_n`` in trial ``t``."""

    config: EnsembleConfig
    actual: np.ndarray
    bound: np.ndarray

    @property
    def violations(self):
        return int((self.actual > self.bound * (1 + BOUND_RTOL)).sum())

    def summary_rows(self):
        """Yield ``(n, min, median, max, bound)`` per product length."""
        for n in range(1, self.actual.shape[1] + 1):
            col = self.actual[:, n - 1]
            yield n, col.min(), float(np.median(col)), col.max(), self.bound[n - 1]


def run_trial(config, trial):
    rng = trial_rng(config.seed, trial)
    acc = ProductAccumulator()
    for _ in range(config.length):
        acc = accumulate(acc, random_factor(rng, config.dimension, config.alpha))
    return np.array([r for _, r in acc.history])


def run_ensemble(config):
    actual = np.vstack([run_trial(config, t) for t in range(config.trials)])
    bound = np.array([closed_form(config.alpha, n)[1] for n in range(1, config.length + 1)])
    return EnsembleResult(config, actual, bound)
