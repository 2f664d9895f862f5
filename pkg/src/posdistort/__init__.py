"""Distortion calculus for products of strictly positive matrices."""

from .birkhoff import CurveTable, bb_kappa, comparison_curve, contraction_check, hilbert_distance, theta
from .core import (
    SlopeRange,
    cross_ratio,
    dist,
    distortion,
    multiply,
    oriented_distortion,
    slopes,
    validate,
    validate_vector,
)
from .envelope import (
    WitnessPair,
    complete_left,
    complete_right,
    empirical_max,
    f_profile,
    phi,
    psi,
    t_star,
    witness_pair,
)
from .errors import (
    AllConverged,
    ConfigError,
    DimensionMismatch,
    DistortionError,
    InsufficientData,
    NonPositiveEntry,
    NotTwoByTwo,
    OutOfDomain,
    ParseError,
    PreconditionViolated,
)
from .products import (
    BoundTrajectory,
    ProductAccumulator,
    accumulate,
    closed_form,
    decay_rate,
    kappa,
    propagate,
)
from .reduction import CollapseResult, PushResult, collapse_2d, four_point_collapse, push_extremal

__version__ = "0.1.0"
