"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 domain error, 3 a bound was
exceeded (which would falsify one of the inequalities being checked).
"""

import argparse
import sys

import numpy as np

from . import birkhoff, envelope, products, reduction
from .core import dist, distortion
from .ensemble import CONSTRUCTION, EnsembleConfig, run_ensemble
from .errors import ConfigError, DimensionMismatch, DistortionError, ParseError
from .matrixfile import fmt, format_matrix, read_matrices

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VIOLATION = 0, 1, 2, 3
CHECK_RTOL = 1e-9
CHAIN_RTOL = 1e-12


class BoundViolation(Exception):
    """Carries the full report so it is still printed before exiting with 3."""

    def __init__(self, text, message):
        self.text = text
        super().__init__(message)


def short(value):
    return f"{float(value):.6g}"


def _table(header, rows):
    lines = ["# " + "\t".join(header)]
    for row in rows:
        lines.append("\t".join(str(v) if isinstance(v, (int, np.integer)) else fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _load(path, count=None):
    matrices = read_matrices(path)
    if not matrices:
        raise ParseError("no matrices found", 1)
    if count is not None and len(matrices) != count:
        raise ParseError(f"expected exactly {count} matrices, found {len(matrices)}", 1)
    return matrices


def cmd_distortion(path):
    out = []
    for i, a in enumerate(_load(path), start=1):
        r = distortion(a)
        p = np.sqrt(r)
        out.append(
            f"matrix {i}: {a.shape[0]}x{a.shape[1]}\n"
            f"  R = {short(r)}\n"
            f"  sqrt(R) = {short(p)}\n"
            f"  kappa = {short((p - 1) / (p + 1))}\n"
            f"  log R = {short(np.log(r))}\n"
        )
    return "".join(out)


def cmd_envelope(alpha, beta):
    return (
        f"phi = {short(envelope.phi(alpha, beta))}\n"
        f"t_star = {short(envelope.t_star(alpha, beta))}\n"
        f"psi(sqrt(alpha), sqrt(beta)) = {short(envelope.psi(np.sqrt(alpha), np.sqrt(beta)))}\n"
    )


def cmd_witness(alpha, beta, u=1.0):
    w = envelope.witness_pair(alpha, beta, u)
    return (
        f"# witness pair alpha={fmt(alpha)} beta={fmt(beta)} u={fmt(u)}\n"
        f"# A\n{format_matrix(w.a)}\n"
        f"# B\n{format_matrix(w.b)}\n"
        f"# AB\n{format_matrix(w.product)}"
        f"# achieved R(AB) = {fmt(w.achieved)}\n"
        f"# target phi(alpha, beta) = {fmt(w.target)}\n"
    )


def cmd_propagate(path):
    factors = _load(path)
    for k in range(1, len(factors)):
        if factors[k].shape[1] != factors[k - 1].shape[0]:
            raise DimensionMismatch(
                f"matrix {k + 1} {factors[k].shape} cannot left-multiply matrix {k} {factors[k - 1].shape}"
            )
    r_factors = [distortion(a) for a in factors]
    traj = products.propagate(np.sqrt(r_factors))
    alpha = max(r_factors)
    acc = products.ProductAccumulator()
    rows = []
    for a in factors:
        acc = products.accumulate(acc, a)
    for (n, actual), r_a, q2 in zip(acc.history, r_factors, traj.r_bound):
        rows.append((n, r_a, actual, q2, products.closed_form(alpha, n)[1]))
    text = _table(["n", "R_A_n", "R_P_n", "q_n^2", "closed_form_bound"], rows)
    bad = [row[0] for row in rows if row[2] > row[3] * (1 + CHECK_RTOL)]
    if bad:
        raise BoundViolation(text, f"R(P_n) exceeds q_n^2 at n = {bad}")
    return text


def cmd_ensemble(config):
    result = run_ensemble(config)
    c = config
    text = (
        f"# ensemble dimension={c.dimension} length={c.length} alpha={fmt(c.alpha)} "
        f"trials={c.trials} seed={c.seed}\n"
        f"# construction: {CONSTRUCTION}\n"
        f"# violations: {result.violations}\n"
        + _table(["n", "min", "median", "max", "bound"], result.summary_rows())
    )
    if result.violations:
        raise BoundViolation(text, f"{result.violations} actual distortions exceed the bound")
    return text


def cmd_bb_compare(r, h_max=12.0, samples=400):
    p = np.sqrt(envelope._at_least_one("r", r))
    table = birkhoff.comparison_curve(p, h_max, samples)
    return _table(["h", "theta", "bb_line", "saturation"], table.rows)


def extremal_block(a, b):
    """Rows ``i, j`` of ``a`` and columns ``k, l`` of ``b`` whose block in
    ``a @ b`` attains ``distortion(a @ b)`` with orientation >= 1."""
    prod = a @ b
    best = (-np.inf, 0, 0, 0, 0)
    ncols = prod.shape[1]
    for k in range(ncols):
        for l in range(ncols):
            ratios = prod[:, k] / prod[:, l]
            i, j = int(np.argmax(ratios)), int(np.argmin(ratios))
            value = ratios[i] / ratios[j]
            if value > best[0]:
                best = (value, i, j, k, l)
    return best[1:]


def cmd_reduce(path):
    a, b = _load(path, count=2)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"matrix 1 {a.shape} and matrix 2 {b.shape} cannot be multiplied")
    i, j, k, l = extremal_block(a, b)
    x, y, u, v = a[i], a[j], b[:, k], b[:, l]
    res = reduction.four_point_collapse(x, y, u, v)
    bound = envelope.phi(dist(x, y), dist(u, v))
    lines = [
        f"rows (i, j) = ({i + 1}, {j + 1}); columns (k, l) = ({k + 1}, {l + 1})",
        f"F_d before = {short(res.value_before)}",
        f"F_2 after = {short(res.value_after)}",
        f"phi(Dist(x,y), Dist(u,v)) = {short(bound)}",
        "x' = " + " ".join(short(t) for t in res.x2),
        "y' = " + " ".join(short(t) for t in res.y2),
        "u' = " + " ".join(short(t) for t in res.u2),
        "v' = " + " ".join(short(t) for t in res.v2),
    ]
    ok_lower = res.value_after >= res.value_before * (1 - CHAIN_RTOL)
    ok_upper = res.value_after <= bound * (1 + CHAIN_RTOL)
    lines.append(f"F_d <= F_2 <= phi: {'holds' if ok_lower and ok_upper else 'FAILS'}")
    text = "\n".join(lines) + "\n"
    if not (ok_lower and ok_upper):
        raise BoundViolation(text, "inequality chain F_d <= F_2 <= phi does not hold")
    return text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="posdistort", description="Distortion calculus for positive matrices.")
    parser.add_argument("--output", metavar="PATH", help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--output", metavar="PATH", default=argparse.SUPPRESS)
        return p

    p = add("distortion", "distortion, sqrt, kappa and log of each matrix in a file")
    p.add_argument("--input", metavar="PATH", required=True)

    p = add("envelope", "envelope value phi(alpha, beta) and its maximizer")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)

    p = add("witness", "explicit 2x2 pair attaining the envelope")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--u", type=float, default=1.0)

    p = add("propagate", "actual vs bounded distortion of P_n = A_n ... A_1 (file order A_1, A_2, ...)")
    p.add_argument("--input", metavar="PATH", required=True)

    p = add("ensemble", "seeded random products checked against the finite-product bound")
    p.add_argument("--dimension", type=int, default=2)
    p.add_argument("--length", type=int, default=10)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = add("bb-compare", "theta(h) vs the Birkhoff-Bushell line kappa*h")
    p.add_argument("--r", type=float, required=True, help="distortion R(A)")
    p.add_argument("--h-max", type=float, default=12.0)
    p.add_argument("--samples", type=int, default=400)

    p = add("reduce", "collapse the extremal block of a two-matrix product to dimension 2")
    p.add_argument("--input", metavar="PATH", required=True)
    return parser


def run(args):
    c = args.command
    if c == "distortion":
        return cmd_distortion(args.input)
    if c == "envelope":
        return cmd_envelope(args.alpha, args.beta)
    if c == "witness":
        return cmd_witness(args.alpha, args.beta, args.u)
    if c == "propagate":
        return cmd_propagate(args.input)
    if c == "ensemble":
        return cmd_ensemble(EnsembleConfig(args.dimension, args.length, args.alpha, args.trials, args.seed))
    if c == "bb-compare":
        return cmd_bb_compare(args.r, args.h_max, args.samples)
    if c == "reduce":
        return cmd_reduce(args.input)
    raise AssertionError(c)


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        text = run(args)
    except BoundViolation as exc:
        _emit(exc.text, args.output)
        print(f"posdistort: bound violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ParseError, ConfigError, OSError) as exc:
        print(f"posdistort: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DistortionError as exc:
        print(f"posdistort: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(text, args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
