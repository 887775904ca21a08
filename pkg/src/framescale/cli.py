"""Command-line interface.

Usage::

    framescale analyze frame.csv            # verdict, weights or certificate (JSON)
    framescale extend frame.csv             # companion frame for an orthogonal basis
    framescale cone frame.csv --out fig     # fig-cone.csv, fig-frame.csv
    framescale perturb frame.csv --trials 200 --seed 1
    framescale random --dim 3 --count 12 --trials 500 --seed 7

Exit codes: 0 scalable, 1 not scalable, 2 input error, 3 numerical
failure.  ``extend`` exits 1 for frames that are not strictly scalable;
``cone`` and ``perturb`` need a non-scalable frame, exit 1 for a scalable
one and 0 once their output is written.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .errors import FrameError, NotAFrameError, NumericalFailure
from .experiments import (
    NOT_SCALABLE,
    analyze_frame,
    perturbation_experiment,
    random_ensemble_stats,
)
from .ensembles import DISTRIBUTIONS
from .extension import extend_to_orthogonal_basis, verify_extension
from .geometry import classify, cone_from_certificate, sample_surface
from .io import parse_frame_file, write_points_csv
from .linalg import is_frame
from .scaling import NotScalable, certificate_to_zero_trace, solve_scaling, solve_strict_scaling
from .tolerances import PROFILES

__all__ = ["main", "build_parser"]

EXIT_SCALABLE, EXIT_NOT_SCALABLE, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3

log = logging.getLogger("framescale")


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _load(args):
    frame = parse_frame_file(args.frame, args.format)
    if not is_frame(frame, args.tol):
        raise NotAFrameError("vectors do not span R^N; not a frame")
    return frame


def cmd_analyze(args) -> int:
    frame = _load(args)
    report = analyze_frame(frame, args.tol, extend=args.extend, cone=args.cone,
                           timing=args.timing)
    _emit(report.to_dict())
    return EXIT_NOT_SCALABLE if report.verdict == NOT_SCALABLE else EXIT_SCALABLE


def cmd_extend(args) -> int:
    frame = _load(args)
    strict = solve_strict_scaling(frame, args.tol)
    if not strict.strictly_scalable:
        log.error("not strictly scalable: no orthogonal extension exists")
        return EXIT_NOT_SCALABLE
    weights = strict.outcome.weights
    ext = extend_to_orthogonal_basis(frame, weights, args.tol)
    _emit({
        "schema": 1,
        "dim": frame.count - frame.dim,
        "weights": weights.values.tolist(),
        "psi": ext.psi.vectors.tolist(),
        "diagonal": ext.diagonal.tolist(),
        "max_offdiag": verify_extension(frame, ext, args.tol),
    })
    return EXIT_SCALABLE


def cmd_cone(args) -> int:
    frame = parse_frame_file(args.frame, args.format)
    if frame.dim not in (2, 3):
        log.error("cone export supports N in {2, 3}, got N = %d", frame.dim)
        return EXIT_INPUT
    if not is_frame(frame, args.tol):
        raise NotAFrameError("vectors do not span R^N; not a frame")
    outcome = solve_scaling(frame, args.tol)
    if not isinstance(outcome, NotScalable):
        log.error("frame is scalable: no cone contains all its vectors")
        return EXIT_NOT_SCALABLE
    shifted = certificate_to_zero_trace(frame, outcome.certificate, args.tol)
    cone = cone_from_certificate(shifted, frame, args.tol)
    points = sample_surface(cone, args.resolution)
    labels = [classify(cone, phi, args.tol).value for phi in frame]
    cone_path, frame_path = f"{args.out}-cone.csv", f"{args.out}-frame.csv"
    write_points_csv(cone_path, points)
    write_points_csv(frame_path, frame.vectors, labels)
    _emit({
        "schema": 1,
        "cone_file": cone_path,
        "frame_file": frame_path,
        "points": len(points),
        "basis": cone.basis.tolist(),
        "coefficients": cone.coefficients.tolist(),
        "labels": labels,
    })
    return EXIT_SCALABLE


def cmd_perturb(args) -> int:
    frame = _load(args)
    if solve_scaling(frame, args.tol).scalable:
        log.error("base frame is scalable")
        return EXIT_NOT_SCALABLE
    report = perturbation_experiment(frame, args.epsilon, args.trials, args.seed, args.tol,
                                     frame_id=str(args.frame))
    _emit(report.to_dict())
    return EXIT_SCALABLE


def cmd_random(args) -> int:
    stats = random_ensemble_stats(args.dim, args.count, args.trials, args.seed, args.dist,
                                  args.tol, timing=args.timing)
    _emit(stats)
    return EXIT_SCALABLE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance-profile", choices=sorted(PROFILES), default="default")
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="frame file format (default: by extension or content)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="framescale",
                                     description="Scalability of finite frames in R^N.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="decide (strict) scalability")
    p.add_argument("frame")
    p.add_argument("--seed", type=int, default=0, help="accepted for reproducibility; unused")
    p.add_argument("--extend", action="store_true", help="include the orthogonal extension")
    p.add_argument("--cone", action="store_true", help="include the certificate cone")
    p.add_argument("--timing", action="store_true", help="include wall-clock time")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("extend", parents=[common], help="orthogonal extension")
    p.add_argument("frame")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("cone", parents=[common], help="export cone samples as CSV")
    p.add_argument("frame")
    p.add_argument("--resolution", type=int, default=16)
    p.add_argument("--out", default="framescale")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("perturb", parents=[common], help="openness experiment")
    p.add_argument("frame")
    p.add_argument("--epsilon", type=float, default=None,
                   help="perturbation radius (default: just below the safe radius)")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("random", parents=[common], help="random-frame statistics")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="sphere")
    p.add_argument("--timing", action="store_true", help="include mean solve time")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    args.tol = PROFILES[args.tolerance_profile]
    try:
        return args.func(args)
    except (FrameError, NotAFrameError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except NumericalFailure as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
