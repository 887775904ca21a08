"""Report builders and ensemble experiments behind the command line."""
from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .ensembles import SplitMix64, perturb_frame, random_frame
from .errors import NotAFrameError, NumericalFailure
from .extension import extend_to_orthogonal_basis, verify_extension
from .fast_tests import nplus1_test
from .geometry import ConeRegion, classify, cone_from_certificate
from .linalg import Frame, frame_bounds, is_frame, jacobi_eigen
from .scaling import (
    Certificate,
    NotScalable,
    certificate_to_zero_trace,
    solve_scaling,
    solve_strict_scaling,
    verify_certificate,
    verify_weights,
)
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "SCHEMA",
    "STRICTLY_SCALABLE",
    "SCALABLE_NOT_STRICTLY",
    "NOT_SCALABLE",
    "AnalysisReport",
    "PerturbationReport",
    "analyze_frame",
    "safe_radius",
    "perturbation_experiment",
    "random_ensemble_stats",
]

log = logging.getLogger(__name__)

SCHEMA = 1
STRICTLY_SCALABLE = "strictly-scalable"
SCALABLE_NOT_STRICTLY = "scalable-not-strictly"
NOT_SCALABLE = "not-scalable"


def _floats(a) -> list:
    return np.asarray(a, dtype=float).tolist()


def _certificate_dict(cert: Certificate) -> dict:
    return {
        "form": cert.form,
        "Y": _floats(cert.Y),
        "trace": float(cert.trace),
        "form_values": _floats(cert.form_values),
    }


@dataclass
class AnalysisReport:
    dim: int
    count: int
    norms: list
    frame_bounds: dict
    verdict: str
    weights: list | None = None
    parseval_residual: float | None = None
    strict_margin: float | None = None
    zero_weight_rows: list = field(default_factory=list)
    certificate: dict | None = None
    zero_trace_certificate: dict | None = None
    nplus1: dict | None = None
    extension: dict | None = None
    cone: dict | None = None
    timing_ms: float | None = None

    @property
    def scalable(self) -> bool:
        return self.verdict != NOT_SCALABLE

    def to_dict(self) -> dict:
        out = {"schema": SCHEMA}
        out.update({k: v for k, v in asdict(self).items() if v is not None})
        return out


@dataclass
class PerturbationReport:
    base_frame_id: str
    epsilon: float
    trials: int
    non_scalable: int
    non_scalable_fraction: float
    safe_radius: float
    numerical_failures: int = 0

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, **asdict(self)}


def analyze_frame(frame: Frame, tol: Tolerances = DEFAULT, *, extend: bool = False,
                  cone: bool = False, timing: bool = False) -> AnalysisReport:
    """Run every applicable decision procedure and collect a verified report."""
    start = time.perf_counter()
    if not is_frame(frame, tol):
        raise NotAFrameError("vectors do not span R^N; not a frame")
    lower, upper = frame_bounds(frame, tol)
    strict = solve_strict_scaling(frame, tol)
    report = AnalysisReport(
        dim=frame.dim,
        count=frame.count,
        norms=_floats(frame.norms()),
        frame_bounds={"lower": lower, "upper": upper},
        verdict=NOT_SCALABLE,
    )
    outcome = strict.outcome
    if isinstance(outcome, NotScalable):
        cert = outcome.certificate
        if not verify_certificate(frame, cert, tol):
            raise NumericalFailure("certificate failed re-verification")
        shifted = certificate_to_zero_trace(frame, cert, tol)
        if not verify_certificate(frame, shifted, tol):
            raise NumericalFailure("zero-trace certificate failed re-verification")
        report.certificate = _certificate_dict(cert)
        report.zero_trace_certificate = _certificate_dict(shifted)
        if cone:
            c = cone_from_certificate(shifted, frame, tol)
            labels = [classify(c, phi, tol).value for phi in frame]
            report.cone = {
                "basis": _floats(c.basis),
                "coefficients": _floats(c.coefficients),
                "labels": labels,
                "all_interior": all(lab == ConeRegion.INTERIOR.value for lab in labels),
            }
    else:
        weights = outcome.weights
        residual = verify_weights(frame, weights)
        if residual > tol.parseval:
            raise NumericalFailure("weights failed re-verification")
        report.verdict = STRICTLY_SCALABLE if strict.strictly_scalable else SCALABLE_NOT_STRICTLY
        report.weights = _floats(weights.values)
        report.parseval_residual = residual
        report.strict_margin = strict.margin
        report.zero_weight_rows = [j + 1 for j in strict.zero_weight_indices]
        if extend and strict.strictly_scalable:
            ext = extend_to_orthogonal_basis(frame, weights, tol)
            report.extension = _extension_dict(frame, ext, tol)
    if frame.count == frame.dim + 1:
        np1 = nplus1_test(frame, tol=tol)
        report.nplus1 = {
            "verdict": np1.verdict,
            "witness_row": None if np1.witness_index is None else np1.witness_index + 1,
            "constant": np1.constant,
            "orthogonal_rows": sorted(k + 1 for k in np1.orthogonal_index_set),
            "violations": len(np1.violations),
            "degenerate": np1.degenerate,
        }
    if timing:
        report.timing_ms = 1000.0 * (time.perf_counter() - start)
    return report


def _extension_dict(frame: Frame, ext, tol: Tolerances) -> dict:
    return {
        "psi": _floats(ext.psi.vectors),
        "diagonal": _floats(ext.diagonal),
        "max_offdiag": verify_extension(frame, ext, tol),
    }


def safe_radius(frame: Frame, cert: Certificate, tol: Tolerances = DEFAULT) -> float:
    """Largest ``e`` with ``min_j v_j - 2 e ||Y|| max_j ||phi_j|| - e^2 ||Y|| > 0``.

    ``cert`` must be a verified zero-trace certificate; ``||Y||`` is the
    spectral norm.  Any vectors within distance ``e`` of the frame keep
    positive form values and are therefore not scalable.
    """
    if not verify_certificate(frame, cert, tol) or cert.form != "zero-trace":
        raise ValueError("safe radius needs a verified zero-trace certificate")
    y = np.asarray(cert.Y, dtype=float)
    lowest = float(np.min(np.einsum("ji,ik,jk->j", frame.vectors, y, frame.vectors)))
    spectral = float(np.abs(jacobi_eigen(y, tol).eigenvalues).max())
    reach = float(frame.norms().max())
    return -reach + math.sqrt(reach * reach + lowest / spectral)


def _verdict_or_none(vectors: np.ndarray, tol: Tolerances) -> bool | None:
    """True if scalable, False if not, None on numerical failure."""
    keep = np.linalg.norm(vectors, axis=1) > tol.zero
    frame = Frame(vectors[keep], dim=vectors.shape[1])
    if not is_frame(frame, tol):
        return False
    try:
        return solve_scaling(frame, tol).scalable
    except NumericalFailure:
        return None


def perturbation_experiment(frame: Frame, epsilon: float | None, trials: int, seed: int,
                            tol: Tolerances = DEFAULT, frame_id: str = "frame") -> PerturbationReport:
    """Fraction of random perturbations of a non-scalable frame that stay non-scalable.

    ``epsilon=None`` uses 0.999 times the certificate-implied safe radius.
    """
    outcome = solve_scaling(frame, tol)
    if not isinstance(outcome, NotScalable):
        raise ValueError("base frame is scalable")
    shifted = certificate_to_zero_trace(frame, outcome.certificate, tol)
    radius = safe_radius(frame, shifted, tol)
    eps = 0.999 * radius if epsilon is None else float(epsilon)
    rng = SplitMix64(seed)
    bad = failures = 0
    for _ in range(trials):
        verdict = _verdict_or_none(perturb_frame(rng, frame, eps), tol)
        if verdict is None:
            failures += 1
        elif not verdict:
            bad += 1
    if failures:
        log.warning("%d of %d perturbed frames hit a numerical failure", failures, trials)
    return PerturbationReport(frame_id, eps, trials, bad, bad / trials if trials else 0.0,
                              radius, failures)


def random_ensemble_stats(dim: int, count: int, trials: int, seed: int, dist: str = "sphere",
                          tol: Tolerances = DEFAULT, timing: bool = False) -> dict:
    """Empirical scalability rates of random frames."""
    if dim < 2 or count < dim or trials < 1:
        raise ValueError("need dim >= 2, count >= dim and trials >= 1")
    rng = SplitMix64(seed)
    scalable = strict = failures = not_frames = 0
    margins, elapsed = [], 0.0
    for _ in range(trials):
        frame = random_frame(rng, dim, count, dist)
        if not is_frame(frame, tol):
            not_frames += 1
            continue
        t0 = time.perf_counter()
        try:
            res = solve_strict_scaling(frame, tol)
        except NumericalFailure:
            failures += 1
            continue
        elapsed += time.perf_counter() - t0
        if res.outcome.scalable:
            scalable += 1
            margins.append(res.margin)
            strict += res.strictly_scalable
    out = {
        "schema": SCHEMA,
        "dim": dim,
        "count": count,
        "trials": trials,
        "seed": seed,
        "dist": dist,
        "scalable_fraction": scalable / trials,
        "strict_fraction": strict / trials,
        "mean_margin": float(np.mean(margins)) if margins else None,
        "not_frames": not_frames,
        "numerical_failures": failures,
    }
    if timing:
        out["mean_solve_ms"] = 1000.0 * elapsed / trials
    return out
