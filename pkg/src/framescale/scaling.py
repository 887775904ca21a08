"""Deciding scalability of a frame.

A frame ``{phi_j}`` is scalable when nonnegative ``c_j`` exist with
``sum_j c_j^2 phi_j phi_j^T = I``.  Writing ``x_j = c_j^2`` this is the
linear feasibility problem ``A x = b, x >= 0`` where column ``j`` of ``A``
is ``phi_j phi_j^T`` and ``b = I``, both vectorized in ``Sym(N)``.

Symmetric matrices are vectorized by their upper triangle (row-major)
with off-diagonal entries multiplied by ``sqrt(2)``.  The Euclidean inner
product of two such vectors equals ``tr(XY)``, so the dual vector of an
infeasible phase-1 problem de-vectorizes directly into a symmetric ``Y``
with ``tr(Y) < 0`` and ``phi_j^T Y phi_j >= 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import InvalidCertificate, NotAFrameError, NumericalFailure
from .linalg import Frame, analysis_matrix, is_frame, symmetric
from .simplex import linprog_standard
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "NEGATIVE_TRACE",
    "ZERO_TRACE",
    "Weights",
    "Certificate",
    "Scalable",
    "NotScalable",
    "ScalingOutcome",
    "StrictScalingResult",
    "vectorize_sym",
    "devectorize_sym",
    "build_feasibility_system",
    "solve_scaling",
    "solve_strict_scaling",
    "verify_weights",
    "verify_certificate",
    "certificate_to_zero_trace",
    "form_values",
]

NEGATIVE_TRACE = "negative-trace"
ZERO_TRACE = "zero-trace"

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Weights:
    """Scaling factors ``c_j >= 0`` and the measured Parseval residual."""

    values: np.ndarray
    parseval_residual: float

    @property
    def squared(self) -> np.ndarray:
        return self.values ** 2


@dataclass(frozen=True)
class Certificate:
    """Symmetric witness of non-scalability.

    ``form`` is ``NEGATIVE_TRACE`` (``tr Y < 0``, all ``phi_j^T Y phi_j >= 0``)
    or ``ZERO_TRACE`` (``tr Y = 0``, all ``phi_j^T Y phi_j > 0``).
    """

    Y: np.ndarray
    trace: float
    form_values: np.ndarray
    form: str = NEGATIVE_TRACE


@dataclass(frozen=True)
class Scalable:
    weights: Weights
    scalable: bool = field(default=True, init=False)


@dataclass(frozen=True)
class NotScalable:
    certificate: Certificate
    scalable: bool = field(default=False, init=False)


ScalingOutcome = Union[Scalable, NotScalable]


@dataclass(frozen=True)
class StrictScalingResult:
    """Outcome of the max-margin LP.

    ``margin`` is the optimal ``t`` in ``max t s.t. Ax = b, x_j >= t``;
    ``None`` when the frame is not scalable at all.  ``zero_weight_indices``
    (0-based) lists the vectors that receive weight zero in every scaling;
    it is only populated for frames that are scalable but not strictly.
    """

    outcome: ScalingOutcome
    strictly_scalable: bool
    margin: float | None
    zero_weight_indices: tuple[int, ...] = ()


def vectorize_sym(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    rows, cols = np.triu_indices(x.shape[0])
    v = x[rows, cols].copy()
    v[rows != cols] *= _SQRT2
    return v


def devectorize_sym(v, n: int) -> np.ndarray:
    rows, cols = np.triu_indices(n)
    v = np.asarray(v, dtype=float)
    vals = np.where(rows != cols, v / _SQRT2, v)
    y = np.zeros((n, n))
    y[rows, cols] = vals
    y[cols, rows] = vals
    return y


def build_feasibility_system(frame: Frame) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(A, b)`` with ``A[:, j] = vec(phi_j phi_j^T)`` and ``b = vec(I)``."""
    t = analysis_matrix(frame)
    n = frame.dim
    rows, cols = np.triu_indices(n)
    a = t[:, rows] * t[:, cols]
    a[:, rows != cols] *= _SQRT2
    return a.T.copy(), vectorize_sym(np.eye(n))


def form_values(frame: Frame, y) -> np.ndarray:
    """``phi_j^T Y phi_j`` for every frame vector."""
    t = frame.vectors
    return np.einsum("ji,ik,jk->j", t, np.asarray(y, dtype=float), t)


def verify_weights(frame: Frame, weights) -> float:
    """``||sum_j c_j^2 phi_j phi_j^T - I||_F``, recomputed from scratch."""
    c = np.asarray(weights.values if isinstance(weights, Weights) else weights, dtype=float)
    if c.shape != (frame.count,):
        raise ValueError(f"expected {frame.count} weights, got shape {c.shape}")
    scaled = frame.vectors * c[:, None]
    return float(np.linalg.norm(scaled.T @ scaled - np.eye(frame.dim)))


def verify_certificate(frame: Frame, cert: Certificate, tol: Tolerances = DEFAULT) -> bool:
    """Check a certificate's tagged inequalities at unit Frobenius norm."""
    y = np.asarray(cert.Y, dtype=float)
    if y.shape != (frame.dim, frame.dim):
        raise ValueError("certificate dimension does not match the frame")
    y = 0.5 * (y + y.T)
    norm = np.linalg.norm(y)
    if norm == 0:
        return False
    y = y / norm
    trace = float(np.trace(y))
    values = form_values(frame, y)
    lowest = float(values.min()) if values.size else math.inf
    if cert.form == NEGATIVE_TRACE:
        return trace <= -tol.certificate_margin and lowest >= -tol.certificate_slack
    if cert.form == ZERO_TRACE:
        return abs(trace) <= 1e-12 and lowest > tol.certificate_slack
    raise ValueError(f"unknown certificate form {cert.form!r}")


def certificate_to_zero_trace(frame: Frame, cert: Certificate,
                              tol: Tolerances = DEFAULT) -> Certificate:
    """Shift a negative-trace certificate by ``(alpha/N) I``, ``alpha = -tr Y``.

    The result has trace zero and strictly positive form values
    ``v_j + (alpha/N)||phi_j||^2``.
    """
    if cert.form != NEGATIVE_TRACE or not verify_certificate(frame, cert, tol):
        raise InvalidCertificate("expected a verified negative-trace certificate")
    n = frame.dim
    y = np.array(symmetric(cert.Y))
    alpha = -np.trace(y)
    y[np.diag_indices(n)] += alpha / n
    y[np.diag_indices(n)] -= np.trace(y) / n
    return Certificate(symmetric(y), float(np.trace(y)), form_values(frame, y), ZERO_TRACE)


def _orthogonal_basis_weights(frame: Frame, tol: Tolerances) -> np.ndarray | None:
    t = frame.vectors
    gram = t @ t.T
    norms = np.sqrt(np.diag(gram))
    off = np.abs(gram - np.diag(np.diag(gram)))
    if np.all(off <= tol.gram * np.outer(norms, norms)):
        return 1.0 / norms
    return None


def _weights_from_lp(frame, a, b, x, tol: Tolerances) -> Weights:
    c = np.sqrt(x)
    residual = verify_weights(frame, c)
    support = np.flatnonzero(x > 0)
    if residual > 1e-3 * tol.parseval and 0 < support.size <= a.shape[0]:
        # a basic solution is unique on its support, so a least-squares solve only polishes it
        refined, *_ = np.linalg.lstsq(a[:, support], b, rcond=None)
        if refined.min() >= 0:
            candidate = np.zeros_like(x)
            candidate[support] = refined
            if verify_weights(frame, np.sqrt(candidate)) < residual:
                c = np.sqrt(candidate)
                residual = verify_weights(frame, c)
    if residual > tol.parseval:
        raise NumericalFailure(f"LP weights miss the Parseval condition (residual {residual:.3e})")
    return Weights(c, residual)


def _certificate_from_dual(frame: Frame, y_vec, tol: Tolerances) -> Certificate:
    y = devectorize_sym(y_vec, frame.dim)
    values = form_values(frame, y)
    if values.size and values.min() < 0:
        # roundoff repair: adding delta*I keeps a valid certificate while trace stays negative
        delta = float(np.max(-values / frame.norms() ** 2))
        y[np.diag_indices(frame.dim)] += delta * (1 + 1e-9)
    y /= np.linalg.norm(y)
    y = symmetric(y)
    cert = Certificate(y, float(np.trace(y)), form_values(frame, y), NEGATIVE_TRACE)
    if not verify_certificate(frame, cert, tol):
        raise NumericalFailure("dual vector does not verify as a certificate")
    return cert


def _require_frame(frame: Frame, tol: Tolerances) -> None:
    if not is_frame(frame, tol):
        raise NotAFrameError("vectors do not span R^N; not a frame")


def solve_scaling(frame: Frame, tol: Tolerances = DEFAULT) -> ScalingOutcome:
    """Return weights making the frame Parseval, or a Farkas certificate.

    Raises
    ------
    NotAFrameError
        The vectors do not span.
    NumericalFailure
        The LP basis is ill-conditioned or the payload fails verification;
        a verdict is never returned unverified.
    """
    _require_frame(frame, tol)
    if frame.count == frame.dim:
        c = _orthogonal_basis_weights(frame, tol)
        if c is not None:
            return Scalable(Weights(c, verify_weights(frame, c)))
    a, b = build_feasibility_system(frame)
    result = linprog_standard(a, b, tol=tol)
    if result.status == "infeasible":
        return NotScalable(_certificate_from_dual(frame, result.farkas, tol))
    return Scalable(_weights_from_lp(frame, a, b, result.x, tol))


def _forced_zeros(a, b, candidates, tol: Tolerances) -> tuple[int, ...]:
    forced = []
    for j in candidates:
        cost = np.zeros(a.shape[1])
        cost[j] = -1.0
        res = linprog_standard(a, b, cost, tol=tol)
        if res.status == "optimal" and res.x[j] <= tol.strict_floor:
            forced.append(int(j))
    return tuple(forced)


def solve_strict_scaling(frame: Frame, tol: Tolerances = DEFAULT) -> StrictScalingResult:
    """Maximize the smallest squared weight.

    Solves ``max t`` subject to ``Ax = b``, ``x_j >= t >= 0`` via the
    substitution ``x = s + t 1`` with ``s >= 0``.  The frame is strictly
    scalable when the optimum reaches ``tol.strict_floor``.
    """
    outcome = solve_scaling(frame, tol)
    if isinstance(outcome, NotScalable):
        return StrictScalingResult(outcome, False, None)
    a, b = build_feasibility_system(frame)
    m = frame.count
    a_t = np.hstack([a, a.sum(axis=1, keepdims=True)])
    cost = np.zeros(m + 1)
    cost[-1] = -1.0
    res = linprog_standard(a_t, b, cost, tol=tol)
    if res.status != "optimal":
        raise NumericalFailure(f"max-margin LP ended with status {res.status}")
    margin = float(res.x[-1])
    x = res.x[:m] + margin
    if margin >= tol.strict_floor:
        weights = _weights_from_lp(frame, a, b, x, tol)
        return StrictScalingResult(Scalable(weights), True, margin)
    seen = np.maximum(outcome.weights.squared, x)
    zeros = _forced_zeros(a, b, np.flatnonzero(seen <= tol.strict_floor), tol)
    return StrictScalingResult(outcome, False, margin, zeros)
