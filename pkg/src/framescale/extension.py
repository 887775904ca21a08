"""Orthogonal extension of a strictly scalable frame.

Given weights ``c_j > 0`` with ``sum c_j^2 phi_j phi_j^T = I``, the matrix
``DT`` (``D = diag(c)``) has orthonormal columns.  Completing them to an
orthonormal basis of ``R^M`` with columns ``u_1..u_{M-N}`` and setting
``psi_j`` to row ``j`` of ``D^{-1} [u_1 .. u_{M-N}]`` gives companion
vectors for which ``{phi_j (+) psi_j}`` is an orthogonal basis of ``R^M``
with squared norms ``c_j^{-2}``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure
from .linalg import Frame
from .scaling import Weights, verify_weights
from .tolerances import DEFAULT, Tolerances

__all__ = ["ExtensionResult", "orthogonal_complement", "extend_to_orthogonal_basis",
           "verify_extension", "joined_vectors"]


@dataclass(frozen=True)
class ExtensionResult:
    psi: Frame
    diagonal: np.ndarray
    coupling_gram: np.ndarray


def joined_vectors(frame: Frame, ext: ExtensionResult) -> np.ndarray:
    """Rows ``phi_j (+) psi_j`` in ``R^M``."""
    return np.hstack([frame.vectors, ext.psi.vectors])


def orthogonal_complement(q: np.ndarray, breakdown: float = 1e-8) -> np.ndarray:
    """Orthonormal basis of the complement of the orthonormal columns of ``q``.

    Modified Gram-Schmidt on the standard basis vectors, always taking the
    candidate with the largest remaining residual, followed by one
    re-orthogonalization pass.
    """
    m, n = q.shape
    basis = [q[:, i] for i in range(n)]
    chosen = []
    candidates = np.eye(m)
    for _ in range(m - n):
        residuals = candidates.copy()
        for b in basis + chosen:
            residuals -= np.outer(residuals @ b, b)
        norms = np.linalg.norm(residuals, axis=1)
        best = int(np.argmax(norms))
        if norms[best] < breakdown:
            raise NumericalFailure("Gram-Schmidt breakdown while completing the basis")
        v = residuals[best] / norms[best]
        for b in basis + chosen:
            v -= (v @ b) * b
        chosen.append(v / np.linalg.norm(v))
    return np.array(chosen).T.reshape(m, m - n)


def extend_to_orthogonal_basis(frame: Frame, weights, tol: Tolerances = DEFAULT) -> ExtensionResult:
    """Construct ``psi_j in R^{M-N}`` so that ``{phi_j (+) psi_j}`` is orthogonal."""
    c = np.asarray(weights.values if isinstance(weights, Weights) else weights, dtype=float)
    m, n = frame.count, frame.dim
    if m < n:
        raise ValueError("a frame needs at least N vectors")
    if c.shape != (m,) or c.min() < tol.strict_floor:
        raise ValueError("extension needs one strictly positive weight per vector")
    residual = verify_weights(frame, c)
    if residual > tol.parseval:
        raise ValueError(f"weights are not Parseval (residual {residual:.3e})")
    dt = frame.vectors * c[:, None]
    # re-orthonormalize DT's columns: they are orthonormal only up to the residual
    q, _ = np.linalg.qr(dt)
    complement = orthogonal_complement(q)
    lam = complement / c[:, None]
    psi = Frame(lam, dim=m - n, allow_zero=True)
    joined = np.hstack([frame.vectors, lam])
    gram = joined @ joined.T
    gram.setflags(write=False)
    diagonal = np.diag(gram).copy()
    return ExtensionResult(psi, diagonal, gram)


def verify_extension(frame: Frame, ext: ExtensionResult, tol: Tolerances = DEFAULT) -> float:
    """Largest off-diagonal of the recomputed coupling Gram matrix.

    Returns ``inf`` if any diagonal entry falls below ``tol.strict_floor``.
    """
    if ext.psi.count != frame.count:
        raise ValueError("companion frame has the wrong number of vectors")
    joined = np.hstack([frame.vectors, ext.psi.vectors])
    gram = joined @ joined.T
    if np.diag(gram).min() < tol.strict_floor:
        return float("inf")
    off = gram - np.diag(np.diag(gram))
    return float(np.abs(off).max()) if off.size else 0.0
