"""Dense linear algebra primitives and basic frame quantities.

A frame is stored as its analysis matrix: an ``(M, N)`` array whose rows
are the frame vectors.  Everything here is small and dense; the eigen
solver is a cyclic Jacobi method, which is accurate and unconditionally
convergent on symmetric input of the sizes this package targets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, FrameError, NotAFrameError
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "Frame",
    "SpectralDecomposition",
    "symmetric",
    "analysis_matrix",
    "frame_operator",
    "jacobi_eigen",
    "frame_bounds",
    "is_frame",
    "canonical_parseval",
    "apply_unitary",
    "is_orthogonal",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Frame:
    """Ordered collection of ``M`` nonzero vectors in ``R^N``.

    Parameters
    ----------
    vectors : array_like, shape (M, N)
        One frame vector per row.  Row order is preserved.
    dim : int, optional
        Ambient dimension.  Required only when ``N = 0`` cannot be
        inferred (e.g. the companion frame of an orthonormal basis).
    allow_zero : bool
        Skip the nonzero-norm check.  Used for companion frames, whose
        vectors may legitimately vanish.
    """

    vectors: np.ndarray

    def __init__(self, vectors, dim: int | None = None, *, allow_zero: bool = False,
                 tol: Tolerances = DEFAULT):
        arr = np.array(vectors, dtype=float)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, dim or 0)
        if arr.ndim != 2:
            raise FrameError(f"expected a 2-d array of vectors, got shape {arr.shape}")
        if dim is not None and arr.shape[1] != dim:
            raise FrameError(f"vectors have dimension {arr.shape[1]}, expected {dim}")
        if not np.all(np.isfinite(arr)):
            raise FrameError("frame contains non-finite entries")
        if not allow_zero and arr.shape[1] > 0:
            norms = np.linalg.norm(arr, axis=1)
            bad = np.flatnonzero(norms <= tol.zero)
            if bad.size:
                raise FrameError(f"zero vector at row {bad[0] + 1}")
        object.__setattr__(self, "vectors", _frozen(arr))

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def count(self) -> int:
        return self.vectors.shape[0]

    def __len__(self) -> int:
        return self.count

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, j):
        return self.vectors[j]

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    def scaled(self, weights: Sequence[float]) -> "Frame":
        """Return ``{c_j phi_j}`` (zero weights allowed)."""
        w = np.asarray(weights, dtype=float)
        return Frame(self.vectors * w[:, None], allow_zero=True)

    def __repr__(self) -> str:
        return f"Frame(M={self.count}, N={self.dim})"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in ascending order with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.T


def symmetric(a) -> np.ndarray:
    """Return ``(a + a^T) / 2`` as a read-only array; entries are exactly symmetric."""
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return _frozen(0.5 * (a + a.T))


def is_orthogonal(u, tol: float = DEFAULT.orthogonality) -> bool:
    u = np.asarray(u, dtype=float)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return np.linalg.norm(u.T @ u - np.eye(u.shape[0])) <= tol


def analysis_matrix(frame: Frame) -> np.ndarray:
    """The ``M x N`` matrix whose ``j``-th row is ``phi_j``."""
    if frame.count == 0:
        raise FrameError("empty frame")
    return frame.vectors.copy()


def frame_operator(frame: Frame) -> np.ndarray:
    """``S = T^T T = sum_j phi_j phi_j^T``."""
    t = analysis_matrix(frame)
    return symmetric(t.T @ t)


def jacobi_eigen(s, tol: Tolerances = DEFAULT) -> SpectralDecomposition:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps over all ``(p, q)`` pairs with classical rotations until every
    off-diagonal entry is at most ``tol.eig * ||S||_F``.

    Raises
    ------
    ConvergenceError
        If ``tol.max_sweeps`` sweeps are not enough; the error carries the
        final off-diagonal Frobenius norm.
    """
    a = np.array(symmetric(s))
    n = a.shape[0]
    v = np.eye(n)
    scale = np.linalg.norm(a)
    threshold = tol.eig * scale
    sweeps = 0
    if n > 1 and scale > 0:
        for sweeps in range(tol.max_sweeps + 1):
            off = np.abs(a - np.diag(np.diag(a)))
            if off.max() <= threshold:
                break
            if sweeps == tol.max_sweeps:
                raise ConvergenceError(
                    f"Jacobi did not converge in {tol.max_sweeps} sweeps",
                    float(np.linalg.norm(off)),
                )
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    t = 1.0 / (abs(theta) + np.hypot(theta, 1.0))
                    if theta < 0:
                        t = -t
                    c = 1.0 / np.hypot(t, 1.0)
                    sn = t * c
                    ap, aq = a[:, p].copy(), a[:, q].copy()
                    a[:, p] = c * ap - sn * aq
                    a[:, q] = sn * ap + c * aq
                    ap, aq = a[p, :].copy(), a[q, :].copy()
                    a[p, :] = c * ap - sn * aq
                    a[q, :] = sn * ap + c * aq
                    a[p, q] = a[q, p] = 0.0
                    vp, vq = v[:, p].copy(), v[:, q].copy()
                    v[:, p] = c * vp - sn * vq
                    v[:, q] = sn * vp + c * vq
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(_frozen(w[order]), _frozen(v[:, order]), sweeps)


def frame_bounds(frame: Frame, tol: Tolerances = DEFAULT) -> tuple[float, float]:
    """Optimal lower and upper frame bounds ``(A, B)``.

    ``A`` is clipped at zero; ``A = 0`` means the vectors do not span.
    """
    w = jacobi_eigen(frame_operator(frame), tol).eigenvalues
    return max(float(w[0]), 0.0), float(w[-1])


def is_frame(frame: Frame, tol: Tolerances = DEFAULT) -> bool:
    if frame.count == 0 or frame.dim == 0 or frame.count < frame.dim:
        return False
    lower, upper = frame_bounds(frame, tol)
    return upper > 0 and lower >= tol.rank * upper


def canonical_parseval(frame: Frame, tol: Tolerances = DEFAULT) -> Frame:
    """The canonical Parseval frame ``{S^{-1/2} phi_j}``."""
    dec = jacobi_eigen(frame_operator(frame), tol)
    w, u = dec.eigenvalues, dec.eigenvectors
    if w[-1] <= 0 or w[0] < tol.rank * w[-1]:
        raise NotAFrameError("not a frame: frame operator is singular")
    inv_sqrt = (u / np.sqrt(w)) @ u.T
    return Frame(frame.vectors @ inv_sqrt.T)


def apply_unitary(frame: Frame, u, tol: Tolerances = DEFAULT) -> Frame:
    """Return ``{U phi_j}`` for an orthogonal ``U``."""
    u = np.asarray(u, dtype=float)
    if u.shape != (frame.dim, frame.dim) or not is_orthogonal(u, tol.orthogonality):
        raise ValueError("U must be an orthogonal matrix of the frame's dimension")
    return Frame(frame.vectors @ u.T)
