"""Conical zero-trace quadrics.

A cone is given by an orthonormal basis ``e_1..e_N`` (matrix columns) and
nonzero coefficients ``a_1..a_{N-1}`` summing to one.  Its surface is
``sum_k a_k <x, e_k>^2 = <x, e_N>^2``; the interior is where the left side
is smaller.  A frame is non-scalable exactly when some such cone holds
all of its vectors in the interior, and a zero-trace certificate ``Y``
yields one by diagonalization.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCertificate
from .linalg import Frame, is_orthogonal, jacobi_eigen
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "ConeRegion",
    "QuadricCone",
    "cone_from_certificate",
    "classify",
    "quadric_value",
    "verify_geometric_characterization",
    "quadrant_cone_2d",
    "rotate_cone",
    "sample_surface",
]


class ConeRegion(enum.Enum):
    INTERIOR = "interior"
    SURFACE = "surface"
    EXTERIOR = "exterior"


@dataclass(frozen=True, eq=False)
class QuadricCone:
    basis: np.ndarray
    coefficients: np.ndarray

    def __init__(self, basis, coefficients, tol: Tolerances = DEFAULT):
        basis = np.array(basis, dtype=float)
        coeffs = np.atleast_1d(np.array(coefficients, dtype=float))
        n = basis.shape[0]
        if basis.shape != (n, n) or n < 2 or coeffs.shape != (n - 1,):
            raise ValueError("need an N x N basis and N-1 coefficients, N >= 2")
        if not is_orthogonal(basis, tol.orthogonality):
            raise ValueError("cone basis is not orthonormal")
        if abs(coeffs.sum() - 1.0) > 1e-12:
            raise ValueError(f"coefficients sum to {coeffs.sum()!r}, expected 1")
        if np.abs(coeffs).min() < tol.coefficient_floor:
            raise ValueError("cone coefficients must be nonzero")
        basis.setflags(write=False)
        coeffs.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def axis(self) -> np.ndarray:
        return self.basis[:, -1]

    @property
    def elliptical(self) -> bool:
        return bool(np.all(self.coefficients > 0))

    def matrix(self) -> np.ndarray:
        """Symmetric ``Q`` with ``x^T Q x = <x,e_N>^2 - sum a_k <x,e_k>^2``."""
        d = np.append(-self.coefficients, 1.0)
        return (self.basis * d) @ self.basis.T

    def __repr__(self) -> str:
        return f"QuadricCone(N={self.dim}, coefficients={self.coefficients.tolist()})"


def quadric_value(cone: QuadricCone, x) -> np.ndarray | float:
    """``g(x) = <x,e_N>^2 - sum_k a_k <x,e_k>^2`` (vectorized over rows)."""
    coords = np.asarray(x, dtype=float) @ cone.basis
    g = coords[..., -1] ** 2 - coords[..., :-1] ** 2 @ cone.coefficients
    return g


def classify(cone: QuadricCone, x, tol: Tolerances = DEFAULT) -> ConeRegion:
    x = np.asarray(x, dtype=float)
    if x.shape != (cone.dim,):
        raise ValueError("point dimension does not match the cone")
    g = quadric_value(cone, x)
    band = tol.surface_band * float(x @ x)
    if g > band:
        return ConeRegion.INTERIOR
    if g < -band:
        return ConeRegion.EXTERIOR
    return ConeRegion.SURFACE


def verify_geometric_characterization(frame: Frame, cone: QuadricCone,
                                      tol: Tolerances = DEFAULT) -> bool:
    """True iff every frame vector lies in the open interior of ``cone``."""
    if frame.dim != cone.dim:
        return False
    return all(classify(cone, phi, tol) is ConeRegion.INTERIOR for phi in frame)


def cone_from_certificate(cert, frame: Frame | None = None,
                          tol: Tolerances = DEFAULT) -> QuadricCone:
    """Build the cone whose interior is ``{x : x^T Y x > 0}`` for zero-trace ``Y``.

    Zero eigenvalues of ``Y`` are nudged to ``+-eps`` in pairs so the trace
    stays zero.  When ``frame`` is given, ``eps`` must stay below half of
    ``min_j phi_j^T Y phi_j / ||phi_j||^2`` so that no frame vector can
    change side; otherwise :class:`DegenerateCertificate` is raised.
    """
    y = np.asarray(getattr(cert, "Y", cert), dtype=float)
    y = 0.5 * (y + y.T)
    scale = np.linalg.norm(y)
    if scale == 0 or abs(np.trace(y)) > 1e-12 * max(scale, 1.0):
        raise DegenerateCertificate("expected a nonzero trace-zero matrix")
    dec = jacobi_eigen(y / scale, tol)
    d, u = dec.eigenvalues.copy(), dec.eigenvectors.copy()
    floor = tol.coefficient_floor
    if np.abs(d).max() <= floor:
        raise DegenerateCertificate("all eigenvalues vanish")

    top = int(np.argmax(d))
    small = np.flatnonzero(np.abs(d) < 2.0 * floor * d[top])
    if small.size:
        eps = 4.0 * floor * d[top]
        before = d.copy()
        d[small] = eps * np.resize([1.0, -1.0], small.size)
        d[top] -= d.sum() - before.sum()
        if frame is not None:
            values = np.einsum("ji,ik,jk->j", frame.vectors, y / scale, frame.vectors)
            budget = 0.5 * float(np.min(values / frame.norms() ** 2))
            if not np.abs(d - before).max() < budget:
                raise DegenerateCertificate("no room to perturb zero eigenvalues")

    order = [i for i in range(d.size) if i != top] + [top]
    d, u = d[order], u[:, order]
    d[-1] = -d[:-1].sum()
    return QuadricCone(u, -d[:-1] / d[-1], tol)


def rotate_cone(cone: QuadricCone, u, tol: Tolerances = DEFAULT) -> QuadricCone:
    """The cone ``U C``: ``classify(rotate_cone(C, U), U x) == classify(C, x)``."""
    return QuadricCone(np.asarray(u, dtype=float) @ cone.basis, cone.coefficients, tol)


def quadrant_cone_2d(angle: float, tol: Tolerances = DEFAULT) -> QuadricCone:
    """The planar cone with ``a_1 = 1`` and basis rotated by ``angle``.

    Its surface is the pair of orthogonal lines at ``angle +- pi/4``; the
    interior is the open quadrant around ``e_2`` rotated by ``angle``.
    """
    c, s = math.cos(angle), math.sin(angle)
    return QuadricCone([[c, -s], [s, c]], [1.0], tol)


def sample_surface(cone: QuadricCone, resolution: int) -> np.ndarray:
    """Points on the cone surface, one per row.

    ``N = 2``: the four unit ray directions scaled by ``i / resolution``
    for ``i = 1..resolution``.  ``N = 3``: rings at heights ``h`` in
    ``[-1, 1]`` along the axis; for elliptical cones the ring at ``|h| = 1``
    includes the four points whose basis coordinates are ``(+-1, +-1, h)``.
    Hyperbolic cones are sampled along directions in the ``e_1, e_2``
    plane where the quadric has a real solution.
    """
    if resolution < 1:
        raise ValueError("resolution must be a positive integer")
    n = cone.dim
    if n == 2:
        e1, e2 = cone.basis[:, 0], cone.basis[:, 1]
        rays = np.array([e2 + e1, e2 - e1, -e2 - e1, -e2 + e1]) / math.sqrt(2.0)
        radii = np.arange(1, resolution + 1) / resolution
        return (radii[:, None, None] * rays[None]).reshape(-1, 2)
    if n != 3:
        raise ValueError(f"surface sampling supports N in {{2, 3}}, got {n}")

    a1, a2 = cone.coefficients
    uniform = np.linspace(0.0, 2.0 * np.pi, 4 * resolution, endpoint=False)
    heights = np.linspace(-1.0, 1.0, 2 * resolution + 1)
    heights = heights[heights != 0.0]
    points = []
    if cone.elliptical:
        corner = math.atan2(math.sqrt(a2), math.sqrt(a1))
        angles = np.concatenate([uniform, [corner, np.pi - corner, np.pi + corner, -corner]])
        ring = np.stack([np.cos(angles) / math.sqrt(a1), np.sin(angles) / math.sqrt(a2),
                         np.ones_like(angles)], axis=1)
        for h in heights:
            points.append(h * ring)
    else:
        q = a1 * np.cos(uniform) ** 2 + a2 * np.sin(uniform) ** 2
        ok = q >= 0
        base = np.stack([np.cos(uniform[ok]), np.sin(uniform[ok]), np.sqrt(q[ok])], axis=1)
        for h in heights:
            points.append(h * base)
            points.append(h * base * np.array([1.0, 1.0, -1.0]))
    coords = np.concatenate(points)
    return coords @ cone.basis.T
