"""Two-phase tableau simplex for standard-form LPs ``min c.x, Ax = b, x >= 0``.

Bland's smallest-index rule is used for both the entering and the
leaving variable, so the method cannot cycle.  When phase 1 ends with a
positive optimum the dual vector of the phase-1 problem is returned as a
Farkas certificate ``y`` with ``b.y < 0`` and ``A^T y >= 0``.

Final primal and dual values are recomputed from the original data by
solving with the terminal basis, rather than read off the tableau.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure
from .tolerances import DEFAULT, Tolerances

__all__ = ["LPResult", "linprog_standard"]


@dataclass(frozen=True)
class LPResult:
    status: str                     # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    objective: float | None
    phase1_objective: float
    farkas: np.ndarray | None       # only when infeasible
    basis: tuple[int, ...]
    pivots: int


def _pivot(t: np.ndarray, row: int, col: int) -> None:
    t[row] /= t[row, col]
    factors = t[:, col].copy()
    factors[row] = 0.0
    t -= np.outer(factors, t[row])
    t[:, col] = 0.0
    t[row, col] = 1.0


def _iterate(t, basis, ncols, tol: Tolerances, budget: int) -> tuple[str, int]:
    """Run Bland pivots on tableau ``t`` over columns ``[0, ncols)``."""
    used = 0
    while True:
        reduced = t[-1, :ncols]
        candidates = np.flatnonzero(reduced < -tol.pivot)
        if candidates.size == 0:
            return "optimal", used
        col = int(candidates[0])
        column = t[:-1, col]
        rows = np.flatnonzero(column > tol.pivot)
        if rows.size == 0:
            return "unbounded", used
        ratios = t[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-14 * max(1.0, abs(best))]
        row = int(min(ties, key=lambda r: basis[r]))
        if used >= budget:
            raise NumericalFailure(f"simplex cycle guard exhausted after {used} pivots")
        _pivot(t, row, col)
        basis[row] = col
        used += 1


def _checked_solve(b_mat: np.ndarray, rhs: np.ndarray, tol: Tolerances) -> np.ndarray:
    if b_mat.size and np.linalg.cond(b_mat) > tol.basis_condition:
        raise NumericalFailure("ill-conditioned simplex basis")
    return np.linalg.solve(b_mat, rhs) if b_mat.size else np.zeros(0)


def linprog_standard(a, b, c=None, tol: Tolerances = DEFAULT) -> LPResult:
    """Solve ``min c.x`` subject to ``a x = b``, ``x >= 0``.

    With ``c=None`` only feasibility is decided (phase 1).

    Returns
    -------
    LPResult
        ``status == "infeasible"`` carries ``farkas``: a vector ``y`` with
        ``b.y < 0`` and ``a^T y >= 0`` (up to roundoff).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = a.shape
    signs = np.where(b < 0, -1.0, 1.0)
    a1 = a * signs[:, None]
    b1 = b * signs
    scale = np.linalg.norm(a1, axis=0)
    scale[scale == 0] = 1.0
    a_s = a1 / scale

    t = np.zeros((m + 1, n + m + 1))
    t[:m, :n] = a_s
    t[:m, n:n + m] = np.eye(m)
    t[:m, -1] = b1
    t[m, :n] = -a_s.sum(axis=0)
    t[m, -1] = -b1.sum()
    basis = list(range(n, n + m))

    status, pivots = _iterate(t, basis, n + m, tol, tol.max_pivots)
    full = np.hstack([a_s, np.eye(m)])
    b_mat = full[:, basis]
    x_b = _checked_solve(b_mat, b1, tol)
    c_b = np.array([1.0 if j >= n else 0.0 for j in basis])
    w = float(max(c_b @ x_b, 0.0))

    if w > tol.feasibility * max(np.linalg.norm(b), 1.0):
        u = _checked_solve(b_mat.T, c_b, tol)
        y = -signs * u
        return LPResult("infeasible", None, None, w, y, tuple(basis), pivots)

    # drive zero-level artificials out; rows where that is impossible are redundant
    keep = []
    for i in range(m):
        if basis[i] >= n:
            row = t[i, :n].copy()
            row[[j for j in basis if j < n]] = 0.0
            j = int(np.argmax(np.abs(row)))
            if abs(row[j]) > tol.pivot:
                _pivot(t, i, j)
                basis[i] = j
                pivots += 1
            else:
                continue
        keep.append(i)
    t = np.vstack([t[keep][:, list(range(n)) + [n + m]], t[-1:, list(range(n)) + [n + m]]])
    basis = [basis[i] for i in keep]
    rows_kept = np.array(keep, dtype=int)

    if c is not None:
        cs = np.asarray(c, dtype=float) / scale
        t[-1] = 0.0
        t[-1, :n] = cs
        for i, j in enumerate(basis):
            t[-1] -= cs[j] * t[i]
        status, used = _iterate(t, basis, n, tol, tol.max_pivots - pivots)
        pivots += used
        if status == "unbounded":
            return LPResult("unbounded", None, None, w, None, tuple(basis), pivots)

    x_s = np.zeros(n)
    if basis:
        x_s[basis] = _checked_solve(a_s[np.ix_(rows_kept, basis)], b1[rows_kept], tol)
    if x_s.min(initial=0.0) < -1e-8 * max(1.0, np.abs(x_s).max()):
        raise NumericalFailure("simplex returned a significantly negative basic variable")
    x = np.clip(x_s, 0.0, None) / scale
    objective = None if c is None else float(np.asarray(c, dtype=float) @ x)
    return LPResult("optimal", x, objective, w, None, tuple(basis), pivots)
