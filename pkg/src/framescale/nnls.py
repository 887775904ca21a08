"""Projected-gradient NNLS used as a solver-independent scalability oracle.

Minimizes ``||A x - b||^2`` over ``x >= 0`` for the same vectorized system
the simplex solves, with Barzilai-Borwein step lengths.  Objective near
zero means scalable.  This never touches the LP code path.

Gradient steps alone crawl towards solutions that sit on the boundary of
the orthant (frames that are scalable but not strictly), so every run ends
with a support polish: least squares restricted to the clearly positive
coordinates, accepted only if it stays nonnegative and lowers the objective.
"""
from __future__ import annotations

import numpy as np

from .linalg import Frame
from .scaling import build_feasibility_system

__all__ = ["nnls_oracle", "projected_gradient_nnls", "polish_support", "ORACLE_TOLERANCE"]

ORACLE_TOLERANCE = 1e-8


def projected_gradient_nnls(a, b, x0, max_iter: int = 50_000,
                            target: float = 1e-24, stationarity: float = 1e-12,
                            patience: int = 500, polish_every: int = 0):
    """Run projected BB gradient descent from ``x0``; return ``(best_x, best_obj)``.

    With ``polish_every > 0`` the best iterate is passed through
    :func:`polish_support` at that interval and the run stops as soon as
    the polished objective reaches ``target``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    lipschitz = 2.0 * np.linalg.norm(a, 2) ** 2
    step = 1.0 / lipschitz
    x = np.maximum(np.asarray(x0, dtype=float), 0.0)
    r = a @ x - b
    g = 2.0 * (a.T @ r)
    best_x, best = x, float(r @ r)
    stalled = 0
    for it in range(1, max_iter + 1):
        x_new = np.maximum(x - step * g, 0.0)
        r = a @ x_new - b
        obj = float(r @ r)
        g_new = 2.0 * (a.T @ r)
        if obj < best * (1 - 1e-12):
            stalled = 0
        else:
            stalled += 1
        if obj < best:
            best_x, best = x_new, obj
        if polish_every and it % polish_every == 0:
            px, pobj = polish_support(a, b, best_x, best)
            if pobj < best:
                best_x, best = px, pobj
        if best <= target or stalled >= patience:
            break
        pg = x_new - np.maximum(x_new - g_new, 0.0)
        if np.linalg.norm(pg) <= stationarity * max(1.0, np.linalg.norm(x_new)):
            break
        s = x_new - x
        y = g_new - g
        sy = float(s @ y)
        step = float(s @ s) / sy if sy > 0 else 1.0 / lipschitz
        step = min(max(step, 1e-3 / lipschitz), 1e6 / lipschitz)
        x, g = x_new, g_new
    return best_x, best


def polish_support(a, b, x, obj: float):
    """Least squares on ``{j : x_j > theta max x}`` for a ladder of ``theta``."""
    a = np.asarray(a, dtype=float)
    best_x, best = x, obj
    top = float(x.max()) if x.size else 0.0
    if top <= 0:
        return best_x, best
    for theta in 10.0 ** -np.arange(1, 9):
        support = np.flatnonzero(x > theta * top)
        sol, *_ = np.linalg.lstsq(a[:, support], b, rcond=None)
        if sol.min() < 0:
            continue
        cand = np.zeros_like(x)
        cand[support] = sol
        r = a @ cand - b
        value = float(r @ r)
        if value < best:
            best_x, best = cand, value
    return best_x, best


def nnls_oracle(frame: Frame, restarts: int = 10, max_iter: int = 50_000,
                seed: int = 0) -> tuple[np.ndarray, float]:
    """Best of ``restarts`` projected-gradient runs from random starts.

    Returns ``(x, objective)`` with ``x_j`` playing the role of ``c_j^2``.
    An objective at most ``ORACLE_TOLERANCE`` indicates a scalable frame.
    Remaining restarts are skipped once a run reaches an exact zero
    (objective ``<= 1e-24``).
    """
    a, b = build_feasibility_system(frame)
    rng = np.random.default_rng(seed)
    scale = frame.dim / max(float(np.sum(frame.norms() ** 2)), 1e-300)
    best_x, best = None, np.inf
    for _ in range(restarts):
        x0 = rng.uniform(0.0, 2.0 * scale, frame.count)
        x, obj = projected_gradient_nnls(a, b, x0, max_iter=max_iter, polish_every=200)
        x, obj = polish_support(a, b, x, obj)
        if obj < best:
            best_x, best = x, obj
        if best <= 1e-24:
            break
    return best_x, best
