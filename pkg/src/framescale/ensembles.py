"""Reproducible random frames.

All randomness goes through :class:`SplitMix64` so that a seed pins every
ensemble bit-for-bit, independent of numpy's generator internals.

SplitMix64 (Steele, Lea, Flood 2014), state ``s`` (uint64)::

    s += 0x9E3779B97F4A7C15
    z = s
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

Uniform doubles use the top 53 bits: ``(z >> 11) * 2**-53``.  Normals use
Box-Muller, one variate per pair of uniforms (the sine branch is dropped):
``sqrt(-2 ln(1 - u1)) * cos(2 pi u2)``.  Integers in ``[lo, hi]`` use
``lo + z % (hi - lo + 1)``.
"""
from __future__ import annotations

import math

import numpy as np

from .linalg import Frame

__all__ = [
    "SplitMix64",
    "DISTRIBUTIONS",
    "random_orthogonal",
    "random_frame",
    "strictly_scalable_frame",
    "basis_plus_frame",
    "perturb_frame",
    "mixed_ensemble",
]

_MASK = (1 << 64) - 1

DISTRIBUTIONS = ("sphere", "gauss", "orthonormal")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53

    def normal(self) -> float:
        u1, u2 = self.uniform(), self.uniform()
        return math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)

    def integers(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        return lo + self.next_u64() % (hi - lo + 1)

    def uniforms(self, shape) -> np.ndarray:
        size = int(np.prod(shape))
        return np.array([self.uniform() for _ in range(size)]).reshape(shape)

    def normals(self, shape) -> np.ndarray:
        size = int(np.prod(shape))
        return np.array([self.normal() for _ in range(size)]).reshape(shape)

    def spawn(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


def random_orthogonal(rng: SplitMix64, n: int) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian, signs fixed)."""
    q, r = np.linalg.qr(rng.normals((n, n)))
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def random_frame(rng: SplitMix64, n: int, m: int, dist: str = "sphere") -> Frame:
    """``m`` random vectors in ``R^n``.

    ``sphere``: uniform on the unit sphere.  ``gauss``: standard normal.
    ``orthonormal``: rows of an ``m x n`` matrix with orthonormal columns,
    i.e. a random Parseval frame (an orthonormal basis when ``m == n``).
    """
    if dist == "sphere":
        g = rng.normals((m, n))
        return Frame(g / np.linalg.norm(g, axis=1, keepdims=True))
    if dist == "gauss":
        return Frame(rng.normals((m, n)))
    if dist == "orthonormal":
        return Frame(random_orthogonal(rng, m)[:, :n])
    raise ValueError(f"unknown distribution {dist!r}; expected one of {DISTRIBUTIONS}")


def strictly_scalable_frame(rng: SplitMix64, n: int, m: int) -> tuple[Frame, np.ndarray]:
    """A random Parseval frame with row ``j`` divided by ``c_j in [0.5, 2]``.

    Returns the frame together with the planted weights ``c``.
    """
    t = random_orthogonal(rng, m)[:, :n]
    c = 0.5 + 1.5 * rng.uniforms(m)
    return Frame(t / c[:, None]), c


def basis_plus_frame(rng: SplitMix64, n: int, m: int) -> Frame:
    """A rotated orthonormal basis followed by ``m - n`` random unit vectors,
    every row rescaled by a factor in ``[0.5, 2]``.  Always scalable (weight
    zero on the extras); for ``m == n + 1`` generically not strictly."""
    u = random_orthogonal(rng, n)
    extra = rng.normals((m - n, n))
    extra /= np.linalg.norm(extra, axis=1, keepdims=True)
    rows = np.vstack([u.T, extra])
    return Frame(rows * (0.5 + 1.5 * rng.uniforms(m))[:, None])


def perturb_frame(rng: SplitMix64, frame: Frame, epsilon: float) -> np.ndarray:
    """Each vector moved by a uniform draw from the open ball of radius ``epsilon``.

    Returns a raw array: a large perturbation may produce a zero vector.
    """
    m, n = frame.count, frame.dim
    out = frame.vectors.copy()
    if epsilon == 0:
        return out
    for j in range(m):
        d = rng.normals(n)
        d /= np.linalg.norm(d)
        out[j] += epsilon * rng.uniform() ** (1.0 / n) * d
    return out


def mixed_ensemble(seed: int, trials: int, dims=(2, 3, 4), counts=None):
    """Yield ``(family, frame)`` pairs for property tests.

    ``n`` is drawn from ``dims`` and ``m`` uniformly from the closed range
    ``counts(n)``, by default ``(n, 2n + 2)``.  Families cycle per trial:
    two of every four are sphere frames, one is strictly scalable by
    construction and one contains an orthonormal basis.
    """
    rng = SplitMix64(seed)
    counts = counts or (lambda n: (n, 2 * n + 2))
    for trial in range(trials):
        n = dims[rng.integers(0, len(dims) - 1)]
        m = rng.integers(*counts(n))
        kind = trial % 4
        if kind in (0, 1):
            yield "sphere", random_frame(rng, n, m, "sphere")
        elif kind == 2:
            yield "strict", strictly_scalable_frame(rng, n, m)[0]
        else:
            yield "basis-plus", basis_plus_frame(rng, n, m)
