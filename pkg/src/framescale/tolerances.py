"""Numerical tolerances shared by every module.

All thresholds live in one frozen record so tests and the command line
agree on a single source of truth.  ``DEFAULT`` is what the library uses
unless a caller passes something else; ``STRICT`` tightens the
verification thresholds for well-conditioned inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    zero: float = 1e-12                 # absolute floor on vector norms
    eig: float = 1e-12                  # Jacobi off-diagonal stop, relative to ||S||_F
    parseval: float = 1e-9              # ||sum c_j^2 phi_j phi_j^T - I||_F
    rank: float = 1e-10                 # smallest eigenvalue relative to the largest
    orthogonality: float = 1e-10        # ||U^T U - I||_F
    feasibility: float = 1e-10          # phase-1 optimum relative to ||b||
    pivot: float = 1e-11                # simplex pivot / reduced-cost threshold
    basis_condition: float = 1e12       # condition estimate of the final LP basis
    strict_floor: float = 1e-10         # smallest LP margin counted as strict
    certificate_margin: float = 1e-8    # required -trace (or min form value) at ||Y||_F = 1
    certificate_slack: float = 1e-10    # allowed negative form value at ||Y||_F = 1
    gram: float = 1e-10                 # relative zero test for inner products
    nplus1: float = 1e-10               # relative agreement of the N+1 constants
    extension: float = 1e-9             # coupling Gram off-diagonal
    coefficient_floor: float = 1e-10    # min |a_k| of a quadric cone
    surface_band: float = 1e-10         # |g(x)| <= band * ||x||^2 counts as Surface
    max_sweeps: int = 64                # Jacobi sweeps before giving up
    max_pivots: int = 10_000            # simplex cycle guard

    def with_overrides(self, **kwargs) -> "Tolerances":
        return replace(self, **kwargs)


DEFAULT = Tolerances()

STRICT = Tolerances(
    parseval=1e-11,
    certificate_slack=1e-12,
    extension=1e-11,
    feasibility=1e-12,
)

PROFILES = {"default": DEFAULT, "strict": STRICT}
