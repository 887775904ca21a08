"""Scalability of finite frames in R^N.

Decide whether the vectors of a frame can be rescaled into a Parseval
frame, and when they cannot, produce a checkable certificate and the
quadric cone that holds every frame vector.
"""
from .errors import (
    ConvergenceError,
    DegenerateCertificate,
    FrameError,
    FramescaleError,
    InvalidCertificate,
    NotAFrameError,
    NumericalFailure,
)
from .extension import ExtensionResult, extend_to_orthogonal_basis, verify_extension
from .fast_tests import NPlusOneReport, nplus1_test, orthogonal_index_set, quadrant_cone_test_2d
from .geometry import (
    ConeRegion,
    QuadricCone,
    classify,
    cone_from_certificate,
    quadrant_cone_2d,
    rotate_cone,
    sample_surface,
    verify_geometric_characterization,
)
from .linalg import (
    Frame,
    SpectralDecomposition,
    analysis_matrix,
    apply_unitary,
    canonical_parseval,
    frame_bounds,
    frame_operator,
    is_frame,
    jacobi_eigen,
)
from .nnls import nnls_oracle
from .scaling import (
    Certificate,
    NotScalable,
    Scalable,
    ScalingOutcome,
    StrictScalingResult,
    Weights,
    build_feasibility_system,
    certificate_to_zero_trace,
    solve_scaling,
    solve_strict_scaling,
    verify_certificate,
    verify_weights,
)
from .tolerances import DEFAULT, STRICT, Tolerances

__version__ = "0.1.0"
