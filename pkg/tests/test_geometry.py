import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framescale import (
    ConeRegion,
    DegenerateCertificate,
    Frame,
    QuadricCone,
    certificate_to_zero_trace,
    classify,
    cone_from_certificate,
    is_frame,
    quadrant_cone_2d,
    rotate_cone,
    sample_surface,
    solve_scaling,
    verify_geometric_characterization,
)
from framescale.ensembles import SplitMix64, random_frame, random_orthogonal
from framescale.geometry import quadric_value

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])
X2_CONE = QuadricCone(np.eye(2), [1.0])  # {x1^2 = x2^2}, interior around e2


def _on_surface(cone, points, rel=1e-9):
    g = quadric_value(cone, points)
    return np.all(np.abs(g) <= rel * np.einsum("ij,ij->i", points, points))


class TestQuadricCone:
    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            QuadricCone(np.eye(2), [0.5])
        with pytest.raises(ValueError):
            QuadricCone([[1.0, 0.1], [0.0, 1.0]], [1.0])
        with pytest.raises(ValueError):
            QuadricCone(np.eye(3), [1.0, 0.0])

    def test_matrix(self):
        c = QuadricCone(np.eye(3), [0.25, 0.75])
        np.testing.assert_allclose(c.matrix(), np.diag([-0.25, -0.75, 1.0]))
        assert np.trace(c.matrix()) == pytest.approx(0.0)


class TestClassify:
    def test_axis_is_interior(self):
        assert classify(X2_CONE, [0.0, 1.0]) is ConeRegion.INTERIOR

    def test_other_axis_is_exterior(self):
        assert classify(X2_CONE, [1.0, 0.0]) is ConeRegion.EXTERIOR

    def test_diagonal_is_surface(self):
        assert classify(X2_CONE, [1.0, 1.0]) is ConeRegion.SURFACE

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            classify(X2_CONE, [1.0, 0.0, 0.0])

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 2**32), st.integers(2, 5), st.floats(1e-3, 1e3))
    def test_symmetry_and_scale(self, seed, n, lam):
        rng = SplitMix64(seed)
        a = rng.uniforms(n - 1) + 0.1
        cone = QuadricCone(random_orthogonal(rng, n), a / a.sum())
        x = rng.normals(n)
        region = classify(cone, x)
        assert classify(cone, -x) is region
        assert classify(cone, lam * x) is region

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 2**32), st.integers(2, 5))
    def test_unitary_transport(self, seed, n):
        rng = SplitMix64(seed)
        a = rng.uniforms(n - 1) - 0.3
        if np.abs(a).min() < 1e-3 or abs(a.sum()) < 1e-2:
            return
        cone = QuadricCone(random_orthogonal(rng, n), a / a.sum())
        u = random_orthogonal(rng, n)
        x = rng.normals(n)
        g = quadric_value(cone, x)
        if abs(g) <= 1e-8 * (x @ x):
            return  # too close to the surface for roundoff-free comparison
        assert classify(rotate_cone(cone, u), u @ x) is classify(cone, x)


class TestConeFromCertificate:
    def test_skew_certificate(self, skew_basis):
        y = np.array([[0.5, 1.0], [1.0, -0.5]])
        w, _ = np.linalg.eigh(y)
        np.testing.assert_allclose(w, [-math.sqrt(5) / 2, math.sqrt(5) / 2])
        cone = cone_from_certificate(y, skew_basis)
        np.testing.assert_allclose(cone.coefficients, [1.0])
        assert verify_geometric_characterization(skew_basis, cone)

    def test_diagonal_2d(self):
        cone = cone_from_certificate(np.diag([1.0, -1.0]))
        np.testing.assert_allclose(cone.coefficients, [1.0])
        np.testing.assert_allclose(np.abs(cone.basis), SWAP)
        assert classify(cone, [1.0, 0.0]) is ConeRegion.INTERIOR
        assert classify(cone, [0.0, 1.0]) is ConeRegion.EXTERIOR

    def test_diagonal_3d(self):
        y = np.diag([-1.0, -1.0, 2.0]) / math.sqrt(6)
        cone = cone_from_certificate(y)
        np.testing.assert_allclose(cone.coefficients, [0.5, 0.5])
        np.testing.assert_allclose(np.abs(cone.axis), [0, 0, 1])

    def test_interior_matches_form_sign(self):
        rng = SplitMix64(8)
        for _ in range(50):
            y = rng.normals((3, 3))
            y = y + y.T
            y -= np.trace(y) / 3 * np.eye(3)
            cone = cone_from_certificate(y)
            for x in rng.normals((20, 3)):
                v = x @ y @ x
                if abs(v) > 1e-8 * np.linalg.norm(y) * (x @ x):
                    want = ConeRegion.INTERIOR if v > 0 else ConeRegion.EXTERIOR
                    assert classify(cone, x) is want

    def test_zero_eigenvalue_is_nudged(self):
        # Y = diag(1, 0, -1): tr 0, middle eigenvalue zero
        frame = Frame([[1.0, 0.0, 0.1], [1.0, 0.2, 0.0]])
        cone = cone_from_certificate(np.diag([1.0, 0.0, -1.0]), frame)
        assert np.abs(cone.coefficients).min() > 0
        assert verify_geometric_characterization(frame, cone)

    def test_degenerate(self):
        with pytest.raises(DegenerateCertificate):
            cone_from_certificate(np.zeros((2, 2)))
        with pytest.raises(DegenerateCertificate):
            cone_from_certificate(np.eye(2))

    def test_exterior_via_negated_certificate(self, skew_basis):
        y = np.array([[0.5, 1.0], [1.0, -0.5]])
        cone = cone_from_certificate(-y)
        for phi in skew_basis:
            assert classify(cone, phi) is ConeRegion.EXTERIOR

    def test_round_trip_on_ensemble(self, small_ensemble):
        for _, f in small_ensemble:
            out = solve_scaling(f)
            if out.scalable:
                continue
            shifted = certificate_to_zero_trace(f, out.certificate)
            assert verify_geometric_characterization(f, cone_from_certificate(shifted, f))


class TestCharacterizationContract:
    def test_skew_basis_derived_cone(self, skew_basis):
        shifted = certificate_to_zero_trace(skew_basis, solve_scaling(skew_basis).certificate)
        assert verify_geometric_characterization(skew_basis,
                                                 cone_from_certificate(shifted, skew_basis))

    def test_mercedes_never_inside(self, mercedes):
        for angle in np.linspace(0, np.pi, 721):
            assert not verify_geometric_characterization(mercedes, quadrant_cone_2d(angle))

    def test_standard_basis(self):
        assert not verify_geometric_characterization(Frame(np.eye(2)), X2_CONE)

    def test_converse_adversarial(self):
        # hand-built frames placed strictly inside a cone must be non-scalable
        rng = SplitMix64(21)
        for _ in range(40):
            n = 2 + rng.integers(0, 1)
            a = rng.uniforms(n - 1) + 0.2
            cone = QuadricCone(random_orthogonal(rng, n), a / a.sum())
            inside = [x for x in rng.normals((400, n))
                      if quadric_value(cone, x) > 0.05 * (x @ x)]
            f = Frame(np.array(inside[: n + 4]))
            if not is_frame(f):
                continue
            assert verify_geometric_characterization(f, cone)
            assert not solve_scaling(f).scalable


class TestQuadrantCone:
    def test_angle_zero(self):
        cone = quadrant_cone_2d(0.0)
        diag = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
        assert all(classify(cone, x) is ConeRegion.SURFACE for x in diag)

    def test_quarter_turn(self):
        cone = quadrant_cone_2d(math.pi / 4)
        assert classify(cone, [1.0, 0.0]) is ConeRegion.SURFACE
        assert classify(cone, [0.0, 1.0]) is ConeRegion.SURFACE

    def test_period(self):
        rng = SplitMix64(2)
        a, b = quadrant_cone_2d(0.3), quadrant_cone_2d(0.3 + math.pi)
        for x in rng.normals((50, 2)):
            assert classify(a, x) is classify(b, x)


class TestSampleSurface:
    def test_circular_3d(self):
        cone = QuadricCone(np.eye(3), [0.5, 0.5])
        pts = sample_surface(cone, 4)
        assert len(pts) > 0
        lhs = (pts[:, 0] ** 2 + pts[:, 1] ** 2) / 2
        np.testing.assert_allclose(lhs, pts[:, 2] ** 2, atol=1e-12)

    @pytest.mark.parametrize("a", [0.5, 0.2, 0.9])
    def test_unit_cube_corners(self, a):
        cone = QuadricCone(np.eye(3), [a, 1 - a])
        pts = sample_surface(cone, 5)
        for corner in [(sx, sy, sz) for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)]:
            assert np.min(np.linalg.norm(pts - np.array(corner), axis=1)) <= 1e-12

    def test_quadrant_resolution_one(self):
        pts = sample_surface(quadrant_cone_2d(0.0), 1)
        expected = np.array([[1, 1], [-1, 1], [-1, -1], [1, -1]]) / math.sqrt(2)
        assert len(pts) == 4
        for p in expected:
            assert np.min(np.linalg.norm(pts - p, axis=1)) <= 1e-15

    def test_four_dimensions_unsupported(self):
        with pytest.raises(ValueError):
            sample_surface(QuadricCone(np.eye(4), [0.2, 0.3, 0.5]), 3)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32), st.integers(2, 3), st.integers(1, 12), st.booleans())
    def test_points_on_surface(self, seed, n, resolution, hyperbolic):
        rng = SplitMix64(seed)
        a = rng.uniforms(n - 1) + 0.05
        if hyperbolic and n == 3:
            a[0] = -a[0]
            if abs(a.sum()) < 0.05:
                return
        cone = QuadricCone(random_orthogonal(rng, n), a / a.sum())
        pts = sample_surface(cone, resolution)
        assert len(pts) > 0
        assert _on_surface(cone, pts)

    def test_cones_of_random_frames(self):
        rng = SplitMix64(31)
        for _ in range(30):
            f = random_frame(rng, 3, 4)
            out = solve_scaling(f)
            if out.scalable:
                continue
            cone = cone_from_certificate(certificate_to_zero_trace(f, out.certificate), f)
            assert _on_surface(cone, sample_surface(cone, 8))
