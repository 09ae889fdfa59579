from unittest import TestCase

import numpy as np

from fractal_approximator.collage_fit import fit
from fractal_approximator.collage_fit import gram_matrix
from fractal_approximator.fif import EvalConfig
from fractal_approximator.fif import cardinal_basis
from fractal_approximator.fif import combine
from fractal_approximator.fif import sample_fixed_point
from fractal_approximator.geometry import ScaleVector
from fractal_approximator.geometry import build_partition
from fractal_approximator.oracle import dense_sampled_lsq
from fractal_approximator.oracle import hat_function
from fractal_approximator.oracle import hat_mass_matrix
from fractal_approximator.oracle import hat_projection
from fractal_approximator.oracle import l2_error
from fractal_approximator.quadrature import QuadConfig


class TestHatProjection(TestCase):
    def test_mass_matrix(self):
        p = build_partition(0, 1, n=2)
        expected = [[1 / 6, 1 / 12, 0], [1 / 12, 1 / 3, 1 / 12], [0, 1 / 12, 1 / 6]]
        np.testing.assert_allclose(hat_mass_matrix(p), expected, rtol=0, atol=1e-15)

    def test_mass_matrix_is_zero_scale_collage_matrix(self):
        p = build_partition(0, 1, nodes=[0, 0.2, 0.45, 1])
        basis = cardinal_basis(p, ScaleVector.broadcast(0.0, 3))
        np.testing.assert_allclose(gram_matrix(basis), hat_mass_matrix(p), rtol=0, atol=1e-14)

    def test_hat_functions_project_onto_themselves(self):
        p = build_partition(-1, 2, n=5)
        for j in range(6):
            expected = np.zeros(6)
            expected[j] = 1.0
            np.testing.assert_allclose(hat_projection(hat_function(p, j), p, QuadConfig()), expected, rtol=0,
                                       atol=1e-12)

    def test_linear_function(self):
        p = build_partition(0, 2, nodes=[0, 0.5, 1.2, 2])
        np.testing.assert_allclose(hat_projection(lambda x: x, p, QuadConfig(2, 3)), p.nodes, rtol=0, atol=1e-13)

    def test_hat_function_values(self):
        p = build_partition(0, 1, n=4)
        hat = hat_function(p, 1)
        np.testing.assert_allclose(hat(np.array([0.0, 0.125, 0.25, 0.375, 0.5, 1.0])),
                                   [0.0, 0.5, 1.0, 0.5, 0.0, 0.0])


class TestDenseSampledLsq(TestCase):
    def test_zero_scales_match_projection(self):
        p = build_partition(0, 1, n=4)
        basis = cardinal_basis(p, ScaleVector.broadcast(0.0, 4))
        alpha = dense_sampled_lsq(np.square, basis, 65537, EvalConfig(depth=7))
        np.testing.assert_allclose(alpha, hat_projection(np.square, p, QuadConfig()), rtol=0, atol=1e-6)

    def test_recovers_exact_fractal(self):
        rng = np.random.default_rng(30)
        p = build_partition(0, 1, n=4)
        scales = ScaleVector([0.4, -0.3, 0.5, 0.2])
        basis = cardinal_basis(p, scales)
        alpha = rng.normal(size=5)
        # on the address grid of depth 2 the interpolated samples are the fractal itself
        xs, fs = sample_fixed_point(combine(basis, alpha), scales, p, 2)
        recovered = dense_sampled_lsq(lambda x: np.interp(x, xs, fs), basis, 50, EvalConfig(depth=2))
        np.testing.assert_allclose(recovered, alpha, rtol=0, atol=1e-10)

    def test_constant(self):
        p = build_partition(0, 1, n=3)
        basis = cardinal_basis(p, ScaleVector.broadcast(0.6, 3))
        alpha = dense_sampled_lsq(np.ones_like, basis, 200, EvalConfig(depth=4))
        np.testing.assert_allclose(alpha, np.ones(4), rtol=0, atol=1e-10)

    def test_collage_fit_is_not_better_than_sampled_lsq(self):
        p = build_partition(0, 1, n=4)
        scales = ScaleVector.broadcast(0.3, 4)
        basis = cardinal_basis(p, scales)
        lsq = dense_sampled_lsq(np.sin, basis, 4097, EvalConfig(depth=5))
        collage = fit(np.sin, p, scales, eval_cfg=EvalConfig(depth=5))
        lsq_error = l2_error(np.sin, combine(basis, lsq), scales, p, 5)
        collage_error = l2_error(np.sin, collage.lambda_vector, scales, p, 5)
        self.assertGreaterEqual(collage_error, lsq_error - 1e-8)
        # both errors are bounded by the collage certificate
        self.assertLessEqual(collage_error, collage.collage_bound + 1e-8)

    def test_errors(self):
        basis = cardinal_basis(build_partition(0, 1, n=4), ScaleVector.broadcast(0.2, 4))
        # grid smaller than 10 (N+1)
        self.assertRaises(ValueError, dense_sampled_lsq, np.sin, basis, 49, EvalConfig(depth=6))
        # needs depth 3 (257 points) but only depth 2 is allowed
        self.assertRaises(ValueError, dense_sampled_lsq, np.sin, basis, 200, EvalConfig(depth=2))


class TestL2Error(TestCase):
    def test_linear_fractal_is_exact(self):
        p = build_partition(0, 1, n=3)
        scales = ScaleVector.broadcast(0.5, 3)
        lam = combine(cardinal_basis(p, scales), p.nodes)
        self.assertLess(l2_error(lambda x: x, lam, scales, p, 3), 1e-14)

    def test_constant_offset(self):
        p = build_partition(0, 2, n=2)
        scales = ScaleVector.broadcast(0.0, 2)
        lam = combine(cardinal_basis(p, scales), np.zeros(3))
        # ||1|| on [0, 2]
        self.assertAlmostEqual(l2_error(np.ones_like, lam, scales, p, 2), np.sqrt(2.0), places=14)
