""" Best fractal approximation by minimizing the collage residual

The collage objective

    phi(alpha) = sum_l a_l * int_a^b [s_l f(x) + sum_k alpha_k lambda_l^(k)(x) - f(u_l(x))]^2 dx

is quadratic in alpha. Its stationarity system A alpha = beta uses only the lambda-coefficients of the cardinal basis:

    A_kj   = sum_l a_l (lambda_l^(k), lambda_l^(j))
    beta_k = sum_l a_l [(lambda_l^(k), f o u_l) - s_l (f, lambda_l^(k))]
"""
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.linalg

from fractal_approximator.fif import AffinePolynomial
from fractal_approximator.fif import DEFAULT_MAX_POINTS
from fractal_approximator.fif import EvalConfig
from fractal_approximator.fif import address_point_count
from fractal_approximator.fif import cardinal_basis
from fractal_approximator.fif import combine
from fractal_approximator.fif import continuity_residuals
from fractal_approximator.fif import sample_fixed_point
from fractal_approximator.log import Log
from fractal_approximator.quadrature import QuadConfig
from fractal_approximator.quadrature import affine_gram
from fractal_approximator.quadrature import integrate
from fractal_approximator.quadrature import integrate_against
from fractal_approximator.quadrature import interpolant_l2_distance
from fractal_approximator.utils import round_significant

SINGULAR_TOLERANCE = 1e-12
SYMMETRY_TOLERANCE = 1e-13
RESIDUAL_TOLERANCE = 1e-10
CERTIFICATE_SLACK = 1e-8

_ONE = AffinePolynomial(1.0, 0.0)
_X = AffinePolynomial(0.0, 1.0)


class SingularSystemError(ArithmeticError):
    """Raised when the normal equations are singular to tolerance.

    Attributes:
        pivot (float): The smallest pivot of the factorization
    """

    def __init__(self, message, pivot):
        super().__init__(message)
        self.pivot = pivot


class CollageSystem(object):
    """The normal equations A alpha = beta of the collage objective.

    Args:
        matrix (numpy.ndarray): The (N+1) x (N+1) matrix A
        rhs (numpy.ndarray): The right-hand side beta

    Raises:
        ValueError: If the shapes do not match or A is not symmetric
    """

    def __init__(self, matrix, rhs):
        matrix = np.array(matrix, dtype=np.float64)
        rhs = np.array(rhs, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or rhs.shape != (matrix.shape[0],):
            raise ValueError("Expected a square matrix and a matching right-hand side, got {0} and {1}".format(
                matrix.shape, rhs.shape))
        scale = np.max(np.abs(matrix)) if matrix.size else 0.0
        if np.max(np.abs(matrix - matrix.T)) > SYMMETRY_TOLERANCE * scale:
            raise ValueError("Collage matrix is not symmetric")
        self.matrix = matrix
        self.rhs = rhs


class FitResult(object):
    """Outcome of a collage fit.

    Attributes:
        alpha (numpy.ndarray): Coefficients of the cardinal basis functions
        lambda_vector (LambdaVector): The lambda-vector sum_k alpha_k lambda^(k) of the approximant
        basis (CardinalBasis): The basis the fit was computed in
        collage_residual (float): ||f - T f|| in L2
        contraction (float): c = max |s_l|
        collage_bound (float): collage_residual / (1 - c), bounds ||f - f_alpha||
        measured_l2_error (float): ||f - f_alpha|| measured on exact address samples
        max_node_jump (float): Largest continuity residual of the approximant
        objective (float): phi(alpha) at the optimum
        quad (QuadConfig): Quadrature settings used
        depth (int): Address depth of the error measurement
    """

    def __init__(self, alpha, lambda_vector, basis, collage_residual, measured_l2_error, max_node_jump, objective,
                 quad, depth):
        self.alpha = alpha
        self.lambda_vector = lambda_vector
        self.basis = basis
        self.collage_residual = collage_residual
        self.contraction = basis.scales.contraction
        self.collage_bound = collage_residual / (1.0 - self.contraction)
        self.measured_l2_error = measured_l2_error
        self.max_node_jump = max_node_jump
        self.objective = objective
        self.quad = quad
        self.depth = depth

    def samples(self, max_points=DEFAULT_MAX_POINTS):
        """Exact samples (x, f_alpha(x)) of the approximant on the address grid of the measured depth."""
        return sample_fixed_point(self.lambda_vector, self.basis.scales, self.basis.partition, self.depth, max_points)

    def as_report(self, digits=12):
        """Returns the machine-readable report as a dict with numbers rounded to the given significant digits."""
        def r(value):
            return round_significant(value, digits)

        residual = r(self.collage_residual)
        contraction = r(self.contraction)
        return {
            'n': self.basis.partition.n,
            's': [r(s) for s in self.basis.scales],
            'contraction': contraction,
            'collage_residual': residual,
            'collage_bound': r(residual / (1.0 - contraction)),
            'measured_l2_error': r(self.measured_l2_error),
            'max_node_jump': r(self.max_node_jump),
            'objective': r(self.objective),
            'quad': {
                'panels': self.quad.panels_per_segment,
                'points': self.quad.points_per_panel,
            },
            'depth': self.depth,
        }


def _map_segments(func, n, threads):
    """Evaluates func(l) for all segments, keeping ascending segment order in the result."""
    if threads is None or threads <= 1:
        return [func(l) for l in range(n)]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, range(n)))


def gram_matrix(basis):
    """Assembles A_kj = sum_l a_l int_a^b lambda_l^(k) lambda_l^(j) exactly.

    Args:
        basis (CardinalBasis): The cardinal basis

    Returns:
        numpy.ndarray: The symmetric (N+1) x (N+1) matrix
    """
    p = basis.partition
    slopes = basis.maps.slopes
    matrix = np.zeros((len(basis), len(basis)))
    for l in range(p.n):
        matrix += slopes[l] * affine_gram(basis.constants[:, l], basis.slopes[:, l], p.a, p.b)
    Log.debug("Assembled {0}x{0} collage matrix".format(len(basis)))
    return matrix


def _composed(f, maps, l):
    return lambda x: f(maps.apply(l, x))


def rhs_vector(basis, f, cfg, threads=1):
    """Assembles beta_k = sum_l a_l [(lambda_l^(k), f o u_l) - s_l (f, lambda_l^(k))] by quadrature.

    Only the moments of f and f o u_l against 1 and x are integrated; beta follows from the lambda-coefficients.

    Args:
        basis (CardinalBasis): The cardinal basis
        f (callable): The target function on [a, b]
        cfg (QuadConfig): Quadrature settings
        threads (int): Maximum number of worker threads

    Returns:
        numpy.ndarray: The right-hand side beta

    Raises:
        IntegrandError: If the target cannot be evaluated
    """
    p = basis.partition
    maps = basis.maps
    s = basis.scales.values
    f0 = integrate_against(f, _ONE, p.a, p.b, cfg)
    f1 = integrate_against(f, _X, p.a, p.b, cfg)

    def moments(l):
        composed = _composed(f, maps, l)
        return integrate_against(composed, _ONE, p.a, p.b, cfg), integrate_against(composed, _X, p.a, p.b, cfg)

    rhs = np.zeros(len(basis))
    for l, (m0, m1) in enumerate(_map_segments(moments, p.n, threads)):
        c0 = basis.constants[:, l]
        c1 = basis.slopes[:, l]
        rhs += maps.slopes[l] * ((c0 * m0 + c1 * m1) - s[l] * (c0 * f0 + c1 * f1))
    return rhs


def solve_normal_equations(system):
    """Solves A alpha = beta by Cholesky factorization, falling back to pivoted LU if Cholesky breaks down.

    Args:
        system (CollageSystem): The normal equations

    Returns:
        numpy.ndarray: The coefficients alpha

    Raises:
        SingularSystemError: If the smallest pivot is below 1e-12 times the largest diagonal entry
    """
    matrix = system.matrix
    rhs = system.rhs
    scale = float(np.max(np.abs(np.diag(matrix))))
    if scale == 0.0:
        raise SingularSystemError("Collage matrix has a zero diagonal (smallest pivot 0)", 0.0)

    try:
        factor, lower = scipy.linalg.cho_factor(matrix, lower=True)
        pivot = float(np.min(np.diag(factor) ** 2))
        method = 'Cholesky'
        solve = lambda: scipy.linalg.cho_solve((factor, lower), rhs)
    except scipy.linalg.LinAlgError:
        Log.debug("Cholesky factorization failed, falling back to pivoted LU")
        lu, piv = scipy.linalg.lu_factor(matrix, check_finite=True)
        pivot = float(np.min(np.abs(np.diag(lu))))
        method = 'LU'
        solve = lambda: scipy.linalg.lu_solve((lu, piv), rhs)

    if not pivot >= SINGULAR_TOLERANCE * scale:
        raise SingularSystemError(
            "Collage matrix is singular: smallest {0} pivot {1:.3e} is below {2:.0e} x {3:.3e}; the basis is "
            "degenerate".format(method, pivot, SINGULAR_TOLERANCE, scale), pivot)

    alpha = solve()
    residual = np.max(np.abs(matrix @ alpha - rhs)) if len(rhs) else 0.0
    limit = RESIDUAL_TOLERANCE * (np.linalg.norm(matrix, np.inf) * np.max(np.abs(alpha)) + np.max(np.abs(rhs)))
    if residual > limit:
        Log.warning("Normal equation residual {0:.3e} exceeds {1:.3e}".format(residual, limit))
    return alpha


def objective(alpha, basis, f, cfg, threads=1):
    """Evaluates the collage objective phi(alpha) = ||f - T f||^2 by quadrature.

    Args:
        alpha (list): Coefficients of the cardinal basis functions
        basis (CardinalBasis): The cardinal basis
        f (callable): The target function on [a, b]
        cfg (QuadConfig): Quadrature settings
        threads (int): Maximum number of worker threads

    Returns:
        float: The non-negative objective value
    """
    p = basis.partition
    maps = basis.maps
    s = basis.scales.values
    lam = combine(basis, alpha)

    def squared_residual(l):
        def residual(x):
            return (s[l] * f(x) + lam.at(l, x) - f(maps.apply(l, x))) ** 2
        return integrate(residual, p.a, p.b, cfg)

    total = 0.0
    for l, value in enumerate(_map_segments(squared_residual, p.n, threads)):
        total += maps.slopes[l] * value
    return max(total, 0.0)


def sampling_depth(n, depth, max_points=DEFAULT_MAX_POINTS):
    """Largest address depth <= depth whose sample count stays within max_points."""
    reduced = depth
    while reduced > 0 and address_point_count(n, reduced) > max_points:
        reduced -= 1
    if reduced != depth:
        Log.warning("Sampling depth reduced from {0} to {1} to stay within {2} points".format(
            depth, reduced, max_points))
    return reduced


def fit(f, partition, scales, quad=None, eval_cfg=None, threads=1, max_points=DEFAULT_MAX_POINTS):
    """Computes the collage-optimal fractal approximation of f.

    Args:
        f (callable): The target function on [a, b]
        partition (Partition): The partition
        scales (ScaleVector): The vertical scaling factors
        quad (QuadConfig): Quadrature settings (default 16 panels of 5 points)
        eval_cfg (EvalConfig): Evaluation settings, depth is the address depth of the error measurement
        threads (int): Maximum number of worker threads
        max_points (int): Cap on the number of address samples

    Returns:
        FitResult: Coefficients, collage residual and bound, measured error and continuity diagnostic

    Raises:
        SingularSystemError: If the normal equations are singular
        IntegrandError: If the target cannot be evaluated
    """
    quad = quad or QuadConfig()
    eval_cfg = eval_cfg or EvalConfig()

    basis = cardinal_basis(partition, scales)
    system = CollageSystem(gram_matrix(basis), rhs_vector(basis, f, quad, threads))
    alpha = solve_normal_equations(system)
    value = objective(alpha, basis, f, quad, threads)
    residual = math.sqrt(value)

    lam = combine(basis, alpha)
    depth = sampling_depth(partition.n, eval_cfg.depth, max_points)
    xs, fs = sample_fixed_point(lam, scales, partition, depth, max_points)
    measured = interpolant_l2_distance(f, xs, fs)
    jump = float(np.max(np.abs(continuity_residuals(lam, scales, partition))))

    result = FitResult(alpha, lam, basis, residual, measured, jump, value, quad, depth)
    Log.debug("Fit on {0} segments: collage residual {1:.6e}, bound {2:.6e}, measured error {3:.6e}".format(
        partition.n, residual, result.collage_bound, measured))
    if measured > result.collage_bound + CERTIFICATE_SLACK:
        Log.warning("Measured error {0:.6e} exceeds the collage bound {1:.6e}; the assembly is inconsistent".format(
            measured, result.collage_bound))
    return result
