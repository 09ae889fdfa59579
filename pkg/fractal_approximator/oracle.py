""" Brute-force reference solutions used to check the collage fit

Nothing here shares assembly code with collage_fit: the hat-function projection integrates with numpy's own
Gauss-Legendre rule and the sampled least-squares fit works directly on fixed point samples.
"""
import math

import numpy as np

from fractal_approximator.fif import address_point_count
from fractal_approximator.fif import sample_fixed_point


def hat_function(partition, j):
    """Returns the j-th piecewise linear hat function of the partition as a vectorised function."""
    y = np.zeros(partition.n + 1)
    y[j] = 1.0
    nodes = np.array(partition.nodes)
    return lambda x: np.interp(x, nodes, y)


def hat_mass_matrix(partition):
    """Mass matrix M_ij = int phi_i phi_j of the piecewise linear hat functions, assembled element by element."""
    nodes = partition.nodes
    n = partition.n
    mass = np.zeros((n + 1, n + 1))
    for l in range(n):
        h = nodes[l + 1] - nodes[l]
        mass[l, l] += h / 3.0
        mass[l + 1, l + 1] += h / 3.0
        mass[l, l + 1] += h / 6.0
        mass[l + 1, l] += h / 6.0
    return mass


def hat_projection(f, partition, quad):
    """L2 projection of f onto the piecewise linear hat functions of the partition.

    Args:
        f (callable): The target function on [a, b]
        partition (Partition): The partition
        quad (QuadConfig): Panels and points used for the load vector

    Returns:
        numpy.ndarray: The projection coefficients, one per node

    Raises:
        ArithmeticError: If the mass matrix is singular (cannot happen for a valid partition)
    """
    nodes = partition.nodes
    n = partition.n
    mass = hat_mass_matrix(partition)
    load = np.zeros(n + 1)
    abscissae, weights = np.polynomial.legendre.leggauss(quad.points_per_panel)

    for l in range(n):
        h = nodes[l + 1] - nodes[l]
        edges = np.linspace(nodes[l], nodes[l + 1], quad.panels_per_segment + 1)
        for left, right in zip(edges[:-1], edges[1:]):
            x = (left + right) / 2.0 + (right - left) / 2.0 * abscissae
            w = (right - left) / 2.0 * weights
            fx = np.asarray(f(x), dtype=np.float64)
            load[l] += np.sum(w * fx * (nodes[l + 1] - x) / h)
            load[l + 1] += np.sum(w * fx * (x - nodes[l]) / h)

    try:
        return np.linalg.solve(mass, load)
    except np.linalg.LinAlgError as e:
        raise ArithmeticError("Hat-function mass matrix is singular: {0}".format(str(e)))


def _grid_depth(n, grid_size):
    depth = 0
    while address_point_count(n, depth) < grid_size:
        depth += 1
    return depth


def _trapezoid_weights(xs):
    steps = np.diff(xs)
    weights = np.zeros(len(xs))
    weights[:-1] += steps / 2.0
    weights[1:] += steps / 2.0
    return weights


def dense_sampled_lsq(f, basis, grid_size, eval_cfg):
    """Least-squares fit of f by the cardinal basis functions sampled exactly on an address grid.

    The discrete problem uses trapezoid weights on the grid, so it approximates the L2 best approximation directly
    instead of the collage objective.

    Args:
        f (callable): The target function on [a, b]
        basis (CardinalBasis): The cardinal basis
        grid_size (int): Minimum number of sample points, at least 10 (N+1)
        eval_cfg (EvalConfig): Its depth is the largest address depth the grid may use

    Returns:
        numpy.ndarray: The coefficients alpha

    Raises:
        ValueError: If grid_size is too small or needs a deeper grid than eval_cfg allows
        ArithmeticError: If the sampled design matrix is rank deficient
    """
    n = basis.partition.n
    if grid_size < 10 * (n + 1):
        raise ValueError("Grid size must be at least {0}, got {1}".format(10 * (n + 1), grid_size))
    depth = _grid_depth(n, grid_size)
    if depth > eval_cfg.depth:
        raise ValueError("A grid of {0} points needs depth {1}, more than the allowed {2}".format(
            grid_size, depth, eval_cfg.depth))

    columns = []
    xs = None
    for lam in basis:
        xs, values = sample_fixed_point(lam, basis.scales, basis.partition, depth)
        columns.append(values)
    design = np.column_stack(columns)
    weights = _trapezoid_weights(xs)

    if np.linalg.matrix_rank(design * np.sqrt(weights)[:, None]) < n + 1:
        raise ArithmeticError("Sampled basis functions are linearly dependent on the grid")
    normal = design.T @ (weights[:, None] * design)
    rhs = design.T @ (weights * np.asarray(f(xs), dtype=np.float64))
    return np.linalg.solve(normal, rhs)


def l2_error(f, lam, scales, partition, depth):
    """Trapezoid estimate of ||f - f_lambda|| on the exact address samples of the given depth."""
    xs, values = sample_fixed_point(lam, scales, partition, depth)
    error = np.asarray(f(xs), dtype=np.float64) - values
    return math.sqrt(float(np.sum(_trapezoid_weights(xs) * error ** 2)))
