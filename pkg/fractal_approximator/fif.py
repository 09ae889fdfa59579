""" Fractal interpolation functions defined by affine lambda-vectors

A fractal function f on [a, b] is the fixed point of the collage operator

    (B g)(x) = s_l * g(u_l^-1(x)) + lambda_l(u_l^-1(x)),   x in [x_l, x_{l+1})

with (B g)(b) taken as the left limit. Only affine lambda_l are supported.
"""
import numpy as np

from fractal_approximator.geometry import affine_maps
from fractal_approximator.geometry import segment_of
from fractal_approximator.log import Log

DEFAULT_MAX_POINTS = 4000000


class SampleSizeError(ValueError):
    """Raised when address sampling would exceed the configured point cap."""
    pass


class AffinePolynomial(object):
    """Represents p(x) = c0 + c1 * x.

    Args:
        c0 (float): Constant term
        c1 (float): Slope

    Raises:
        ValueError: If a coefficient is NaN or infinite
    """

    # numpy scalars defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, c0, c1):
        c0 = float(c0)
        c1 = float(c1)
        if not (np.isfinite(c0) and np.isfinite(c1)):
            raise ValueError("Polynomial coefficients must be finite, got ({0}, {1})".format(c0, c1))
        self.c0 = c0
        self.c1 = c1

    @classmethod
    def through(cls, a, ya, b, yb):
        """Returns the affine polynomial with p(a) = ya and p(b) = yb."""
        c1 = (yb - ya) / (b - a)
        return cls(ya - c1 * a, c1)

    def __call__(self, x):
        return self.c0 + self.c1 * np.asarray(x, dtype=np.float64)

    def __add__(self, other):
        return AffinePolynomial(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other):
        return AffinePolynomial(self.c0 - other.c0, self.c1 - other.c1)

    def __mul__(self, factor):
        return AffinePolynomial(factor * self.c0, factor * self.c1)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, AffinePolynomial) and self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self):
        return hash((self.c0, self.c1))

    def sup_norm(self, a, b):
        """Maximum of |p| on [a, b], attained at an end point."""
        return max(abs(float(self(a))), abs(float(self(b))))

    def __repr__(self):
        return "AffinePolynomial(c0={0!r}, c1={1!r})".format(self.c0, self.c1)


class LambdaVector(object):
    """The N affine polynomials lambda_0 ... lambda_{N-1} that parameterize a collage operator.

    The coefficients are kept as two read-only arrays so that whole vectors can be combined and evaluated at once.

    Args:
        constants (list): Constant terms of lambda_0 ... lambda_{N-1}
        slopes (list): Slopes of lambda_0 ... lambda_{N-1}

    Raises:
        ValueError: If the arrays differ in length or hold non-finite values
    """

    __array_ufunc__ = None

    def __init__(self, constants, slopes):
        constants = np.array(constants, dtype=np.float64)
        slopes = np.array(slopes, dtype=np.float64)
        if constants.ndim != 1 or constants.shape != slopes.shape:
            raise ValueError("Constant terms and slopes must be flat lists of equal length")
        if not (np.all(np.isfinite(constants)) and np.all(np.isfinite(slopes))):
            raise ValueError("Polynomial coefficients must be finite")
        constants.flags.writeable = False
        slopes.flags.writeable = False
        self.constants = constants
        self.slopes = slopes

    @classmethod
    def from_polynomials(cls, polynomials):
        """Creates a lambda-vector from a list of AffinePolynomials."""
        return cls([p.c0 for p in polynomials], [p.c1 for p in polynomials])

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros(n), np.zeros(n))

    def __len__(self):
        return len(self.constants)

    def __getitem__(self, l):
        return AffinePolynomial(self.constants[l], self.slopes[l])

    def __iter__(self):
        for l in range(len(self)):
            yield self[l]

    def __add__(self, other):
        self._check_length(other)
        return LambdaVector(self.constants + other.constants, self.slopes + other.slopes)

    def __sub__(self, other):
        self._check_length(other)
        return LambdaVector(self.constants - other.constants, self.slopes - other.slopes)

    def __mul__(self, factor):
        return LambdaVector(factor * self.constants, factor * self.slopes)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LambdaVector) and np.array_equal(self.constants, other.constants) and \
            np.array_equal(self.slopes, other.slopes)

    def __hash__(self):
        return hash((self.constants.tobytes(), self.slopes.tobytes()))

    def at(self, l, x):
        """Evaluates lambda_l at x; l and x may be arrays of equal shape."""
        return self.constants[l] + self.slopes[l] * np.asarray(x, dtype=np.float64)

    def sup_norm(self, a, b):
        """Maximum over l of the sup norm of lambda_l on [a, b]."""
        return float(max(np.max(np.abs(self.at(slice(None), a))), np.max(np.abs(self.at(slice(None), b)))))

    def _check_length(self, other):
        if len(self) != len(other):
            raise ValueError("Lambda-vectors differ in length: {0} != {1}".format(len(self), len(other)))

    def __repr__(self):
        return "LambdaVector({0})".format([(c0, c1) for c0, c1 in zip(self.constants.tolist(), self.slopes.tolist())])


class CardinalBasis(object):
    """The lambda-vectors of the cardinal fractal interpolation functions phi_0 ... phi_N with phi_k(x_j) = delta_kj.

    Args:
        partition (Partition): The partition
        maps (AffineMapSet): The affine maps of the partition
        scales (ScaleVector): The vertical scaling factors
        lambda_vectors (list): The N+1 lambda-vectors, one per basis function

    Attributes:
        constants (numpy.ndarray): (N+1) x N matrix of the constant terms, row k belongs to phi_k
        slopes (numpy.ndarray): (N+1) x N matrix of the slopes, row k belongs to phi_k
    """

    def __init__(self, partition, maps, scales, lambda_vectors):
        if len(lambda_vectors) != partition.n + 1:
            raise ValueError("A cardinal basis needs {0} lambda-vectors, got {1}".format(
                partition.n + 1, len(lambda_vectors)))
        self.partition = partition
        self.maps = maps
        self.scales = scales
        self.lambda_vectors = tuple(lambda_vectors)
        self.constants = np.array([lv.constants for lv in self.lambda_vectors])
        self.slopes = np.array([lv.slopes for lv in self.lambda_vectors])
        self.constants.flags.writeable = False
        self.slopes.flags.writeable = False

    def __len__(self):
        return len(self.lambda_vectors)

    def __getitem__(self, k):
        return self.lambda_vectors[k]

    def __iter__(self):
        return iter(self.lambda_vectors)


class EvalConfig(object):
    """Settings for evaluating fractal functions.

    Args:
        depth (int): Address recursion depth d
        dense_grid (int): Samples per segment for sup norm estimates

    Raises:
        ValueError: If depth < 1 or dense_grid < 2
    """

    def __init__(self, depth=6, dense_grid=64):
        if int(depth) != depth or depth < 1:
            raise ValueError("Evaluation depth must be an integer >= 1, got {0}".format(depth))
        if int(dense_grid) != dense_grid or dense_grid < 2:
            raise ValueError("Dense grid size must be an integer >= 2, got {0}".format(dense_grid))
        self.depth = int(depth)
        self.dense_grid = int(dense_grid)

    def __repr__(self):
        return "EvalConfig(depth={0}, dense_grid={1})".format(self.depth, self.dense_grid)


def _check_lengths(lam, scales, partition):
    if len(lam) != partition.n or len(scales) != partition.n:
        raise ValueError("Lambda-vector ({0}) and scale vector ({1}) must have one entry per segment ({2})".format(
            len(lam), len(scales), partition.n))


def lambda_for_data(partition, scales, y):
    """Builds the lambda-vector whose fixed point interpolates (x_j, y_j) continuously.

    lambda_l is the affine polynomial with lambda_l(a) = y_l - s_l y_0 and lambda_l(b) = y_{l+1} - s_l y_N.

    Args:
        partition (Partition): The partition
        scales (ScaleVector): The vertical scaling factors
        y (list): The N+1 data values

    Returns:
        LambdaVector: The interpolating lambda-vector

    Raises:
        ValueError: If the lengths do not match the partition
    """
    y = np.asarray(y, dtype=np.float64)
    n = partition.n
    if y.shape != (n + 1,):
        raise ValueError("Expected {0} data values, got {1}".format(n + 1, y.shape[0] if y.ndim else 1))
    if len(scales) != n:
        raise ValueError("Expected {0} scale factors, got {1}".format(n, len(scales)))

    a, b = partition.a, partition.b
    s = scales.values
    left = y[:-1] - s * y[0]
    right = y[1:] - s * y[-1]
    return LambdaVector.from_polynomials(
        [AffinePolynomial.through(a, ya, b, yb) for ya, yb in zip(left.tolist(), right.tolist())])


def cardinal_basis(partition, scales):
    """Builds the cardinal basis phi_0 ... phi_N of the continuous fractal function space.

    Args:
        partition (Partition): The partition
        scales (ScaleVector): The vertical scaling factors

    Returns:
        CardinalBasis: The basis, lambda-vector k interpolates the k-th unit vector
    """
    n = partition.n
    identity = np.eye(n + 1)
    lambda_vectors = [lambda_for_data(partition, scales, identity[k]) for k in range(n + 1)]
    Log.debug("Built cardinal basis with {0} functions".format(n + 1))
    return CardinalBasis(partition, affine_maps(partition), scales, lambda_vectors)


def combine(basis, alpha):
    """Returns the lambda-vector sum_k alpha_k lambda^(k), whose fixed point is sum_k alpha_k phi_k.

    Raises:
        ValueError: If alpha does not have N+1 entries
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    if alpha.shape != (len(basis),):
        raise ValueError("Expected {0} coefficients, got {1}".format(len(basis), alpha.size))
    return LambdaVector(alpha @ basis.constants, alpha @ basis.slopes)


def apply_collage(lam, scales, partition, g, x):
    """Applies the collage operator B_lambda to g at x.

    Args:
        lam (LambdaVector): The lambda-vector
        scales (ScaleVector): The vertical scaling factors
        partition (Partition): The partition
        g (callable): Vectorised function on [a, b]
        x (float or numpy.ndarray): Evaluation point(s) in [a, b]

    Returns:
        float or numpy.ndarray: s_l g(u_l^-1(x)) + lambda_l(u_l^-1(x)) with l = segment_of(x)

    Raises:
        ValueError: If x lies outside [a, b]
    """
    _check_lengths(lam, scales, partition)
    l = segment_of(partition, x)
    t = affine_maps(partition).inverse(l, x)
    result = scales.values[l] * np.asarray(g(t), dtype=np.float64) + lam.at(l, t)
    if np.ndim(result) == 0:
        return float(result)
    return result


def collage_operator(lam, scales, partition):
    """Returns B_lambda as a function mapping a callable g to the callable B_lambda g."""
    def operator(g):
        return lambda x: apply_collage(lam, scales, partition, g, x)
    return operator


def contraction_ratio(lam, scales, partition, g1, g2, cfg):
    """Estimates sup|B g1 - B g2| / sup|g1 - g2| on a dense grid.

    The denominator is taken over the grid together with all preimages of grid points, so the ratio never exceeds
    max |s_l| for any pair of functions.

    Args:
        lam (LambdaVector): The lambda-vector
        scales (ScaleVector): The vertical scaling factors
        partition (Partition): The partition
        g1 (callable): First vectorised function
        g2 (callable): Second vectorised function
        cfg (EvalConfig): Supplies the number of grid points per segment

    Returns:
        float: The empirical Lipschitz ratio, 0 if g1 and g2 agree on the grid
    """
    x = dense_grid(partition, cfg.dense_grid)
    maps = affine_maps(partition)
    l = segment_of(partition, x)
    samples = np.concatenate([x, maps.inverse(l, x)])
    denominator = np.max(np.abs(np.asarray(g1(samples)) - np.asarray(g2(samples))))
    if denominator == 0:
        return 0.0
    numerator = np.max(np.abs(apply_collage(lam, scales, partition, g1, x) -
                              apply_collage(lam, scales, partition, g2, x)))
    return float(numerator / denominator)


def dense_grid(partition, points_per_segment):
    """Uniformly spaced points on every segment, shared end points listed once."""
    nodes = partition.nodes
    t = np.linspace(0.0, 1.0, points_per_segment)[:-1]
    pieces = [(1.0 - t) * nodes[l] + t * nodes[l + 1] for l in range(partition.n)]
    pieces.append(nodes[-1:])
    return np.concatenate(pieces)


def node_values(lam, scales, partition):
    """Closed-form values of the fixed point f_lambda at the nodes.

    f(a) = lambda_0(a) / (1 - s_0), f(b) = lambda_{N-1}(b) / (1 - s_{N-1}) and f(x_l) = s_l f(a) + lambda_l(a) for
    the interior nodes (the value from the right, i.e. of segment l).

    Returns:
        numpy.ndarray: The N+1 node values
    """
    _check_lengths(lam, scales, partition)
    s = scales.values
    a, b = partition.a, partition.b
    f_a = float(lam.at(0, a)) / (1.0 - s[0])
    f_b = float(lam.at(-1, b)) / (1.0 - s[-1])
    values = np.empty(partition.n + 1)
    values[0] = f_a
    values[1:-1] = s[1:] * f_a + lam.at(slice(1, None), a)
    values[-1] = f_b
    return values


def node_interpolant(lam, scales, partition):
    """Returns the piecewise linear interpolant of the node values of f_lambda as a vectorised function."""
    nodes = partition.nodes
    values = node_values(lam, scales, partition)
    return lambda x: np.interp(x, nodes, values)


def continuity_residuals(lam, scales, partition):
    """Residuals of the continuity condition at the interior nodes x_1 ... x_{N-1}.

    The residual at junction l is the jump f(x_{l+1}+) - f(x_{l+1}-) of the fixed point, up to sign:
    [lambda_l(b) - lambda_{l+1}(a)] - [s_{l+1} f(a) - s_l f(b)].

    Returns:
        numpy.ndarray: The N-1 residuals, all zero iff f_lambda is continuous
    """
    _check_lengths(lam, scales, partition)
    s = scales.values
    a, b = partition.a, partition.b
    f_a = float(lam.at(0, a)) / (1.0 - s[0])
    f_b = float(lam.at(-1, b)) / (1.0 - s[-1])
    jumps = lam.at(slice(0, -1), b) - lam.at(slice(1, None), a)
    return jumps - (s[1:] * f_a - s[:-1] * f_b)


def _sup_bound(lam, scales, partition, values):
    c = scales.contraction
    interp_norm = float(np.max(np.abs(values)))
    return (lam.sup_norm(partition.a, partition.b) + c * interp_norm + interp_norm) / (1.0 - c)


def evaluate(lam, scales, partition, x, cfg):
    """Evaluates the fixed point f_lambda by unrolling the self-referential equation.

    The recursion f(x) = s_l f(u_l^-1(x)) + lambda_l(u_l^-1(x)) is expanded to cfg.depth levels and closed with the
    piecewise linear interpolant of the node values. Whenever the recursion reaches a node the closure is exact and
    the expansion stops there.

    Args:
        lam (LambdaVector): The lambda-vector
        scales (ScaleVector): The vertical scaling factors
        partition (Partition): The partition
        x (float or numpy.ndarray): Evaluation point(s) in [a, b]
        cfg (EvalConfig): Supplies the recursion depth

    Returns:
        tuple: (value, error bound), both floats for scalar x or arrays for array x. The bound is c^d M with M a sup
        bound on |f - interpolant|; it is 0 where the value is exact.

    Raises:
        ValueError: If x lies outside [a, b]
    """
    _check_lengths(lam, scales, partition)
    points = np.asarray(x, dtype=np.float64)
    if not partition.contains(points):
        raise ValueError("Point(s) outside the interval [{0}, {1}]: {2}".format(partition.a, partition.b, x))

    maps = affine_maps(partition)
    nodes = partition.nodes
    s = scales.values
    values = node_values(lam, scales, partition)
    bound = scales.contraction ** cfg.depth * _sup_bound(lam, scales, partition, values)

    def evaluate_point(point):
        result = 0.0
        weight = 1.0
        for _ in range(cfg.depth):
            j = int(np.searchsorted(nodes, point))
            if nodes[min(j, partition.n)] == point:
                return result + weight * values[j], 0.0
            l = segment_of(partition, point)
            point = float(maps.inverse(l, point))
            result += weight * float(lam.at(l, point))
            weight *= s[l]
            if weight == 0.0:
                return result, 0.0
        return result + weight * float(np.interp(point, nodes, values)), bound

    if points.ndim == 0:
        return evaluate_point(float(points))
    pairs = [evaluate_point(p) for p in points.ravel().tolist()]
    result = np.array([p[0] for p in pairs]).reshape(points.shape)
    bounds = np.array([p[1] for p in pairs]).reshape(points.shape)
    return result, bounds


def address_point_count(n, depth):
    """Number of distinct address points u_{l_1} o ... o u_{l_d}(x_j) of depth d on N segments."""
    return n ** (depth + 1) + 1


def sample_fixed_point(lam, scales, partition, depth, max_points=DEFAULT_MAX_POINTS):
    """Samples the fixed point f_lambda exactly on the address grid of the given depth.

    The node values are pushed forward with f(u_l(t)) = s_l f(t) + lambda_l(t). Shared segment end points are listed
    once, with the value of the segment on the right (half-open segments).

    Args:
        lam (LambdaVector): The lambda-vector
        scales (ScaleVector): The vertical scaling factors
        partition (Partition): The partition
        depth (int): Address depth d >= 0
        max_points (int): Maximum number of points to generate

    Returns:
        tuple: Two arrays (x, f(x)) sorted by x

    Raises:
        ValueError: If depth is negative
        SampleSizeError: If N^(d+1) + 1 exceeds max_points
    """
    _check_lengths(lam, scales, partition)
    if int(depth) != depth or depth < 0:
        raise ValueError("Sampling depth must be an integer >= 0, got {0}".format(depth))
    n = partition.n
    count = address_point_count(n, depth)
    if count > max_points:
        raise SampleSizeError("Sampling depth {0} on {1} segments yields {2} points, more than the cap of {3}".format(
            depth, n, count, max_points))

    maps = affine_maps(partition)
    s = scales.values
    xs = np.array(partition.nodes)
    fs = node_values(lam, scales, partition)
    for _ in range(int(depth)):
        pieces_x = []
        pieces_f = []
        for l in range(n):
            px = maps.apply(l, xs)
            pf = s[l] * fs + lam.at(l, xs)
            if l < n - 1:
                px, pf = px[:-1], pf[:-1]
            pieces_x.append(px)
            pieces_f.append(pf)
        xs = np.concatenate(pieces_x)
        fs = np.concatenate(pieces_f)

    if np.any(np.diff(xs) <= 0):
        xs, first = np.unique(xs, return_index=True)
        fs = fs[first]
    Log.debug("Sampled fixed point on {0} address points (depth {1})".format(len(xs), depth))
    return xs, fs
