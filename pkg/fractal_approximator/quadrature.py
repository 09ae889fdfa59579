""" Exact integrals of affine products and composite Gauss-Legendre quadrature """
import numpy as np

from fractal_approximator.fif import AffinePolynomial
from fractal_approximator.log import Log

MAX_POINTS = 12

# Positive abscissae and weights of the n-point Gauss-Legendre rules on [-1, 1]; the rules are symmetric and odd
# orders include the centre 0.
_GAUSS_LEGENDRE = {
    1: ([0.0],
        [2.0]),
    2: ([0.5773502691896257645091488],
        [1.0]),
    3: ([0.0, 0.7745966692414833770358531],
        [0.8888888888888888888888889, 0.5555555555555555555555556]),
    4: ([0.3399810435848562648026658, 0.8611363115940525752239465],
        [0.6521451548625461426269361, 0.3478548451374538573730639]),
    5: ([0.0, 0.5384693101056830910363144, 0.9061798459386639927976269],
        [0.5688888888888888888888889, 0.4786286704993664680412915, 0.2369268850561890875142640]),
    6: ([0.2386191860831969086305017, 0.6612093864662645136613996, 0.9324695142031520278123016],
        [0.4679139345726910473898703, 0.3607615730481386075698335, 0.1713244923791703450402961]),
    7: ([0.0, 0.4058451513773971669066064, 0.7415311855993944398638648, 0.9491079123427585245261897],
        [0.4179591836734693877551020, 0.3818300505051189449503698, 0.2797053914892766679014678,
         0.1294849661688696932706114]),
    8: ([0.1834346424956498049394761, 0.5255324099163289858177390, 0.7966664774136267395915539,
         0.9602898564975362316835609],
        [0.3626837833783619829651504, 0.3137066458778872873379622, 0.2223810344533744705443560,
         0.1012285362903762591525314]),
    9: ([0.0, 0.3242534234038089290385380, 0.6133714327005903973087020, 0.8360311073266357942994298,
         0.9681602395076260898355762],
        [0.3302393550012597631645251, 0.3123470770400028400686304, 0.2606106964029354623187429,
         0.1806481606948574040584720, 0.0812743883615744119718922]),
    10: ([0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
          0.8650633666889845107320967, 0.9739065285171717200779640],
         [0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
          0.1494513491505805931457763, 0.0666713443086881375935688]),
    11: ([0.0, 0.2695431559523449723315320, 0.5190961292068118159257257, 0.7301520055740493240934163,
          0.8870625997680952990751578, 0.9782286581460569928039380],
         [0.2729250867779006307144835, 0.2628045445102466621806889, 0.2331937645919904799185237,
          0.1862902109277342514260976, 0.1255803694649046246346943, 0.0556685671161736664827537]),
    12: ([0.1252334085114689154724414, 0.3678314989981801937526915, 0.5873179542866174472967024,
          0.7699026741943046870368938, 0.9041172563704748566784659, 0.9815606342467192506905491],
         [0.2491470458134027850005624, 0.2334925365383548087608499, 0.2031674267230659217490645,
          0.1600783285433462263346525, 0.1069393259953184309602547, 0.0471753363865118271946160]),
}


class IntegrandError(ArithmeticError):
    """Raised when an integrand cannot be evaluated or yields non-finite values."""
    pass


class QuadConfig(object):
    """Composite Gauss-Legendre settings used per segment.

    Args:
        panels_per_segment (int): Number of equal panels
        points_per_panel (int): Gauss-Legendre order, 1 ... 12

    Raises:
        ValueError: If a setting is out of range
    """

    def __init__(self, panels_per_segment=16, points_per_panel=5):
        if int(panels_per_segment) != panels_per_segment or panels_per_segment < 1:
            raise ValueError("Number of quadrature panels must be an integer >= 1, got {0}".format(
                panels_per_segment))
        if int(points_per_panel) != points_per_panel or not 1 <= points_per_panel <= MAX_POINTS:
            raise ValueError("Number of quadrature points must be an integer in 1..{0}, got {1}".format(
                MAX_POINTS, points_per_panel))
        self.panels_per_segment = int(panels_per_segment)
        self.points_per_panel = int(points_per_panel)

    def __repr__(self):
        return "QuadConfig(panels_per_segment={0}, points_per_panel={1})".format(
            self.panels_per_segment, self.points_per_panel)


def gauss_legendre(points):
    """Returns the abscissae and weights of the Gauss-Legendre rule with the given order on [-1, 1].

    Args:
        points (int): Number of points, 1 ... 12

    Returns:
        tuple: Two arrays (abscissae, weights), abscissae ascending
    """
    if points not in _GAUSS_LEGENDRE:
        raise ValueError("Gauss-Legendre rules are tabulated for 1..{0} points, got {1}".format(MAX_POINTS, points))
    positive, weights = _GAUSS_LEGENDRE[points]
    positive = np.array(positive)
    weights = np.array(weights)
    if points % 2:
        abscissae = np.concatenate([-positive[:0:-1], positive])
        weights = np.concatenate([weights[:0:-1], weights])
    else:
        abscissae = np.concatenate([-positive[::-1], positive])
        weights = np.concatenate([weights[::-1], weights])
    return abscissae, weights


def _moments(a, b):
    """Integrals of 1, x and x^2 over [a, b], factored so that (b - a) multiplies every term."""
    h = b - a
    return h, h * (a + b) / 2.0, h * (a * a + a * b + b * b) / 3.0


def affine_pair_integral(p, q, a, b):
    """Exact integral of p(x) q(x) over [a, b] for affine p and q.

    Args:
        p (AffinePolynomial): First factor
        q (AffinePolynomial): Second factor
        a (float): Lower bound
        b (float): Upper bound

    Returns:
        float: The integral

    Raises:
        ValueError: If a >= b
    """
    if not a < b:
        raise ValueError("Integration bounds must satisfy a < b, got [{0}, {1}]".format(a, b))
    m0, m1, m2 = _moments(float(a), float(b))
    return p.c0 * q.c0 * m0 + (p.c0 * q.c1 + p.c1 * q.c0) * m1 + p.c1 * q.c1 * m2


def affine_gram(constants, slopes, a, b):
    """Matrix of the exact integrals of all pairwise products of affine polynomials over [a, b].

    Entry (k, j) equals affine_pair_integral(p_k, q_j) with p_k = constants[k] + slopes[k] x. The result is exactly
    symmetric.

    Args:
        constants (numpy.ndarray): Constant terms
        slopes (numpy.ndarray): Slopes
        a (float): Lower bound
        b (float): Upper bound

    Returns:
        numpy.ndarray: The square matrix of integrals
    """
    if not a < b:
        raise ValueError("Integration bounds must satisfy a < b, got [{0}, {1}]".format(a, b))
    m0, m1, m2 = _moments(float(a), float(b))
    c0 = np.asarray(constants, dtype=np.float64)
    c1 = np.asarray(slopes, dtype=np.float64)
    cross = np.outer(c0, c1)
    return np.outer(c0, c0) * m0 + (cross + cross.T) * m1 + np.outer(c1, c1) * m2


def _rule_nodes(a, b, cfg):
    abscissae, weights = gauss_legendre(cfg.points_per_panel)
    edges = np.linspace(a, b, cfg.panels_per_segment + 1)
    edges[-1] = b
    half = (edges[1:] - edges[:-1]) / 2.0
    centre = (edges[1:] + edges[:-1]) / 2.0
    nodes = centre[:, None] + half[:, None] * abscissae[None, :]
    return nodes, half[:, None] * weights[None, :]


def integrate_against(f, p, a, b, cfg):
    """Composite Gauss-Legendre estimate of the integral of f(x) p(x) over [a, b].

    Args:
        f (callable): Vectorised integrand factor defined on [a, b]
        p (AffinePolynomial): Affine weight
        a (float): Lower bound
        b (float): Upper bound
        cfg (QuadConfig): Panels and points of the rule

    Returns:
        float: The estimate, summed panel by panel in ascending order

    Raises:
        ValueError: If a >= b
        IntegrandError: If f fails or returns non-finite values
    """
    if not a < b:
        raise ValueError("Integration bounds must satisfy a < b, got [{0}, {1}]".format(a, b))
    nodes, weights = _rule_nodes(float(a), float(b), cfg)
    try:
        values = np.asarray(f(nodes), dtype=np.float64)
    except Exception as e:
        raise IntegrandError("Cannot evaluate integrand on [{0}, {1}]: {2}".format(a, b, str(e)))
    if values.shape != nodes.shape:
        values = np.broadcast_to(values, nodes.shape)
    if not np.all(np.isfinite(values)):
        raise IntegrandError("Integrand is not finite on [{0}, {1}]".format(a, b))

    panel_sums = np.sum(values * p(nodes) * weights, axis=1)
    total = 0.0
    for s in panel_sums.tolist():
        total += s
    return total


def integrate(f, a, b, cfg):
    """Composite Gauss-Legendre estimate of the integral of f over [a, b]."""
    return integrate_against(f, AffinePolynomial(1.0, 0.0), a, b, cfg)


def check_panel_convergence(f, a, b, cfg):
    """Compares the estimate with the estimate on twice as many panels.

    Used as a self-check of the chosen rule, not as a hard gate.

    Returns:
        float: Absolute difference between the two estimates
    """
    finer = QuadConfig(2 * cfg.panels_per_segment, cfg.points_per_panel)
    difference = abs(integrate(f, a, b, cfg) - integrate(f, a, b, finer))
    Log.debug("Panel doubling on [{0}, {1}] changes the integral by {2:.3e}".format(a, b, difference))
    return difference


def interpolant_l2_distance(f, xs, fs):
    """L2 distance between f and the piecewise linear interpolant of the samples (xs, fs).

    Every cell [xs_i, xs_{i+1}] is integrated with the 3-point Gauss-Legendre rule, so the distance is exact when f
    is piecewise linear on the sample grid and accurate to the rule's order otherwise.

    Args:
        f (callable): Vectorised function on [xs_0, xs_-1]
        xs (numpy.ndarray): Strictly increasing sample points
        fs (numpy.ndarray): Sample values

    Returns:
        float: The L2 distance
    """
    abscissae, weights = gauss_legendre(3)
    xs = np.asarray(xs, dtype=np.float64)
    fs = np.asarray(fs, dtype=np.float64)
    half = (xs[1:] - xs[:-1]) / 2.0
    centre = (xs[1:] + xs[:-1]) / 2.0
    t = (abscissae + 1.0) / 2.0
    points = centre[:, None] + half[:, None] * abscissae[None, :]
    interpolant = fs[:-1, None] * (1.0 - t[None, :]) + fs[1:, None] * t[None, :]
    try:
        values = np.asarray(f(points), dtype=np.float64)
    except Exception as e:
        raise IntegrandError("Cannot evaluate function on [{0}, {1}]: {2}".format(xs[0], xs[-1], str(e)))
    squared = (values - interpolant) ** 2
    return float(np.sqrt(np.sum(half[:, None] * weights[None, :] * squared)))
