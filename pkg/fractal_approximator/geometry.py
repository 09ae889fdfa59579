""" Interval partitions and the affine contraction maps acting on them """
from functools import lru_cache

import numpy as np


def _frozen(values):
    array = np.array(values, dtype=np.float64)
    array.flags.writeable = False
    return array


class Partition(object):
    """Represents a partition a = x_0 < x_1 < ... < x_N = b of the interval [a, b].

    Args:
        a (float): Left end of the interval
        b (float): Right end of the interval
        nodes (list): The N+1 nodes x_0 ... x_N

    Attributes:
        a (float): Left end of the interval
        b (float): Right end of the interval
        nodes (numpy.ndarray): Read-only array of the nodes
        n (int): Number of segments N

    Raises:
        ValueError: If the nodes do not form a valid partition of [a, b]
    """

    def __init__(self, a, b, nodes):
        a = float(a)
        b = float(b)
        if not (np.isfinite(a) and np.isfinite(b)):
            raise ValueError("Interval ends must be finite, got [{0}, {1}]".format(a, b))
        if a >= b:
            raise ValueError("Interval left end must be smaller than right end, got [{0}, {1}]".format(a, b))

        nodes = _frozen(nodes)
        if nodes.ndim != 1:
            raise ValueError("Nodes must be a flat list of numbers")
        if len(nodes) < 3:
            raise ValueError("A partition needs at least 2 segments (3 nodes), got {0} node(s)".format(len(nodes)))
        if not np.all(np.isfinite(nodes)):
            raise ValueError("Nodes must be finite numbers")
        if nodes[0] != a or nodes[-1] != b:
            raise ValueError("First and last node must equal the interval ends {0} and {1}, got {2} and {3}".format(
                a, b, nodes[0], nodes[-1]))
        steps = np.diff(nodes)
        if np.any(steps <= 0):
            l = int(np.argmax(steps <= 0))
            raise ValueError("Nodes must be strictly increasing (non-monotone at x_{0}={1}, x_{2}={3})".format(
                l, nodes[l], l + 1, nodes[l + 1]))

        self.a = a
        self.b = b
        self.nodes = nodes
        self.n = len(nodes) - 1

    @property
    def length(self):
        """float: Length b - a of the interval."""
        return self.b - self.a

    def contains(self, x):
        """Returns true if all given values lie in [a, b]."""
        x = np.asarray(x, dtype=np.float64)
        return bool(np.all((x >= self.a) & (x <= self.b)))

    def __eq__(self, other):
        return isinstance(other, Partition) and self.a == other.a and self.b == other.b and \
            np.array_equal(self.nodes, other.nodes)

    def __hash__(self):
        return hash((self.a, self.b, self.nodes.tobytes()))

    def __repr__(self):
        return "Partition(a={0!r}, b={1!r}, n={2})".format(self.a, self.b, self.n)


class AffineMapSet(object):
    """The increasing affine maps u_l(x) = a_l x + b_l with u_l(x_0) = x_l and u_l(x_N) = x_{l+1}.

    Slopes and intercepts are computed once from the partition. Maps are evaluated in the convex form
    (1 - t) x_l + t x_{l+1} with t = (x - a) / (b - a), which keeps the endpoint conditions bit-exact.

    Args:
        partition (Partition): The partition the maps are built on

    Attributes:
        partition (Partition): The partition the maps are built on
        slopes (numpy.ndarray): Contraction ratios a_l
        intercepts (numpy.ndarray): Offsets b_l

    Raises:
        ValueError: If a map violates its endpoint conditions or is not a contraction
    """

    def __init__(self, partition):
        self.partition = partition
        x = partition.nodes
        a, b = partition.a, partition.b
        self.slopes = _frozen((x[1:] - x[:-1]) / (b - a))
        self.intercepts = _frozen((x[:-1] * b - x[1:] * a) / (b - a))

        if np.any(self.slopes <= 0) or np.any(self.slopes >= 1):
            raise ValueError("Affine maps must be contractions with 0 < a_l < 1, got {0}".format(self.slopes))
        for l in range(partition.n):
            if self.apply(l, a) != x[l] or self.apply(l, b) != x[l + 1]:
                raise ValueError("Affine map u_{0} violates its endpoint conditions".format(l))

    def __len__(self):
        return len(self.slopes)

    def apply(self, l, x):
        """Evaluates u_l.

        Args:
            l (int): Segment index
            x (float or numpy.ndarray): Point(s) in [a, b]

        Returns:
            float or numpy.ndarray: u_l(x), a point in [x_l, x_{l+1}]
        """
        p = self.partition
        t = (np.asarray(x, dtype=np.float64) - p.a) / p.length
        return (1.0 - t) * p.nodes[l] + t * p.nodes[l + 1]

    def inverse(self, l, y):
        """Evaluates the inverse map of u_l.

        Args:
            l (int): Segment index
            y (float or numpy.ndarray): Point(s) in [x_l, x_{l+1}]

        Returns:
            float or numpy.ndarray: The preimage(s) in [a, b]
        """
        p = self.partition
        t = (np.asarray(y, dtype=np.float64) - p.nodes[l]) / (p.nodes[l + 1] - p.nodes[l])
        return (1.0 - t) * p.a + t * p.b


class ScaleVector(object):
    """The vertical scaling factors s_0 ... s_{N-1}.

    Args:
        values (list): The scaling factors, each with |s_l| < 1

    Attributes:
        values (numpy.ndarray): Read-only array of the scaling factors
        contraction (float): The contraction factor c = max |s_l|

    Raises:
        ValueError: If a factor is not finite or |s_l| >= 1
    """

    def __init__(self, values):
        values = _frozen(np.atleast_1d(values))
        if values.ndim != 1 or len(values) == 0:
            raise ValueError("Scale vector must be a non-empty flat list of numbers")
        if not np.all(np.isfinite(values)):
            raise ValueError("Scale factors must be finite numbers")
        if np.any(np.abs(values) >= 1):
            raise ValueError("|s| must be < 1, got {0}".format(values[np.abs(values) >= 1][0]))
        self.values = values
        self.contraction = float(np.max(np.abs(values)))

    @classmethod
    def broadcast(cls, value, n):
        """Creates a scale vector with the same factor on all n segments."""
        return cls([float(value)] * n)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, l):
        return float(self.values[l])

    def __iter__(self):
        return iter(self.values.tolist())

    def __repr__(self):
        return "ScaleVector({0})".format(self.values.tolist())


def build_partition(a, b, n=None, nodes=None):
    """Builds a partition of [a, b], either uniform with n segments or from explicit nodes.

    Args:
        a (float): Left end of the interval
        b (float): Right end of the interval
        n (int): Number of segments of a uniform partition
        nodes (list): Explicit nodes x_0 ... x_N

    Returns:
        Partition: The validated partition

    Raises:
        ValueError: If neither or both of n and nodes are given, or the partition is invalid
    """
    if (n is None) == (nodes is None):
        raise ValueError("Either a node count or an explicit node list must be given")

    if nodes is not None:
        return Partition(a, b, nodes)

    if int(n) != n or n < 2:
        raise ValueError("A partition needs at least 2 segments, got {0}".format(n))
    n = int(n)
    a, b = float(a), float(b)
    if a >= b:
        raise ValueError("Interval left end must be smaller than right end, got [{0}, {1}]".format(a, b))
    uniform = [a + j * (b - a) / n for j in range(n)] + [b]
    return Partition(a, b, uniform)


@lru_cache(maxsize=64)
def affine_maps(partition):
    """Returns the affine map set u_0 ... u_{N-1} of a partition."""
    return AffineMapSet(partition)


def segment_of(partition, x):
    """Finds the segment containing x using half-open segments [x_l, x_{l+1}).

    The right end b is assigned to the last segment N-1.

    Args:
        partition (Partition): The partition
        x (float or numpy.ndarray): Point(s) in [a, b]

    Returns:
        int or numpy.ndarray: The segment index l (an int array for array input)

    Raises:
        ValueError: If a point lies outside [a, b]
    """
    values = np.asarray(x, dtype=np.float64)
    if not partition.contains(values):
        raise ValueError("Point(s) outside the interval [{0}, {1}]: {2}".format(partition.a, partition.b, x))
    l = np.searchsorted(partition.nodes, values, side='right') - 1
    l = np.minimum(l, partition.n - 1)
    if l.ndim == 0:
        return int(l)
    return l
