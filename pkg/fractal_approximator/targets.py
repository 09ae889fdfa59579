""" Target functions to be approximated: builtins and sampled data """
import csv
import io

import numpy as np

from fractal_approximator.fileio import read_text
from fractal_approximator.log import Log


class TargetFunction(object):
    """An evaluable real function on [a, b] together with a label describing where it came from.

    Args:
        func (callable): Vectorised function accepting numpy arrays
        label (str): Builtin name or sample file path
        domain (tuple): Optional interval (a, b) the function is restricted to

    Raises:
        ValueError: On evaluation outside the domain or non-finite values
    """

    def __init__(self, func, label, domain=None):
        self.func = func
        self.label = label
        self.domain = domain

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.domain is not None:
            a, b = self.domain
            if np.any(x < a) or np.any(x > b):
                raise ValueError("Target '{0}' is only defined on [{1}, {2}]".format(self.label, a, b))
        values = np.asarray(self.func(x), dtype=np.float64)
        if values.shape != x.shape:
            values = np.broadcast_to(values, x.shape).copy()
        if not np.all(np.isfinite(values)):
            raise ValueError("Target '{0}' has non-finite values".format(self.label))
        return values

    def scaled(self, factor):
        """Returns the target multiplied by a constant factor."""
        return TargetFunction(lambda x: factor * self.func(x), "{0}*{1}".format(factor, self.label), self.domain)

    def __repr__(self):
        return "TargetFunction({0!r})".format(self.label)


def _polynomial(coefficients):
    coefficients = [float(c) for c in coefficients]
    # c0 first
    return lambda x: np.polynomial.polynomial.polyval(x, coefficients)


def _runge(x):
    return 1.0 / (1.0 + 25.0 * x * x)


def _zero(x):
    return np.zeros_like(x)


BUILTINS = {
    'sin': np.sin,
    'cos': np.cos,
    'exp': np.exp,
    'abs': np.abs,
    'runge': _runge,
    'sinpi': lambda x: np.sin(np.pi * x),
    'zero': _zero,
}


def builtin_target(name):
    """Returns a builtin target function.

    Args:
        name (str): One of the names in BUILTINS or 'poly:c0,c1,...'

    Returns:
        TargetFunction: The target

    Raises:
        ValueError: If the name is unknown or the coefficients are malformed
    """
    if name.startswith('poly:'):
        try:
            coefficients = [float(c) for c in name[len('poly:'):].split(',')]
        except ValueError:
            raise ValueError("Malformed polynomial coefficients in target '{0}'".format(name))
        return TargetFunction(_polynomial(coefficients), name)
    if name not in BUILTINS:
        raise ValueError("Unknown target '{0}', choose one of {1}, 'poly:c0,c1,...' or 'csv:PATH'".format(
            name, ', '.join(sorted(BUILTINS))))
    return TargetFunction(BUILTINS[name], name)


def parse_samples(content, origin='<string>'):
    """Parses two-column 'x,y' CSV text with an optional header.

    Args:
        content (str): The CSV text
        origin (str): Where the text came from (used in messages)

    Returns:
        tuple: Two arrays (x, y)

    Raises:
        ValueError: If a row cannot be parsed or the x column is not strictly increasing
    """
    xs = []
    ys = []
    for number, row in enumerate(csv.reader(io.StringIO(content)), start=1):
        cells = [c.strip() for c in row]
        if not cells or all(c == '' for c in cells):
            continue
        if len(cells) != 2:
            raise ValueError("Expected 2 columns in line {0} of '{1}', got {2}".format(number, origin, len(cells)))
        try:
            x, y = float(cells[0]), float(cells[1])
        except ValueError:
            if number == 1 and not any(_is_number(c) for c in cells):
                # header
                continue
            raise ValueError("Cannot parse line {0} of '{1}': {2}".format(number, origin, ','.join(cells)))
        xs.append(x)
        ys.append(y)

    xs = np.array(xs)
    ys = np.array(ys)
    if len(xs) < 2:
        raise ValueError("Sample file '{0}' needs at least 2 rows".format(origin))
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise ValueError("Sample file '{0}' contains non-finite values".format(origin))
    if np.any(np.diff(xs) <= 0):
        raise ValueError("The x column of '{0}' must be strictly increasing".format(origin))
    return xs, ys


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


def sampled_target(xs, ys, a, b, label):
    """Extends samples to a function on [a, b] by linear interpolation.

    Raises:
        ValueError: If the samples do not cover [a, b]
    """
    if xs[0] > a or xs[-1] < b:
        raise ValueError("Samples of '{0}' cover [{1}, {2}] but the interval is [{3}, {4}]".format(
            label, xs[0], xs[-1], a, b))
    xs = np.array(xs)
    ys = np.array(ys)
    return TargetFunction(lambda x: np.interp(x, xs, ys), label, domain=(float(xs[0]), float(xs[-1])))


def load_target(spec, a, b):
    """Loads the target function described by spec.

    Args:
        spec (str): A builtin name, 'poly:c0,c1,...' or 'csv:PATH'
        a (float): Left end of the interval the target must cover
        b (float): Right end of the interval the target must cover

    Returns:
        TargetFunction: The target

    Raises:
        ValueError: If the spec is unknown or sampled data is malformed or does not cover [a, b]
        FileNotFoundError: If a sample file does not exist
    """
    if not spec:
        raise ValueError("Missing target")
    if spec.startswith('csv:'):
        path = spec[len('csv:'):]
        xs, ys = parse_samples(read_text(path, encoding='utf-8-sig'), path)
        Log.debug("Loaded {0} samples from '{1}'".format(len(xs), path))
        return sampled_target(xs, ys, a, b, path)
    return builtin_target(spec)
