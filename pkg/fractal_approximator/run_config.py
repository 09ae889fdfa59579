import os

from fractal_approximator.fif import EvalConfig
from fractal_approximator.fileio import read_text
from fractal_approximator.geometry import ScaleVector
from fractal_approximator.geometry import build_partition
from fractal_approximator.jinja_renderer import JinjaRenderer
from fractal_approximator.jinja_filter import slug
from fractal_approximator.log import Log
from fractal_approximator.quadrature import QuadConfig
from fractal_approximator.utils import load_yaml
from fractal_approximator.utils import merge_dicts

DEFAULTS = {
    'a': 0.0,
    'b': 1.0,
    'n': None,
    'nodes': None,
    's': None,
    'target': None,
    'quad': {
        'panels': 16,
        'points': 5,
    },
    'depth': 6,
    'threads': 1,
    'outputs': {
        'coeffs': 'coeffs.csv',
        'samples': 'samples.csv',
        'report': 'report.json',
    },
    'vars': {},
}

_NUMBER = (int, float)


def _is_number(value):
    return type(value) in _NUMBER


def _is_integer(value):
    return type(value) is int


def parse_number_list(value, name):
    """Parses a list of numbers given as YAML list, single number or comma separated string.

    Args:
        value: The raw value
        name (str): Option name used in error messages

    Returns:
        list: The numbers as floats

    Raises:
        ValueError: If the value cannot be read as a list of numbers
    """
    if _is_number(value):
        return [float(value)]
    if type(value) is str:
        cells = [c.strip() for c in value.split(',')]
        try:
            return [float(c) for c in cells]
        except ValueError:
            raise ValueError("Malformed number list for '{0}': '{1}'".format(name, value))
    if type(value) is list:
        if not all(_is_number(v) for v in value):
            raise ValueError("Value of '{0}' must be a list of numbers".format(name))
        return [float(v) for v in value]
    raise ValueError("Value of '{0}' must be of type number, list or string".format(name))


def load_run_definition(path):
    """Loads a YAML run definition and validates the types of its options.

    Args:
        path (str): Path of the run definition file

    Returns:
        dict: The options, missing keys are left out

    Raises:
        FileNotFoundError: If the file could not be found under the path
        IOError: If the given path does not contain a file
        yaml.YAMLError: If the YAML string is malformed
        ValueError: If an option has the wrong type
    """
    content = load_yaml(read_text(path))
    if type(content) is not dict:
        raise ValueError("A run definition must be a mapping, got {0}".format(type(content).__name__))
    return parse_options(content)


def parse_options(options):
    """Checks option types and keeps the known options.

    Args:
        options (dict): Raw options

    Returns:
        dict: The checked options

    Raises:
        ValueError: If an option is unknown or has the wrong type
    """
    unknown = sorted(set(options) - set(DEFAULTS))
    if unknown:
        raise ValueError("Unknown option(s) in run definition: {0}".format(', '.join(unknown)))

    processed = {}
    for key in ('a', 'b'):
        if key in options:
            if not _is_number(options[key]):
                raise ValueError("Value of '{0}' must be of type number".format(key))
            processed[key] = float(options[key])

    for key in ('n', 'depth', 'threads'):
        if key in options:
            if not _is_integer(options[key]):
                raise ValueError("Value of '{0}' must be of type integer".format(key))
            processed[key] = options[key]

    for key in ('nodes', 's'):
        if key in options:
            processed[key] = parse_number_list(options[key], key)

    if 'target' in options:
        if type(options['target']) is not str:
            raise ValueError("Value of 'target' must be of type string")
        processed['target'] = options['target']

    if 'quad' in options:
        if type(options['quad']) is not dict:
            raise ValueError("Value of 'quad' must be of type dict")
        processed['quad'] = {}
        for key in ('panels', 'points'):
            if key in options['quad']:
                if not _is_integer(options['quad'][key]):
                    raise ValueError("Value of 'quad.{0}' must be of type integer".format(key))
                processed['quad'][key] = options['quad'][key]

    if 'outputs' in options:
        if type(options['outputs']) is not dict:
            raise ValueError("Value of 'outputs' must be of type dict")
        processed['outputs'] = {}
        for key in ('coeffs', 'samples', 'report'):
            if key in options['outputs']:
                if type(options['outputs'][key]) is not str:
                    raise ValueError("Value of 'outputs.{0}' must be of type string".format(key))
                processed['outputs'][key] = options['outputs'][key]

    if 'vars' in options:
        if type(options['vars']) is not dict:
            raise ValueError("Value of 'vars' must be of type dict")
        processed['vars'] = options['vars']

    return processed


def target_name(spec):
    """Short file-name friendly name of a target spec, e.g. 'data' for 'csv:path/data.csv'."""
    if spec.startswith('csv:'):
        return slug(os.path.splitext(os.path.basename(spec[len('csv:'):]))[0])
    return slug(spec)


class RunConfig(object):
    """A fully validated run of the command line tool.

    Args:
        partition (Partition): The partition
        scales (ScaleVector): The vertical scaling factors, one per segment
        target (str): Target spec, a builtin name or 'csv:PATH'
        quad (QuadConfig): Quadrature settings
        eval_cfg (EvalConfig): Evaluation settings
        outputs (dict): Rendered output paths with keys 'coeffs', 'samples' and 'report'
        threads (int): Maximum number of worker threads
        force_overwrite (bool): Overwrite existing output files
        verbose (bool): Print debug messages
    """

    def __init__(self, partition, scales, target, quad, eval_cfg, outputs, threads=1, force_overwrite=False,
                 verbose=False):
        self.partition = partition
        self.scales = scales
        self.target = target
        self.quad = quad
        self.eval_cfg = eval_cfg
        self.outputs = outputs
        self.threads = threads
        self.force_overwrite = force_overwrite
        self.verbose = verbose

    @classmethod
    def from_options(cls, options, force_overwrite=False, verbose=False):
        """Builds a run config from merged options.

        Args:
            options (dict): Options on top of DEFAULTS
            force_overwrite (bool): Overwrite existing output files
            verbose (bool): Print debug messages

        Returns:
            RunConfig: The validated config

        Raises:
            ValueError: If an option violates an invariant of the component it configures
            jinja2.UndefinedError: If an output path refers to an undefined variable
        """
        options = merge_dicts(DEFAULTS, options)

        if not options['target']:
            raise ValueError("Missing target")
        if options['s'] is None:
            raise ValueError("Missing scale factor(s) s")
        if options['n'] is not None and options['nodes'] is not None:
            raise ValueError("Give either a segment count n or explicit nodes, not both")
        if options['n'] is None and options['nodes'] is None:
            raise ValueError("Missing partition: give a segment count n or explicit nodes")

        partition = build_partition(options['a'], options['b'], n=options['n'], nodes=options['nodes'])

        s = options['s']
        if len(s) == 1:
            scales = ScaleVector.broadcast(s[0], partition.n)
        elif len(s) == partition.n:
            scales = ScaleVector(s)
        else:
            raise ValueError("Expected 1 or {0} scale factors, got {1}".format(partition.n, len(s)))

        quad = QuadConfig(options['quad']['panels'], options['quad']['points'])
        eval_cfg = EvalConfig(options['depth'])
        if options['threads'] < 1:
            raise ValueError("Number of threads must be >= 1, got {0}".format(options['threads']))

        context = {
            'n': partition.n,
            'depth': eval_cfg.depth,
            'target': options['target'],
            'target_name': target_name(options['target']),
            'a': partition.a,
            'b': partition.b,
            'quad_panels': quad.panels_per_segment,
            'quad_points': quad.points_per_panel,
        }
        context = JinjaRenderer.render_dict(options['vars'], context)
        outputs = {}
        for key in ('coeffs', 'samples', 'report'):
            outputs[key] = JinjaRenderer.render_string(options['outputs'][key], context)
            Log.debug("Output '{0}': '{1}'".format(key, outputs[key]))

        return cls(partition, scales, options['target'], quad, eval_cfg, outputs, options['threads'],
                   force_overwrite, verbose)

    def __repr__(self):
        return "RunConfig(partition={0!r}, scales={1!r}, target={2!r})".format(
            self.partition, self.scales, self.target)
