""" Command line front end: fit a target function and write coefficients, samples and a report """
import argparse

from fractal_approximator import __version__
from fractal_approximator.collage_fit import fit
from fractal_approximator.fileio import check_destination
from fractal_approximator.fileio import format_csv
from fractal_approximator.fileio import write_text
from fractal_approximator.jinja_renderer import JinjaRenderer
from fractal_approximator.log import Log
from fractal_approximator.run_config import RunConfig
from fractal_approximator.run_config import load_run_definition
from fractal_approximator.run_config import parse_number_list
from fractal_approximator.targets import load_target
from fractal_approximator.utils import format_float
from fractal_approximator.utils import merge_dicts
from fractal_approximator.utils import to_nice_json

SUMMARY_TEMPLATE = """\
Target '{{ target }}' on [{{ a }}, {{ b }}] with {{ report.n }} segments
  contraction:       {{ report.contraction | significant }}
  collage residual:  {{ report.collage_residual | significant }}
  collage bound:     {{ report.collage_bound | significant }}
  measured L2 error: {{ report.measured_l2_error | significant }}
  max node jump:     {{ report.max_node_jump | significant }}
  sampling depth:    {{ report.depth }}
Written:
{% for path in outputs %}
  {{ path }}
{% endfor %}"""


def build_parser():
    parser = argparse.ArgumentParser(
        prog='fractal-approximator',
        description='Best collage fit of a function by continuous fractal interpolation functions')
    parser.add_argument('-c', '--config', dest='config', metavar='FILE',
                        help='YAML run definition; command line flags take precedence')
    parser.add_argument('--a', dest='a', type=float, help='Left end of the interval (default 0)')
    parser.add_argument('--b', dest='b', type=float, help='Right end of the interval (default 1)')
    partition = parser.add_mutually_exclusive_group()
    partition.add_argument('--n', dest='n', type=int, help='Number of segments of a uniform partition')
    partition.add_argument('--nodes', dest='nodes', help='Explicit comma separated nodes, e.g. 0,0.3,1')
    parser.add_argument('--s', dest='s',
                        help='Vertical scaling factor(s): one value for all segments or one per segment')
    parser.add_argument('--target', dest='target',
                        help="Target function: sin, cos, exp, abs, runge, sinpi, zero, 'poly:c0,c1,...' or "
                             "'csv:PATH'")
    parser.add_argument('--quad-panels', dest='quad_panels', type=int,
                        help='Gauss-Legendre panels per segment (default 16)')
    parser.add_argument('--quad-points', dest='quad_points', type=int,
                        help='Gauss-Legendre points per panel (default 5)')
    parser.add_argument('--depth', dest='depth', type=int, help='Address depth of the samples (default 6)')
    parser.add_argument('--out-coeffs', dest='out_coeffs', metavar='PATH',
                        help='Coefficients CSV, a Jinja template (default coeffs.csv)')
    parser.add_argument('--out-samples', dest='out_samples', metavar='PATH',
                        help='Samples CSV, a Jinja template (default samples.csv)')
    parser.add_argument('--out-report', dest='out_report', metavar='PATH',
                        help='JSON report, a Jinja template (default report.json)')
    parser.add_argument('--threads', dest='threads', type=int, help='Maximum number of worker threads (default 1)')
    parser.add_argument('-f', '--force', dest='force_overwrite', action='store_true', default=False,
                        help='Overwrite existing files')
    parser.add_argument('-v', '--verbose', dest='verbose', action='store_true', default=False,
                        help='Enable verbose mode')
    parser.add_argument('--version', action='version', version='%(prog)s {0}'.format(__version__))
    return parser


def _flag_options(args):
    """Options given on the command line; unset flags are None and leave lower layers untouched."""
    options = {
        'a': args.a,
        'b': args.b,
        'n': args.n,
        'nodes': parse_number_list(args.nodes, 'nodes') if args.nodes is not None else None,
        's': parse_number_list(args.s, 's') if args.s is not None else None,
        'target': args.target,
        'quad': {
            'panels': args.quad_panels,
            'points': args.quad_points,
        },
        'depth': args.depth,
        'threads': args.threads,
        'outputs': {
            'coeffs': args.out_coeffs,
            'samples': args.out_samples,
            'report': args.out_report,
        },
    }
    return options


def parse_args(argv=None):
    """Parses the command line into a validated run config.

    Invalid values terminate with exit code 2 and a message, like unknown flags do.

    Args:
        argv (list): Arguments without the program name, defaults to sys.argv[1:]

    Returns:
        RunConfig: The validated config
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        options = load_run_definition(args.config) if args.config else {}
        flags = _flag_options(args)
        # a partition given on the command line replaces the one of the run definition
        if flags['n'] is not None:
            options['nodes'] = None
        if flags['nodes'] is not None:
            options['n'] = None
        options = merge_dicts(options, flags)
        return RunConfig.from_options(options, args.force_overwrite, args.verbose)
    except Exception as e:
        parser.error(str(e))


def _coefficients_csv(alpha):
    return format_csv(['k', 'alpha'], ([str(k), format_float(a)] for k, a in enumerate(alpha.tolist())))


def _samples_csv(xs, targets, approximants):
    rows = ([format_float(x), format_float(t), format_float(f)]
            for x, t, f in zip(xs.tolist(), targets.tolist(), approximants.tolist()))
    return format_csv(['x', 'f_target', 'f_approx'], rows)


def run(cfg):
    """Fits the target of a run config and writes the outputs.

    Args:
        cfg (RunConfig): The validated config

    Returns:
        int: Exit code, 0 on success and 1 if any step failed
    """
    p = cfg.partition
    try:
        for key in ('coeffs', 'samples', 'report'):
            check_destination(cfg.outputs[key], cfg.force_overwrite)
        target = load_target(cfg.target, p.a, p.b)
        result = fit(target, p, cfg.scales, cfg.quad, cfg.eval_cfg, cfg.threads)
        xs, fs = result.samples()
        report = result.as_report()

        write_text(_coefficients_csv(result.alpha), cfg.outputs['coeffs'], cfg.force_overwrite)
        write_text(_samples_csv(xs, target(xs), fs), cfg.outputs['samples'], cfg.force_overwrite)
        write_text(to_nice_json(report), cfg.outputs['report'], cfg.force_overwrite)

        Log.info(JinjaRenderer.render_string(SUMMARY_TEMPLATE, {
            'target': cfg.target,
            'a': p.a,
            'b': p.b,
            'report': report,
            'outputs': [cfg.outputs[key] for key in ('coeffs', 'samples', 'report')],
        }))
    except Exception as e:
        Log.error("Error: {0}".format(str(e)), 2)
        return 1
    return 0


def main(argv=None):
    cfg = parse_args(argv)
    Log.level = Log.DEBUG if cfg.verbose else Log.INFO
    return run(cfg)
