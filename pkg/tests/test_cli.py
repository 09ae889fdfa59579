import io
import json
import os
import tempfile
from unittest import TestCase
from unittest import mock

import numpy as np

from fractal_approximator.cli import main
from fractal_approximator.cli import parse_args
from fractal_approximator.cli import run
from fractal_approximator.geometry import build_partition
from fractal_approximator.log import Log
from fractal_approximator.oracle import hat_projection
from fractal_approximator.quadrature import QuadConfig

FILES_DIR = os.path.join(os.path.dirname(__file__), 'files')


def read_columns(path):
    with io.open(path, 'r', encoding='utf8') as f:
        lines = f.read().splitlines()
    return lines[0].split(','), np.array([[float(c) for c in line.split(',')] for line in lines[1:]])


class TestParseArgs(TestCase):
    def setUp(self):
        self.stderr = io.StringIO()
        patcher = mock.patch('sys.stderr', self.stderr)
        patcher.start()
        self.addCleanup(patcher.stop)

    def assertExitsWith2(self, argv, message=None):
        with self.assertRaises(SystemExit) as cm:
            parse_args(argv)
        self.assertEqual(cm.exception.code, 2)
        if message:
            self.assertIn(message, self.stderr.getvalue())

    def test_uniform(self):
        cfg = parse_args(['--n', '8', '--s', '0.3', '--target', 'sin'])
        self.assertEqual(cfg.partition, build_partition(0, 1, n=8))
        self.assertEqual(list(cfg.scales), [0.3] * 8)
        self.assertEqual(cfg.target, 'sin')
        self.assertEqual(cfg.quad.panels_per_segment, 16)
        self.assertEqual(cfg.quad.points_per_panel, 5)
        self.assertEqual(cfg.eval_cfg.depth, 6)
        self.assertEqual(cfg.threads, 1)
        self.assertEqual(cfg.outputs, {'coeffs': 'coeffs.csv', 'samples': 'samples.csv', 'report': 'report.json'})
        self.assertFalse(cfg.force_overwrite)
        self.assertFalse(cfg.verbose)

    def test_explicit_nodes(self):
        cfg = parse_args(['--nodes', '0,0.3,1', '--s', '0.2,-0.4', '--target', 'exp', '--quad-panels', '4',
                          '--quad-points', '3', '--depth', '2', '--threads', '2', '-f', '-v'])
        self.assertEqual(cfg.partition.nodes.tolist(), [0.0, 0.3, 1.0])
        self.assertEqual(list(cfg.scales), [0.2, -0.4])
        self.assertEqual(cfg.quad.panels_per_segment, 4)
        self.assertEqual(cfg.quad.points_per_panel, 3)
        self.assertEqual(cfg.eval_cfg.depth, 2)
        self.assertEqual(cfg.threads, 2)
        self.assertTrue(cfg.force_overwrite)
        self.assertTrue(cfg.verbose)

    def test_interval(self):
        cfg = parse_args(['--a', '-1', '--b', '3', '--n', '4', '--s', '0', '--target', 'abs'])
        self.assertEqual(cfg.partition.nodes.tolist(), [-1.0, 0.0, 1.0, 2.0, 3.0])

    def test_invalid_arguments(self):
        self.assertExitsWith2(['--n', '4', '--s', '1.0', '--target', 'sin'], "|s| must be < 1")
        self.assertExitsWith2(['--n', '4', '--s', '0.3', '--target', 'sin', '--bogus'])
        self.assertExitsWith2(['--n', '4', '--s', '0.3'], "Missing target")
        self.assertExitsWith2(['--nodes', '0,x,1', '--s', '0.3', '--target', 'sin'], "Malformed number list")
        self.assertExitsWith2(['--nodes', '0,0.5,0.4,1', '--s', '0.3', '--target', 'sin'])
        self.assertExitsWith2(['--n', '4', '--nodes', '0,0.5,1', '--s', '0.3', '--target', 'sin'])
        self.assertExitsWith2(['--n', '4', '--s', '0.1,0.2,0.3', '--target', 'sin'], "Expected 1 or 4 scale factors")
        self.assertExitsWith2(['--n', '1', '--s', '0.3', '--target', 'sin'])
        self.assertExitsWith2(['--n', '4', '--s', '0.3', '--target', 'sin', '--quad-points', '13'])
        self.assertExitsWith2(['--n', '4', '--s', '0.3', '--target', 'sin', '--threads', '0'])
        self.assertExitsWith2(['--n', '4', '--target', 'sin'], "Missing scale factor")
        self.assertExitsWith2(['--s', '0.3', '--target', 'sin'], "Missing partition")
        self.assertExitsWith2(['-c', os.path.join(FILES_DIR, 'missing.yml')], "File does not exist")

    def test_output_template(self):
        self.assertExitsWith2(['--n', '4', '--s', '0.3', '--target', 'sin', '--out-report', '{{ unknown }}.json'],
                              "Undefined variable")
        cfg = parse_args(['--n', '4', '--s', '0.3', '--target', 'csv:data/measured.csv', '--out-report',
                          'out/{{ target_name }}_n{{ n }}_d{{ depth }}.json'])
        self.assertEqual(cfg.outputs['report'], 'out/measured_n4_d6.json')


class TestRunDefinition(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        patcher = mock.patch('sys.stderr', io.StringIO())
        patcher.start()
        self.addCleanup(patcher.stop)

    def write_definition(self, content):
        path = os.path.join(self.tmp.name, 'run.yml')
        with io.open(path, 'w', encoding='utf8') as f:
            f.write(content)
        return path

    def test_definition_with_vars(self):
        path = self.write_definition(
            "n: 4\n"
            "s: 0.3\n"
            "target: runge\n"
            "quad:\n"
            "  points: 3\n"
            "vars:\n"
            "  label: base\n"
            "  prefix: \"{{ label }}-{{ target_name }}\"\n"
            "outputs:\n"
            "  coeffs: \"out/{{ prefix }}_n{{ n }}.csv\"\n")
        cfg = parse_args(['-c', path])
        self.assertEqual(cfg.partition.n, 4)
        self.assertEqual(cfg.target, 'runge')
        self.assertEqual(cfg.quad.panels_per_segment, 16)
        self.assertEqual(cfg.quad.points_per_panel, 3)
        self.assertEqual(cfg.outputs['coeffs'], 'out/base-runge_n4.csv')
        self.assertEqual(cfg.outputs['samples'], 'samples.csv')

    def test_flags_take_precedence(self):
        path = self.write_definition("nodes: [0, 0.3, 1]\ns: [0.1, 0.2]\ntarget: sin\ndepth: 3\n")
        cfg = parse_args(['-c', path])
        self.assertEqual(cfg.partition.nodes.tolist(), [0.0, 0.3, 1.0])
        self.assertEqual(list(cfg.scales), [0.1, 0.2])

        cfg = parse_args(['-c', path, '--n', '5', '--s', '0.4', '--target', 'cos'])
        self.assertEqual(cfg.partition, build_partition(0, 1, n=5))
        self.assertEqual(list(cfg.scales), [0.4] * 5)
        self.assertEqual(cfg.target, 'cos')
        self.assertEqual(cfg.eval_cfg.depth, 3)

    def test_invalid_definition(self):
        for content in ("n: 4\ns: 0.3\ntarget: sin\ncolour: red\n",
                        "n: four\ns: 0.3\ntarget: sin\n",
                        "n: 4\ns: [0.3, x]\ntarget: sin\n",
                        "- n\n- 4\n",
                        "n: [4\n"):
            with self.assertRaises(SystemExit) as cm:
                parse_args(['-c', self.write_definition(content)])
            self.assertEqual(cm.exception.code, 2)


class TestRun(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()
        for name, stream in (('sys.stdout', self.stdout), ('sys.stderr', self.stderr)):
            patcher = mock.patch(name, stream)
            patcher.start()
            self.addCleanup(patcher.stop)

    def tearDown(self):
        Log.level = Log.ERROR

    def argv(self, *args, directory=None):
        directory = directory or self.tmp.name
        return list(args) + ['--out-coeffs', os.path.join(directory, 'coeffs.csv'),
                             '--out-samples', os.path.join(directory, 'samples.csv'),
                             '--out-report', os.path.join(directory, 'report.json')]

    def path(self, name, directory=None):
        return os.path.join(directory or self.tmp.name, name)

    def report(self):
        with io.open(self.path('report.json'), 'r', encoding='utf8') as f:
            return json.load(f)

    def test_identity_is_represented_exactly(self):
        exit_code = run(parse_args(self.argv('--n', '4', '--s', '0.3', '--target', 'poly:0,1', '--depth', '3')))
        self.assertEqual(exit_code, 0)

        header, coefficients = read_columns(self.path('coeffs.csv'))
        self.assertEqual(header, ['k', 'alpha'])
        self.assertEqual(coefficients[:, 0].tolist(), [0, 1, 2, 3, 4])
        np.testing.assert_allclose(coefficients[:, 1], [0.0, 0.25, 0.5, 0.75, 1.0], rtol=0, atol=1e-12)

        header, samples = read_columns(self.path('samples.csv'))
        self.assertEqual(header, ['x', 'f_target', 'f_approx'])
        self.assertEqual(len(samples), 4 ** 4 + 1)
        np.testing.assert_allclose(samples[:, 2], samples[:, 0], rtol=0, atol=1e-12)

        report = self.report()
        self.assertLessEqual(report['collage_residual'], 1e-10)
        self.assertEqual(report['n'], 4)
        self.assertEqual(report['s'], [0.3] * 4)
        self.assertEqual(report['contraction'], 0.3)
        self.assertEqual(report['depth'], 3)
        self.assertEqual(report['quad'], {'panels': 16, 'points': 5})
        self.assertEqual(sorted(report), ['collage_bound', 'collage_residual', 'contraction', 'depth',
                                          'max_node_jump', 'measured_l2_error', 'n', 'objective', 'quad', 's'])

    def test_zero_scales_give_hat_projection(self):
        self.assertEqual(run(parse_args(self.argv('--n', '8', '--s', '0', '--target', 'sin', '--depth', '3'))), 0)
        _, coefficients = read_columns(self.path('coeffs.csv'))
        expected = hat_projection(np.sin, build_partition(0, 1, n=8), QuadConfig())
        np.testing.assert_allclose(coefficients[:, 1], expected, rtol=0, atol=1e-10)

    def test_zero_target(self):
        self.assertEqual(run(parse_args(self.argv('--n', '3', '--s', '0.5', '--target', 'zero', '--depth', '2'))), 0)
        _, coefficients = read_columns(self.path('coeffs.csv'))
        self.assertTrue(np.all(coefficients[:, 1] == 0.0))
        _, samples = read_columns(self.path('samples.csv'))
        self.assertTrue(np.all(samples[:, 1:] == 0.0))
        report = self.report()
        self.assertEqual(report['collage_residual'], 0.0)
        self.assertEqual(report['measured_l2_error'], 0.0)

    def test_reproducible(self):
        first = os.path.join(self.tmp.name, 'first')
        second = os.path.join(self.tmp.name, 'second')
        for directory in (first, second):
            argv = self.argv('--nodes', '0,0.2,0.7,1', '--s', '0.3,-0.5,0.2', '--target', 'runge', '--depth', '3',
                             directory=directory)
            self.assertEqual(run(parse_args(argv)), 0)
        for name in ('coeffs.csv', 'samples.csv', 'report.json'):
            with io.open(self.path(name, first), 'rb') as f:
                expected = f.read()
            with io.open(self.path(name, second), 'rb') as f:
                self.assertEqual(f.read(), expected)

    def test_existing_outputs(self):
        argv = self.argv('--n', '2', '--s', '0.1', '--target', 'cos', '--depth', '2')
        self.assertEqual(run(parse_args(argv)), 0)
        self.assertEqual(run(parse_args(argv)), 1)
        self.assertIn("Use '-f' flag to overwrite", self.stderr.getvalue())
        self.assertEqual(run(parse_args(argv + ['-f'])), 0)

    def test_existing_report_blocks_all_outputs(self):
        with io.open(self.path('report.json'), 'w', encoding='utf8') as f:
            f.write('{}')
        argv = self.argv('--n', '2', '--s', '0.1', '--target', 'cos', '--depth', '2')
        self.assertEqual(run(parse_args(argv)), 1)
        self.assertIn("Use '-f' flag to overwrite", self.stderr.getvalue())
        self.assertFalse(os.path.exists(self.path('coeffs.csv')))
        self.assertFalse(os.path.exists(self.path('samples.csv')))
        self.assertEqual(self.report(), {})

    def test_samples_not_covering_interval(self):
        argv = self.argv('--b', '2', '--n', '4', '--s', '0.2', '--target',
                         'csv:' + os.path.join(FILES_DIR, 'samples.csv'))
        self.assertEqual(run(parse_args(argv)), 1)
        self.assertIn("Error:", self.stderr.getvalue())
        self.assertFalse(os.path.exists(self.path('report.json')))

    def test_sampled_target(self):
        argv = self.argv('--n', '2', '--s', '0', '--target', 'csv:' + os.path.join(FILES_DIR, 'samples.csv'),
                         '--depth', '2')
        self.assertEqual(run(parse_args(argv)), 0)
        _, coefficients = read_columns(self.path('coeffs.csv'))
        # the piecewise linear samples are a hat function of the partition
        np.testing.assert_allclose(coefficients[:, 1], [0.0, 1.0, 0.0], rtol=0, atol=1e-12)

    def test_main(self):
        self.assertEqual(main(self.argv('--n', '4', '--s', '0.2', '--target', 'exp', '--depth', '2')), 0)
        self.assertEqual(Log.level, Log.INFO)
        summary = self.stdout.getvalue()
        self.assertIn("Target 'exp' on [0.0, 1.0] with 4 segments", summary)
        self.assertIn("collage bound:", summary)
        self.assertIn(self.path('report.json'), summary)

    def test_main_verbose(self):
        self.assertEqual(main(self.argv('--n', '2', '--s', '0.2', '--target', 'exp', '--depth', '1', '-v')), 0)
        self.assertEqual(Log.level, Log.DEBUG)
        self.assertIn("Writing file", self.stdout.getvalue())
