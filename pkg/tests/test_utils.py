from unittest import TestCase

from ruamel.yaml import YAMLError

from fractal_approximator.utils import format_float
from fractal_approximator.utils import load_yaml
from fractal_approximator.utils import merge_dicts
from fractal_approximator.utils import round_significant
from fractal_approximator.utils import to_nice_json


class TestUtils(TestCase):
    def test_merge_dicts(self):
        d1 = {'a': 'foo', 'b': 123.456, 'c': True, 'd': {'x': 1, 'y': 2, 'z': 3},
              'e': ['my', 'very', 'own', 'context']}
        d2 = {'a': 'bar', 'd': {'x': 0.99, 'zz': {}},
              'e': ['new', 'list']}
        r = {'a': 'bar', 'b': 123.456, 'c': True, 'd': {'x': 0.99, 'y': 2, 'z': 3, 'zz': {}}, 'e': ['new', 'list']}
        self.assertEqual(merge_dicts(d1, d2), r)

        # unset values do not override
        self.assertEqual(merge_dicts({'n': 4, 'quad': {'panels': 8}}, {'n': None, 'quad': {'panels': None}, 's': None}),
                         {'n': 4, 'quad': {'panels': 8}, 's': None})
        self.assertEqual(merge_dicts(None, None), {})
        self.assertEqual(merge_dicts(None, {'a': 1}), {'a': 1})

    def test_load_yaml(self):
        self.assertEqual(
            load_yaml('a: 0\nb: 1.5\nn: 8\ns: [0.3, -0.2]\ntarget: sin\nquad:\n  panels: 16\n  points: 5\n'),
            {'a': 0, 'b': 1.5, 'n': 8, 's': [0.3, -0.2], 'target': 'sin', 'quad': {'panels': 16, 'points': 5}}
        )
        self.assertEqual(load_yaml(''), {})
        self.assertRaises(YAMLError, load_yaml, '  :wrong\na: foo\n')

    def test_format_float(self):
        self.assertEqual(format_float(0.1), '0.10000000000000001')
        self.assertEqual(format_float(0.1, 12), '0.1')
        self.assertEqual(format_float(2), '2')
        self.assertEqual(format_float(1.0 / 3.0, 5), '0.33333')
        self.assertEqual(float(format_float(1.0 / 3.0)), 1.0 / 3.0)

    def test_round_significant(self):
        self.assertEqual(round_significant(1.0 / 3.0), 0.333333333333)
        self.assertEqual(round_significant(123456.7891234567, 6), 123457.0)
        self.assertEqual(round_significant(0.0), 0.0)

    def test_to_nice_json(self):
        self.assertEqual(
            to_nice_json({'s': [0.3, -0.2], 'n': 2, 'quad': {'points': 5, 'panels': 16}}),
            '{\n    "n": 2,\n    "quad": {\n        "panels": 16,\n        "points": 5\n    },\n    "s": [\n'
            '        0.3,\n        -0.2\n    ]\n}\n'
        )
