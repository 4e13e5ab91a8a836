# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.

import libflaggeom.cli as sut
import contextlib
import io
import json
import os
import os.path
import tempfile
import unittest


class CommandTest(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.stderr = contextlib.redirect_stderr(io.StringIO())
        self.stderr.__enter__()

    def tearDown(self):
        self.stderr.__exit__(None, None, None)
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def run_command(self, name, *argv):
        output = self.path(name)
        code = sut.flag_geometry(list(argv) + ['--out', output])
        report = None
        if os.path.exists(output):
            with open(output, 'r') as handle:
                report = json.load(handle)
        return code, report

    def test_field(self):
        code, report = self.run_command('field.json', 'field', '--q', '4')
        self.assertEqual(0, code)
        self.assertEqual('field', report['command'])
        result = report['result']
        self.assertEqual(4, result['q'])
        self.assertEqual([None, 1, 3, 2], result['inverse'])

    def test_pg(self):
        code, report = self.run_command('pg.json', 'pg', '--n', '3')
        self.assertEqual(0, code)
        subspaces = report['result']['subspaces']
        self.assertEqual(35, subspaces['1']['count'])
        self.assertEqual(35, subspaces['1']['enumerated'])

    def test_flags(self):
        code, report = self.run_command('flags.json', 'flags', '--n', '2')
        self.assertEqual(0, code)
        result = report['result']
        self.assertEqual(21, result['flags'])
        self.assertEqual(14, result['lines'])
        self.assertEqual(2, result['lines_per_flag'])
        self.assertEqual({'PENCIL': 7, 'AXIAL': 7}, result['line_kinds'])

    def test_hyperplane_round_trip(self):
        code, report = self.run_command(
            'singular.json', 'hyperplane', 'quasi-singular', '--n', '2',
            '--point', '0,0,1', '--hyperplane', '0,1,0', '--rle')
        self.assertEqual(0, code)
        self.assertEqual(13, report['result']['size'])
        self.assertEqual(1, len(report['result']['deepest']))
        code, copy = self.run_command(
            'copy.json', 'hyperplane', 'from-file', '--n', '2',
            '--input', self.path('singular.json'))
        self.assertEqual(0, code)
        self.assertEqual(13, copy['result']['size'])
        code, verdict = self.run_command(
            'verify.json', 'verify', 'maximality', '--n', '2',
            '--input', self.path('singular.json'))
        self.assertEqual(0, code)
        self.assertEqual('PASS', verdict['checks'][0]['verdict'])

    def test_scalar_matrix_is_a_usage_error(self):
        code, report = self.run_command('scalar.json', 'hyperplane',
                                        'tensor', '--matrix', 'I')
        self.assertEqual(2, code)
        self.assertIsNone(report)

    def test_spread_commands(self):
        code, report = self.run_command('spread.json', 'spread', 'canonical')
        self.assertEqual(0, code)
        self.assertEqual(5, len(report['result']['lines']))
        code, dual = self.run_command('dual.json', 'dual', '--input',
                                      self.path('spread.json'))
        self.assertEqual(0, code)
        self.assertEqual(5, len(dual['result']['members']))
        code, hyperplane = self.run_command(
            'hyperplane.json', 'spread-hyperplane', '--input',
            self.path('spread.json'))
        self.assertEqual(0, code)
        self.assertEqual(45, hyperplane['result']['size'])

    def test_standard_spread(self):
        code, report = self.run_command('standard.json', 'spread', 'standard',
                                        '--a', '1,1', '--b', '2,3')
        self.assertEqual(0, code)
        self.assertEqual('STANDARD', report['result']['tag']['kind'])

    def test_verify(self):
        code, report = self.run_command(
            'theorem.json', 'verify', 'theorem-1-14', '--n', '3', '--q', '2',
            '--matrix', 'diag([[0,1],[1,1]],[[0,1],[1,1]])')
        self.assertEqual(0, code)
        check = report['checks'][0]
        self.assertEqual('tensor-spread-correspondence', check['id'])
        self.assertEqual(45, check['witness']['size'])
        self.assertIsNone(check['elapsed_ms'])

    def test_not_applicable(self):
        code, report = self.run_command('hexagon.json', 'verify', 'hexagon',
                                        '--n', '3')
        self.assertEqual(2, code)

    def test_csv(self):
        output = self.path('hexagon.csv')
        code = sut.flag_geometry(['verify', 'hexagon', '--n', '2',
                                  '--format', 'csv', '--out', output])
        self.assertEqual(0, code)
        with open(output, 'r') as handle:
            lines = handle.read().splitlines()
        self.assertEqual(2, len(lines))
        self.assertTrue(lines[1].startswith('hexagon,'))

    def test_search(self):
        catalog = self.path('catalog.jsonl')
        code, report = self.run_command(
            'search.json', 'search-spreads', '--mode', 'first_k',
            '--first-k', '2', '--catalog', catalog)
        self.assertEqual(0, code)
        self.assertEqual(2, report['result']['spreads'])
        self.assertEqual([], report['result']['problem_hits'])
        with open(catalog, 'r') as handle:
            self.assertEqual(2, len(handle.readlines()))
