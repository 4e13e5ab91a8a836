# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.

import libflaggeom.report as sut
import csv
import json
import os
import os.path
import tempfile
import unittest
import numpy as np


def check(verdict, witness=None, elapsed=None):
    return sut.Check('hexagon', 'A(2,q) is a generalized hexagon',
                     {'n': 2, 'q': 2}, verdict, witness or {}, elapsed)


class ReportTest(unittest.TestCase):

    def test_as_dict(self):
        report = sut.Report('verify', {'n': 2})
        report.add(check(sut.PASS))
        data = report.as_dict()
        self.assertEqual('verify', data['command'])
        self.assertEqual({'n': 2}, data['config'])
        self.assertEqual(1, len(data['checks']))
        self.assertEqual('PASS', data['checks'][0]['verdict'])
        self.assertNotIn('result', data)

    def test_result(self):
        report = sut.Report('field', {}, result={'q': 4})
        self.assertEqual({'q': 4}, report.as_dict()['result'])

    def test_numpy_values_are_encoded(self):
        witness = {'size': np.int64(13), 'valid': np.bool_(True),
                   'flags': np.arange(3), 'sizes': {2, 1}}
        report = sut.Report('verify', {}, [check(sut.PASS, witness)])
        data = json.loads(sut.dumps(report))
        self.assertEqual({'size': 13, 'valid': True, 'flags': [0, 1, 2],
                          'sizes': [1, 2]}, data['checks'][0]['witness'])


class ExitCodeTest(unittest.TestCase):

    def test_pass(self):
        report = sut.Report('suite', {}, [check(sut.PASS), check(sut.PASS)])
        self.assertEqual(0, sut.exit_code(report))

    def test_fail(self):
        report = sut.Report('suite', {}, [check(sut.PASS), check(sut.FAIL)])
        self.assertEqual(1, sut.exit_code(report))
        self.assertEqual(1, sut.exit_code(report, True))
        self.assertEqual(1, len(report.failures()))

    def test_inconclusive(self):
        report = sut.Report('suite', {}, [check(sut.INCONCLUSIVE)])
        self.assertEqual(1, sut.exit_code(report))
        self.assertEqual(0, sut.exit_code(report, True))

    def test_constructing_command(self):
        self.assertEqual(0, sut.exit_code(sut.Report('pg', {}, result={})))


class WriteReportTest(unittest.TestCase):

    def setUp(self):
        self.report = sut.Report('suite', {'n': 2},
                                 [check(sut.PASS, {'size': 13}, 5),
                                  check(sut.FAIL)])

    def test_json_file(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            filename = os.path.join(tmp_dir, 'report.json')
            sut.write_report(self.report, filename)
            with open(filename, 'r') as handle:
                self.assertEqual(self.report.as_dict(), json.load(handle))

    def test_csv_file(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            filename = os.path.join(tmp_dir, 'report.csv')
            sut.write_report(self.report, filename, 'csv')
            with open(filename, 'r') as handle:
                rows = list(csv.reader(handle))
        self.assertEqual(sut.CSV_COLUMNS, rows[0])
        self.assertEqual(3, len(rows))
        first = dict(zip(rows[0], rows[1]))
        self.assertEqual('PASS', first['verdict'])
        self.assertEqual('5', first['elapsed_ms'])
        self.assertEqual({'size': 13}, json.loads(first['witness']))
        self.assertEqual('', dict(zip(rows[0], rows[2]))['elapsed_ms'])
