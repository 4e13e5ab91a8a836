# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module is responsible to write the verification reports.

A report is the command name, the validated run configuration, the list of
check records and (for constructing commands) the constructed object. It is
written once, at the end of the run, as JSON or CSV. """

import collections
import csv
import json
import logging
import sys
import numpy as np

from typing import Any, Dict, Iterable, List, Optional  # noqa: ignore=F401

from libflaggeom import EXIT_FAILURE, EXIT_PASS

__all__ = ['Check', 'Report', 'write_report', 'exit_code']

PASS = 'PASS'
FAIL = 'FAIL'
INCONCLUSIVE = 'INCONCLUSIVE'

VERDICTS = (PASS, FAIL, INCONCLUSIVE)

Check = collections.namedtuple(
    'Check', ['id', 'statement', 'instance', 'verdict', 'witness',
              'elapsed_ms'])

CSV_COLUMNS = ['id', 'instance', 'paper_ref', 'verdict', 'elapsed_ms',
               'witness']


class ReportEncoder(json.JSONEncoder):
    """ Encode the numpy scalars and arrays found in witnesses. """

    def default(self, o):  # pylint: disable=method-hidden
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.bool_):
            return bool(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        return super(ReportEncoder, self).default(o)


def check_as_dict(check):
    # type: (Check) -> Dict[str, Any]
    return {'id': check.id,
            'paper_ref': check.statement,
            'instance': check.instance,
            'verdict': check.verdict,
            'witness': check.witness,
            'elapsed_ms': check.elapsed_ms}


class Report(object):
    """ The outcome of one command. """

    def __init__(self, command, config, checks=None, result=None):
        # type: (str, Dict[str, Any], Optional[List[Check]], Any) -> None
        self.command = command
        self.config = config
        self.checks = list(checks or [])
        self.result = result

    def add(self, check):
        # type: (Check) -> None
        logging.info('%s %s: %s', check.id, check.instance, check.verdict)
        self.checks.append(check)

    def as_dict(self):
        # type: () -> Dict[str, Any]
        result = {'command': self.command,
                  'config': self.config,
                  'checks': [check_as_dict(check) for check in self.checks]}
        if self.result is not None:
            result['result'] = self.result
        return result

    def failures(self):
        # type: () -> List[Check]
        return [check for check in self.checks if check.verdict == FAIL]

    def inconclusive(self):
        # type: () -> List[Check]
        return [check for check in self.checks
                if check.verdict == INCONCLUSIVE]


def exit_code(report, allow_inconclusive=False):
    # type: (Report, bool) -> int
    """ One when a check failed, or was inconclusive without permission. """

    for check in report.failures():
        logging.error('%s %s failed: %s', check.id, check.instance,
                      json.dumps(check.witness, cls=ReportEncoder,
                                 sort_keys=True))
    unknown = report.inconclusive()
    for check in unknown:
        logging.warning('%s %s is inconclusive', check.id, check.instance)
    if report.failures() or (unknown and not allow_inconclusive):
        return EXIT_FAILURE
    return EXIT_PASS


def dumps(report):
    # type: (Report) -> str
    return json.dumps(report.as_dict(), cls=ReportEncoder, sort_keys=True,
                      indent=4)


def write_json(handle, report):
    handle.write(dumps(report))
    handle.write('\n')


def write_csv(handle, report):
    """ One row per check, instance and witness as compact JSON. """
    writer = csv.writer(handle, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for check in report.checks:
        writer.writerow([
            check.id,
            json.dumps(check.instance, cls=ReportEncoder, sort_keys=True),
            check.statement,
            check.verdict,
            '' if check.elapsed_ms is None else check.elapsed_ms,
            json.dumps(check.witness, cls=ReportEncoder, sort_keys=True)])


def write_report(report, output=None, output_format='json'):
    # type: (Report, Optional[str], str) -> None
    """ Write the report to the file, or to the standard output. """

    writer = write_csv if output_format == 'csv' else write_json
    if output is None:
        writer(sys.stdout, report)
        sys.stdout.flush()
        return
    logging.debug('writing %s report to %s', output_format, output)
    with open(output, 'w') as handle:
        writer(handle, report)
