# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module implements the 'flag-geometry' command.

Every subcommand builds one report: the constructing commands put the
constructed object into it, the verifying commands the check records. The
report is written once, at the end of the run. """

import argparse  # noqa: ignore=F401
import collections
import json
import logging
import sys

from typing import Any, Callable, Dict, Optional  # noqa: ignore=F401

from libflaggeom import command_entry_point
from libflaggeom.arguments import parse_args_for_flag_geometry, run_config
from libflaggeom.checks import Context, run_check, run_suite
from libflaggeom.embedding import quasi_singular_hyperplane, \
    tensor_hyperplane
from libflaggeom.flags import CLASSES, FlagGeometry
from libflaggeom.gf import QuadraticExtension, find_irreducible_quadratic
from libflaggeom.hyperplanes import GeometricHyperplane, deepest_points
from libflaggeom.projective import ProjectiveSpace, gaussian_binomial
from libflaggeom.report import Report, exit_code, write_report
from libflaggeom.search import analyze_spreads, problem_hits, \
    search_spreads, write_catalog
from libflaggeom.spreads import LineSpread, canonical_spread, dual_spread, \
    piecemeal_spread, spread_from_matrix, spread_hyperplane, standard_spread

__all__ = ['flag_geometry']

# print the addition and multiplication tables up to this order
TABLES_UP_TO = 16


@command_entry_point
def flag_geometry(argv=None):
    # type: (Optional[Any]) -> int
    """ Entry point for flag-geometry command. """

    args = parse_args_for_flag_geometry(argv)
    report = COMMANDS[args.command](args)
    write_report(report, args.out, args.format)
    return exit_code(report, args.allow_inconclusive)


def context_of(args):
    # type: (argparse.Namespace) -> Context
    """ Mapping between the command line parameters and the check context.
    """

    return Context(args.n, args.field,
                   jobs=args.jobs,
                   seed=args.seed,
                   cap_flags=args.cap_flags,
                   cap_search=args.cap_search,
                   matrix=args.matrix,
                   hyperplane=load_result(args.input) if args.input and
                   args.command == 'verify' else None,
                   blocks=args.blocks,
                   first_k=args.first_k,
                   timings=args.timings)


def load_result(filename):
    # type: (str) -> Dict[str, Any]
    """ Read a JSON file; reports of the constructing commands are
    unwrapped to the object they carry. """

    with open(filename, 'r') as handle:
        data = json.load(handle)
    if isinstance(data, dict) and 'result' in data and 'command' in data:
        return data['result']
    return data


def space_of(args):
    # type: (argparse.Namespace) -> ProjectiveSpace
    return ProjectiveSpace(args.n, args.field)


def geometry_of(args):
    # type: (argparse.Namespace) -> FlagGeometry
    return FlagGeometry(space_of(args), args.cap_flags)


def extension_of(args):
    # type: (argparse.Namespace) -> QuadraticExtension
    return QuadraticExtension(args.field)


def field_command(args):
    # type: (argparse.Namespace) -> Report
    field = args.field
    result = dict(field.as_dict(), q=field.q,
                  irreducible_quadratic=list(
                      find_irreducible_quadratic(field)))
    if field.q <= TABLES_UP_TO:
        elements = field.elements
        result['addition'] = field.add(elements[:, None],
                                       elements[None, :]).tolist()
        result['multiplication'] = field.mul(elements[:, None],
                                             elements[None, :]).tolist()
        result['inverse'] = [None] + field.inv(elements[1:]).tolist()
    return Report(args.command, run_config(args), result=result)


def pg_command(args):
    # type: (argparse.Namespace) -> Report
    space = space_of(args)
    q = args.field.q
    subspaces = collections.OrderedDict()
    for dim in range(args.n):
        count = gaussian_binomial(args.n + 1, dim + 1, q)
        entry = {'dim': dim, 'count': count}
        if count <= args.cap_flags:
            entry['enumerated'] = len(space.enumerate(dim))
        subspaces[str(dim)] = entry
    result = {'n': args.n,
              'q': q,
              'points': space.size,
              'hyperplanes': space.size,
              'subspaces': subspaces}
    return Report(args.command, run_config(args), result=result)


def flags_command(args):
    # type: (argparse.Namespace) -> Report
    geometry = geometry_of(args)
    kinds = collections.Counter(line.kind for line in geometry.lines)
    classes = collections.Counter(
        CLASSES[code] for code in geometry.class_matrix()[0])
    result = {'n': args.n,
              'q': geometry.q,
              'flags': geometry.size,
              'lines': len(geometry.lines),
              'line_kinds': dict(kinds),
              'line_size': geometry.q + 1,
              'lines_per_flag': len(geometry.flag_lines[0]),
              'neighbors_per_flag': len(geometry.neighbors[0]),
              'first_flag': geometry.format_flag(0),
              'classes_from_first_flag': dict(classes)}
    return Report(args.command, run_config(args), result=result)


def hyperplane_command(args):
    # type: (argparse.Namespace) -> Report
    geometry = geometry_of(args)
    space = geometry.space
    if args.kind == 'tensor':
        hyperplane = tensor_hyperplane(geometry, args.matrix)
    elif args.kind == 'quasi-singular':
        point = space.point(int(space.index_of(args.point)))
        plane = space.hyperplane(int(space.index_of(args.hyperplane)))
        hyperplane = quasi_singular_hyperplane(geometry, point, plane)
    else:
        hyperplane = GeometricHyperplane.from_dict(geometry,
                                                   load_result(args.input))
    return Report(args.command, run_config(args),
                  result=hyperplane_result(geometry, hyperplane, args.rle))


def hyperplane_result(geometry, hyperplane, rle):
    # type: (FlagGeometry, GeometricHyperplane, bool) -> Dict[str, Any]
    result = hyperplane.as_dict(rle)
    result['n'] = geometry.n
    result['field'] = geometry.space.field.as_dict()
    result['deepest'] = [geometry.format_flag(flag) for flag
                         in deepest_points(geometry, hyperplane.members)]
    return result


def spread_command(args):
    # type: (argparse.Namespace) -> Report
    space = space_of(args)
    if args.kind == 'standard':
        spread = standard_spread(space, extension_of(args), args.a, args.b)
    elif args.kind == 'canonical':
        spread, _ = canonical_spread(space, extension_of(args), args.omega)
    elif args.kind == 'matrix':
        spread = spread_from_matrix(space, args.matrix)
    elif args.kind == 'piecemeal':
        spread = piecemeal_spread(space, args.blocks)
    else:
        spread = LineSpread.from_dict(load_result(args.input), space)
    return Report(args.command, run_config(args), result=spread.as_dict())


def spread_of(args, space):
    # type: (argparse.Namespace, ProjectiveSpace) -> LineSpread
    """ The spread of the dual and spread-hyperplane commands. """

    if args.input is not None:
        return LineSpread.from_dict(load_result(args.input), space)
    if args.matrix is not None:
        return spread_from_matrix(space, args.matrix)
    spread, _ = canonical_spread(space, extension_of(args), args.omega)
    return spread


def dual_command(args):
    # type: (argparse.Namespace) -> Report
    space = space_of(args)
    dual = dual_spread(spread_of(args, space))
    return Report(args.command, run_config(args), result=dual.as_dict())


def spread_hyperplane_command(args):
    # type: (argparse.Namespace) -> Report
    geometry = geometry_of(args)
    spread = spread_of(args, geometry.space)
    hyperplane = spread_hyperplane(geometry, spread)
    return Report(args.command, run_config(args),
                  result=hyperplane_result(geometry, hyperplane, args.rle))


def verify_command(args):
    # type: (argparse.Namespace) -> Report
    report = Report(args.command, run_config(args))
    report.add(run_check(args.check, context_of(args)))
    return report


def search_command(args):
    # type: (argparse.Namespace) -> Report
    geometry = geometry_of(args)
    found = search_spreads(geometry.space, args.mode, args.first_k,
                           args.cap_search, args.jobs)
    entries = analyze_spreads(geometry, found.spreads, jobs=args.jobs)
    if args.catalog:
        write_catalog(args.catalog, geometry.space, entries)
    verdicts = collections.Counter(entry['standard'] for entry in entries)
    result = {'spreads': len(entries),
              'nodes': found.nodes,
              'complete': found.complete,
              'verdicts': dict(verdicts),
              'problem_hits': [entry['index']
                               for entry in problem_hits(entries)],
              'entries': entries}
    return Report(args.command, run_config(args), result=result)


def suite_command(args):
    # type: (argparse.Namespace) -> Report
    report = Report(args.command, run_config(args))
    for check in run_suite(context_of(args)):
        report.add(check)
    logging.info('suite: %d checks, %d failed', len(report.checks),
                 len(report.failures()))
    return report


COMMANDS = {
    'field': field_command,
    'pg': pg_command,
    'flags': flags_command,
    'hyperplane': hyperplane_command,
    'spread': spread_command,
    'dual': dual_command,
    'spread-hyperplane': spread_hyperplane_command,
    'verify': verify_command,
    'search-spreads': search_command,
    'suite': suite_command,
}  # type: Dict[str, Callable[[argparse.Namespace], Report]]


if __name__ == '__main__':
    sys.exit(flag_geometry())
