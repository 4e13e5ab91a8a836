# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module parses and validates arguments for the command-line
interface.

It uses argparse module to create the command line parser. Every subcommand
shares the instance options (dimension, field, caps, output), the
constructions add their own parameters.

It also implements basic validation methods, related to the command.
Validations are mostly turning the raw strings into fields and matrices,
and rejecting inconsistent combinations through `parser.error`. """

import argparse
import logging
import sys

from typing import Any, Dict, List, Optional  # noqa: ignore=F401

from libflaggeom import Error, reconfigure_logging
from libflaggeom.checks import ALIASES, REGISTRY
from libflaggeom.gf import field_of_order, make_field
from libflaggeom.linalg import matrix_to_list, parse_matrix
from libflaggeom.search import MODES

__all__ = ['parse_args_for_flag_geometry', 'run_config']

HYPERPLANE_KINDS = ('tensor', 'quasi-singular', 'from-file')
SPREAD_KINDS = ('standard', 'canonical', 'matrix', 'piecemeal', 'from-file')
FORMATS = ('json', 'csv')


def parse_args_for_flag_geometry(argv=None):
    # type: (Optional[List[str]]) -> argparse.Namespace
    """ Parse and validate command-line arguments for flag-geometry. """

    parser = create_parser()
    args = parser.parse_args(argv)

    reconfigure_logging(args.verbose)
    logging.debug('Raw arguments %s', sys.argv if argv is None else argv)

    normalize_args(parser, args)
    validate_args(parser, args)
    logging.debug('Parsed arguments: %s', args)
    return args


def normalize_args(parser, args):
    # type: (argparse.ArgumentParser, argparse.Namespace) -> None
    """ Turn the field and matrix options into objects.

    :param parser: The command line parser object.
    :param args: Parsed argument object. (Will be mutated.) """

    try:
        if args.q is not None:
            args.field = field_of_order(args.q)
            if args.modulus is not None:
                args.field = make_field(args.field.p, args.field.k,
                                        args.modulus)
        else:
            args.field = make_field(args.p, args.k, args.modulus)
    except Error as error:
        parser.error(message=str(error))

    # options of some subcommands only, make them always present.
    for name in ('matrix', 'blocks', 'input', 'a', 'b', 'omega', 'first_k',
                 'point', 'hyperplane', 'kind', 'check', 'catalog'):
        if not hasattr(args, name):
            setattr(args, name, None)
    if not hasattr(args, 'mode'):
        args.mode = MODES[0]
    if not hasattr(args, 'rle'):
        args.rle = False

    order = args.n + 1
    try:
        if args.matrix is not None:
            args.matrix = parse_matrix(args.field, args.matrix, order)
        if args.blocks is not None:
            args.blocks = [parse_matrix(args.field, block, 2)
                           for block in args.blocks]
    except Error as error:
        parser.error(message=str(error))
    except (IOError, OSError) as error:
        parser.error(message='cannot read matrix: {0}'.format(error))


def validate_args(parser, args):
    # type: (argparse.ArgumentParser, argparse.Namespace) -> None
    """ Command line parsing is done by the argparse module, but semantic
    validation still needs to be done.

    :param parser: The command line parser object.
    :param args: Parsed argument object.
    :return: No return value, but this call might throw when validation
    fails. """

    if args.n < 1:
        parser.error(message='--n must be positive')
    elif args.cap_flags < 1 or args.cap_search < 1:
        parser.error(message='caps must be positive')
    elif args.jobs < 0:
        parser.error(message='--jobs must not be negative')
    elif args.seed < 0:
        parser.error(message='--seed must not be negative')
    elif args.first_k is not None and args.first_k < 1:
        parser.error(message='--first-k must be positive')
    elif args.command == 'hyperplane' and args.kind == 'tensor' and \
            args.matrix is None:
        parser.error(message='tensor hyperplane needs --matrix')
    elif args.command == 'hyperplane' and args.kind == 'quasi-singular' and \
            (args.point is None or args.hyperplane is None):
        parser.error(message='quasi-singular hyperplane needs --point and '
                             '--hyperplane')
    elif args.kind == 'from-file' and args.input is None:
        parser.error(message='from-file needs --input')
    elif args.command == 'spread' and args.kind == 'matrix' and \
            args.matrix is None:
        parser.error(message='spread from a matrix needs --matrix')
    elif args.command == 'spread' and args.kind == 'standard' and \
            (args.a is None or args.b is None or len(args.a) != len(args.b)):
        parser.error(message='standard spread needs --a and --b of equal '
                             'length')
    elif args.command == 'spread' and args.kind == 'piecemeal' and \
            args.blocks is None:
        parser.error(message='piecemeal spread needs --blocks')
    elif args.command == 'search-spreads' and args.mode == 'first_k' and \
            args.first_k is None:
        parser.error(message='first_k mode needs --first-k')


def run_config(args):
    # type: (argparse.Namespace) -> Dict[str, Any]
    """ The validated configuration as it is written into the reports. """

    config = {'subcommand': args.command,
              'n': args.n,
              'field': args.field.as_dict(),
              'q': args.field.q,
              'cap_flags': args.cap_flags,
              'cap_search': args.cap_search,
              'seed': args.seed,
              'jobs': args.jobs,
              'out': args.out,
              'format': args.format,
              'allow_inconclusive': args.allow_inconclusive}
    parameters = {}  # type: Dict[str, Any]
    for name in ('kind', 'check', 'a', 'b', 'omega', 'point', 'hyperplane',
                 'input', 'first_k', 'catalog'):
        if getattr(args, name) is not None:
            parameters[name] = getattr(args, name)
    if args.matrix is not None:
        parameters['matrix'] = matrix_to_list(args.matrix)
    if args.blocks is not None:
        parameters['blocks'] = [matrix_to_list(b) for b in args.blocks]
    if args.command == 'search-spreads':
        parameters['mode'] = args.mode
    config['parameters'] = parameters
    return config


def create_parser():
    # type: () -> argparse.ArgumentParser
    """ Creates the parser with one subparser per command. """

    parser = create_default_parser()
    common = create_common_parser()
    commands = parser.add_subparsers(dest='command', metavar='<command>')
    commands.required = True

    commands.add_parser(
        'field', parents=[common], help="""Construct GF(q) and print its
        tables.""",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    commands.add_parser(
        'pg', parents=[common], help="""Construct PG(n, q) and count its
        subspaces.""",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    commands.add_parser(
        'flags', parents=[common], help="""Construct the flag geometry and
        summarize it.""",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)

    hyperplane = commands.add_parser(
        'hyperplane', parents=[common], help="""Construct a hyperplane of
        the flag geometry.""",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    hyperplane.add_argument(
        dest='kind', choices=HYPERPLANE_KINDS, help="""The construction.""")
    parser_add_matrix(hyperplane)
    parser_add_input(hyperplane)
    hyperplane.add_argument(
        '--point',
        metavar='<vector>',
        type=integer_list,
        help="""Coordinates of the point a of H_{a,A}, comma separated.""")
    hyperplane.add_argument(
        '--hyperplane',
        metavar='<covector>',
        type=integer_list,
        help="""Coordinates of the hyperplane A of H_{a,A}, comma
        separated.""")
    parser_add_rle(hyperplane)

    spread = commands.add_parser(
        'spread', parents=[common], help="""Construct a line spread of
        PG(n, q).""",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    spread.add_argument(
        dest='kind', choices=SPREAD_KINDS, help="""The construction.""")
    parser_add_matrix(spread)
    parser_add_blocks(spread)
    parser_add_input(spread)
    parser_add_extension(spread)

    for name, text in (('dual', """Construct the dual of a spread."""),
                       ('spread-hyperplane', """Construct the hyperplane of
                       a spread which admits a dual.""")):
        command = commands.add_parser(
            name, parents=[common], help=text,
            formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        parser_add_input(command, """Spread file, the canonical spread when
        not given.""")
        parser_add_matrix(command)
        parser_add_extension(command)
        parser_add_rle(command)

    verify = commands.add_parser(
        'verify', parents=[common], help="""Run one verification check.""",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    verify.add_argument(
        dest='check',
        choices=sorted(list(REGISTRY) + list(ALIASES)),
        metavar='<check>',
        help="""The check to run: {0}.""".format(
            ', '.join(sorted(list(REGISTRY) + list(ALIASES)))))
    parser_add_matrix(verify)
    parser_add_blocks(verify)
    parser_add_input(verify, """Hyperplane file for the hyperplane,
    maximality and connectivity checks.""")
    parser_add_search(verify)

    search = commands.add_parser(
        'search-spreads', parents=[common], help="""Enumerate line spreads
        and analyze them.""",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser_add_search(search)
    search.add_argument(
        '--mode',
        choices=MODES,
        default=MODES[0],
        help="""Visit the whole search tree or stop after --first-k
        spreads.""")
    search.add_argument(
        '--catalog',
        metavar='<file>',
        help="""Append the analyzed spreads to this JSON-lines file.""")

    commands.add_parser(
        'suite', parents=[common], help="""Run the full verification
        battery. The instances are fixed, --n and --q are ignored.""",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    return parser


def create_default_parser():
    # type: () -> argparse.ArgumentParser
    """ Creates command line parser for the program. """

    parser = argparse.ArgumentParser(
        prog='flag-geometry',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    return parser


def create_common_parser():
    # type: () -> argparse.ArgumentParser
    """ Creates the options every subcommand accepts. """

    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        '--verbose',
        '-v',
        action='count',
        default=0,
        help="""Enable verbose output from '%(prog)s'. A second, third and
        fourth flags increases verbosity.""")

    instance = parser.add_argument_group('instance options')
    instance.add_argument(
        '--n',
        metavar='<dimension>',
        type=int,
        default=3,
        help="""Projective dimension of PG(n, q).""")
    instance.add_argument(
        '--q',
        metavar='<order>',
        type=int,
        help="""Order of the field, a prime power. Takes precedence over
        --p and --k.""")
    instance.add_argument(
        '--p',
        metavar='<prime>',
        type=int,
        default=2,
        help="""Characteristic of the field.""")
    instance.add_argument(
        '--k',
        metavar='<degree>',
        type=int,
        default=1,
        help="""Degree of the field over its prime field.""")
    instance.add_argument(
        '--modulus',
        metavar='<coefficients>',
        action=CommaSeparatedIntegers,
        help="""Monic irreducible modulus of degree k, coefficients from the
        constant term up, comma separated. Discovered when not given.""")

    limits = parser.add_argument_group('limits')
    limits.add_argument(
        '--cap-flags',
        metavar='<count>',
        type=int,
        default=20000,
        help="""Refuse to build flag geometries with more flags.""")
    limits.add_argument(
        '--cap-search',
        metavar='<count>',
        type=int,
        default=2000000,
        help="""Largest exhaustive enumeration. Beyond it the checks run on
        a seeded sample and the spread search gives up.""")
    limits.add_argument(
        '--seed',
        metavar='<seed>',
        type=int,
        default=0,
        help="""Seed of the sampled checks.""")
    limits.add_argument(
        '--jobs',
        '-j',
        metavar='<count>',
        type=int,
        default=1,
        help="""Number of worker processes, 0 uses every CPU.""")

    output = parser.add_argument_group('output control options')
    output.add_argument(
        '--out',
        '-o',
        metavar='<file>',
        help="""Write the report into this file instead of the standard
        output.""")
    output.add_argument(
        '--format',
        choices=FORMATS,
        default='json',
        help="""Format of the report.""")
    output.add_argument(
        '--allow-inconclusive',
        action='store_true',
        help="""Exit with zero when a check could not decide.""")
    output.add_argument(
        '--timings',
        action='store_true',
        help="""Record the wall time of every check. The reports are not
        reproducible byte for byte with this flag.""")
    return parser


def parser_add_matrix(parser):
    # type: (argparse.ArgumentParser) -> None
    parser.add_argument(
        '--matrix',
        metavar='<matrix>',
        help="""An (n+1)x(n+1) matrix: a row-major grid '[[0,1],[1,1]]',
        'I', 'O', 'diag(A, B, ...)' or '@file'.""")


def parser_add_blocks(parser):
    # type: (argparse.ArgumentParser) -> None
    parser.add_argument(
        '--blocks',
        metavar='<matrix>',
        action='append',
        help="""A 2x2 block of the piecemeal construction. (You can specify
        this option multiple times.)""")


def parser_add_input(parser, text="""Input file, as written by the
        constructing command."""):
    # type: (argparse.ArgumentParser, str) -> None
    parser.add_argument(
        '--input',
        metavar='<file>',
        help=text)


def parser_add_rle(parser):
    # type: (argparse.ArgumentParser) -> None
    parser.add_argument(
        '--rle',
        action='store_true',
        help="""Write hyperplane members as runs of the flag bitmap.""")


def parser_add_extension(parser):
    # type: (argparse.ArgumentParser) -> None
    parser.add_argument(
        '--omega',
        metavar='<element>',
        type=int,
        help="""Generator of the quadratic extension, as an element code
        u + v q. The adjoined root when not given.""")
    parser.add_argument(
        '--a',
        metavar='<elements>',
        type=integer_list,
        help="""First tuple of a standard spread, element codes of the
        quadratic extension, comma separated.""")
    parser.add_argument(
        '--b',
        metavar='<elements>',
        type=integer_list,
        help="""Second tuple of a standard spread.""")


def parser_add_search(parser):
    # type: (argparse.ArgumentParser) -> None
    parser.add_argument(
        '--first-k',
        metavar='<count>',
        type=int,
        help="""Stop the spread search after this many spreads.""")


def integer_list(text):
    # type: (str) -> List[int]
    try:
        return [int(value) for value in text.split(',') if value.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            'expected comma separated integers, got {0}'.format(text))


class CommaSeparatedIntegers(argparse.Action):
    """ argparse Action class to read a comma separated integer list. """

    def __call__(self, __parser, namespace, values, __option_string=None):
        try:
            setattr(namespace, self.dest, integer_list(values))
        except argparse.ArgumentTypeError as error:
            raise argparse.ArgumentError(self, str(error))

