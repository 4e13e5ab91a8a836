# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module is a collection of methods commonly used in this project. """
import functools
import logging
import multiprocessing
import os
import os.path
import sys

from typing import List, Any, Callable, Iterable  # noqa: ignore=F401

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 64


class Error(Exception):
    """ Base class of the precondition failures raised by this package. """

    def __init__(self, message, **details):
        # type: (str, **Any) -> None
        super(Error, self).__init__(message)
        self.details = details


def run_parallel(function, items, jobs=1):
    # type: (Callable[[Any], Any], Iterable[Any], int) -> List[Any]
    """ Apply the function on every item and keep the input order.

    :param function: module level callable (it has to be picklable)
    :param items: the work items
    :param jobs: number of worker processes, 1 runs in this process and
    0 (or None) lets the pool pick the CPU count
    :return: list of results """

    if jobs == 1:
        return [function(item) for item in items]

    pool = multiprocessing.Pool(jobs or None)
    try:
        return list(pool.imap(function, items))
    finally:
        pool.close()
        pool.join()


def reconfigure_logging(verbose_level):
    """ Reconfigure logging level and format based on the verbose flag.

    :param verbose_level: number of `-v` flags received by the command
    :return: no return value
    """
    # exit when nothing to do
    if verbose_level == 0:
        return

    root = logging.getLogger()
    level = logging.WARNING - min(logging.WARNING, (10 * verbose_level))
    root.setLevel(level)
    if verbose_level <= 3:
        fmt_string = '%(name)s: %(levelname)s: %(message)s'
    else:
        fmt_string = '%(name)s: %(levelname)s: %(funcName)s: %(message)s'
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(fmt=fmt_string))
    root.handlers = [handler]


def command_entry_point(function):
    # type: (Callable[[], int]) -> Callable[[], int]
    """ Decorator for command entry methods.

    The decorator initialize/shutdown logging and translates the failures
    into exit codes. Precondition failures of the library (instances of
    `Error`) are user errors, everything else from the operating system is
    an internal error.

    The return value of the decorated method is the exit code. """

    @functools.wraps(function)
    def wrapper(*args, **kwargs):
        # type: (*Any, **Any) -> int
        """ Do housekeeping tasks and execute the wrapped method. """

        try:
            logging.basicConfig(format='%(name)s: %(message)s',
                                level=logging.WARNING,
                                stream=sys.stderr)
            # this hack to get the executable name as %(name)
            logging.getLogger().name = os.path.basename(sys.argv[0])
            return function(*args, **kwargs)
        except KeyboardInterrupt:
            logging.warning('Keyboard interrupt')
            return 130  # signal received exit code for bash
        except Error as error:
            logging.error('%s: %s', type(error).__name__, error)
            return EXIT_USAGE
        except OSError:
            logging.exception('Internal error.')
            if logging.getLogger().isEnabledFor(logging.DEBUG):
                logging.error("Please report this bug and attach the output "
                              "to the bug report")
            else:
                logging.error("Please run this command again and turn on "
                              "verbose mode (add '-vvvv' as argument).")
            return EXIT_INTERNAL
        finally:
            logging.shutdown()

    return wrapper
