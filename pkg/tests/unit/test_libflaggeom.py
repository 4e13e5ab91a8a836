# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.

import libflaggeom as sut
import unittest


def square(value):
    return value * value


class RunParallelTest(unittest.TestCase):

    def test_in_process(self):
        self.assertEqual([0, 1, 4, 9], sut.run_parallel(square, range(4)))

    def test_pool_keeps_order(self):
        self.assertEqual([square(x) for x in range(20)],
                         sut.run_parallel(square, range(20), 3))


class ErrorTest(unittest.TestCase):

    def test_details(self):
        error = sut.Error('bad input', n=3, q=2)
        self.assertEqual('bad input', str(error))
        self.assertEqual({'n': 3, 'q': 2}, error.details)


class EntryPointTest(unittest.TestCase):

    def test_return_value(self):
        @sut.command_entry_point
        def passing():
            return 0

        self.assertEqual(0, passing())

    def test_library_error(self):
        @sut.command_entry_point
        def failing():
            raise sut.Error('precondition')

        self.assertEqual(sut.EXIT_USAGE, failing())

    def test_os_error(self):
        @sut.command_entry_point
        def failing():
            raise OSError('disk')

        self.assertEqual(sut.EXIT_INTERNAL, failing())

    def test_interrupt(self):
        @sut.command_entry_point
        def interrupted():
            raise KeyboardInterrupt()

        self.assertEqual(130, interrupted())
