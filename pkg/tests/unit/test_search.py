# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.

import libflaggeom.search as sut
from libflaggeom import Error
from libflaggeom.flags import FlagGeometry
from libflaggeom.gf import field_of_order
from libflaggeom.projective import ProjectiveSpace
from libflaggeom.spreads import STANDARD, EvenDimension, is_line_spread
import os
import os.path
import tempfile
import unittest

GF2 = field_of_order(2)


class SearchTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.space = ProjectiveSpace(3, GF2)
        cls.found = sut.search_spreads(cls.space)

    def test_exhaustive_count(self):
        self.assertEqual(56, len(self.found.spreads))
        self.assertTrue(self.found.complete)
        self.assertGreater(self.found.nodes, 56)

    def test_every_result_is_a_spread(self):
        for indices in self.found.spreads:
            spread = sut.catalog_spread(self.space, indices)
            self.assertEqual(5, len(spread))
            self.assertTrue(is_line_spread(self.space, spread.lines)[0])
        self.assertEqual(56, len(set(tuple(s) for s in self.found.spreads)))

    def test_parallel_agrees(self):
        parallel = sut.search_spreads(self.space, jobs=2)
        self.assertEqual(self.found.spreads, parallel.spreads)
        self.assertEqual(self.found.nodes, parallel.nodes)

    def test_first_k(self):
        found = sut.search_spreads(self.space, sut.FIRST_K, 3)
        self.assertEqual(3, len(found.spreads))
        self.assertTrue(found.complete)
        for spread in found.spreads:
            self.assertIn(spread, self.found.spreads)

    def test_cap(self):
        with self.assertRaises(sut.SearchCapExceeded):
            sut.search_spreads(self.space, cap=2)
        with self.assertRaises(sut.SearchCapExceeded):
            sut.search_spreads(self.space, sut.FIRST_K, 10, cap=2)

    def test_bad_arguments(self):
        with self.assertRaises(EvenDimension):
            sut.search_spreads(ProjectiveSpace(2, GF2))
        with self.assertRaises(Error):
            sut.search_spreads(self.space, 'random')
        with self.assertRaises(Error):
            sut.search_spreads(self.space, sut.FIRST_K, 0)


class AnalyzeTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.geometry = FlagGeometry(ProjectiveSpace(3, GF2))
        found = sut.search_spreads(cls.geometry.space, sut.FIRST_K, 4)
        cls.entries = sut.analyze_spreads(cls.geometry, found.spreads)

    def test_entries(self):
        self.assertEqual(4, len(self.entries))
        for index, entry in enumerate(self.entries):
            self.assertEqual(index, entry['index'])
            self.assertEqual(STANDARD, entry['standard'])
            self.assertTrue(entry['dual'])
            self.assertEqual(45, entry['hyperplane_size'])
            self.assertTrue(entry['from_embedding'])
        self.assertEqual([], sut.problem_hits(self.entries))
        self.assertEqual([], sut.inconclusive(self.entries))

    def test_problem_hits(self):
        entries = [dict(self.entries[0], standard='NOT_STANDARD'),
                   dict(self.entries[1], standard='NOT_STANDARD',
                        dual=False)]
        self.assertEqual([entries[0]], sut.problem_hits(entries))

    def test_broken_entries(self):
        self.assertEqual([], sut.broken_entries(self.entries))
        entries = [self.entries[0],
                   dict(self.entries[1], standard='NOT_STANDARD',
                        dual=False, from_embedding=None),
                   dict(self.entries[2], standard='NOT_STANDARD'),
                   dict(self.entries[3], standard='INCONCLUSIVE')]
        self.assertEqual([1, 2], [entry['index'] for entry
                                  in sut.broken_entries(entries)])
        unembedded = dict(self.entries[0], from_embedding=False)
        self.assertEqual([unembedded], sut.broken_entries([unembedded]))

    def test_catalog(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            filename = os.path.join(tmp_dir, 'catalog.jsonl')
            sut.write_catalog(filename, self.geometry.space, self.entries)
            sut.write_catalog(filename, self.geometry.space, self.entries[:1])
            records = sut.read_catalog(filename)
        self.assertEqual(5, len(records))
        self.assertEqual(3, records[0]['n'])
        self.assertEqual(self.entries[0]['lines'], records[4]['lines'])
