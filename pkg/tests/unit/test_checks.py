# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.

import libflaggeom.checks as sut
from libflaggeom.embedding import quasi_singular_hyperplane
from libflaggeom.gf import field_of_order
from libflaggeom.linalg import parse_matrix
from libflaggeom.report import FAIL, PASS
import os
import unittest

SLOW = os.getenv('FLAGGEOM_SLOW')


def context(n, q, **kwargs):
    return sut.Context(n, field_of_order(q), **kwargs)


class RegistryTest(unittest.TestCase):

    def test_suite_names_are_registered(self):
        for name, _, _ in sut.SUITE:
            self.assertIn(name, sut.REGISTRY)

    def test_aliases(self):
        for alias, name in sut.ALIASES.items():
            self.assertIn(name, sut.REGISTRY)
            self.assertEqual(name, sut.resolve(alias).id)

    def test_unknown(self):
        with self.assertRaises(sut.UnknownCheck):
            sut.resolve('no-such-check')

    def test_record(self):
        record = sut.run_check('hexagon', context(2, 2))
        self.assertEqual('hexagon', record.id)
        self.assertEqual({'n': 2, 'q': 2}, record.instance)
        self.assertEqual(PASS, record.verdict)
        self.assertIsNone(record.elapsed_ms)
        timed = sut.run_check('hexagon', context(2, 2, timings=True))
        self.assertIsInstance(timed.elapsed_ms, int)

    def test_not_applicable(self):
        with self.assertRaises(sut.NotApplicable):
            sut.run_check('hexagon', context(3, 2))
        with self.assertRaises(sut.NotApplicable):
            sut.run_check('canonical-spread', context(2, 2))
        with self.assertRaises(sut.NotApplicable):
            sut.run_check('piecemeal-standardness-criterion', context(5, 2))

    def test_context_at(self):
        base = context(2, 2, jobs=3, seed=7,
                       matrix=[[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        moved = base.at(3, 3)
        self.assertEqual({'n': 3, 'q': 3}, moved.instance)
        self.assertEqual(3, moved.jobs)
        self.assertEqual(7, moved.seed)
        self.assertIsNone(moved.matrix)


class GeometryChecksTest(unittest.TestCase):

    def assert_pass(self, name, n, q, **kwargs):
        record = sut.run_check(name, context(n, q, **kwargs))
        self.assertEqual(PASS, record.verdict, record.witness)
        return record

    def test_geometry(self):
        record = self.assert_pass('geometry-sanity', 3, 2)
        self.assertEqual(105, record.witness['flags'])
        self.assert_pass('geometry-sanity', 2, 3)
        self.assert_pass('symps', 3, 2)

    def test_embedding(self):
        self.assert_pass('eigenvector-containment', 2, 2)
        record = self.assert_pass('quasi-singular-balls', 2, 2)
        self.assertEqual([13], record.witness['incident_sizes'])
        self.assertEqual([15], record.witness['non_incident_sizes'])
        record = self.assert_pass('tensor-hyperplane-classes', 2, 2)
        self.assertEqual(255, record.witness['classes'])
        self.assert_pass('gram', 2, 3)
        self.assert_pass('orthogonality-distance', 2, 3)

    def test_hyperplanes(self):
        self.assert_pass('hyperplane', 2, 2)
        self.assert_pass('hyperplane-sections-span', 2, 2)

    def test_hexagon_has_disconnected_complements(self):
        # at n = 2 over GF(2), 42 of the 255 hyperplanes have 9 flags and
        # a complement made of two hexagons
        record = sut.run_check('connectivity', context(2, 2))
        self.assertEqual(FAIL, record.verdict)
        self.assertEqual(255, record.witness['hyperplanes'])
        self.assertEqual(42, record.witness['disconnected'])
        self.assertEqual({'6+6': 42}, record.witness['component_sizes'])
        self.assertEqual(9, record.witness['counterexample']['size'])
        self.assertEqual([6, 6],
                         record.witness['counterexample']['components'])

        record = sut.run_check('maximality', context(2, 2))
        self.assertEqual(FAIL, record.verdict)
        self.assertEqual(42, record.witness['not_maximal'])
        self.assertEqual(15, record.witness['counterexample']['closure_size'])

        record = self.assert_pass('maximal-iff-connected', 2, 2)
        self.assertEqual(213, record.witness['maximal'])
        self.assertEqual(0, record.witness['mismatch'])

    def test_given_hyperplane(self):
        geometry = context(3, 2).geometry()
        space = geometry.space
        flag = geometry.flag(0)
        hyperplane = quasi_singular_hyperplane(
            geometry, space.point(flag.point_index),
            space.hyperplane(flag.hyp_index))
        record = self.assert_pass('maximality', 3, 2,
                                  hyperplane=hyperplane.as_dict(True))
        self.assertEqual(1, record.witness['hyperplanes'])
        self.assertFalse(record.witness['exhaustive'])

    def test_line_is_rejected(self):
        geometry = context(2, 2).geometry()
        line = {'members': geometry.line_members[0].tolist()}
        record = sut.run_check('hyperplane', context(2, 2, hyperplane=line))
        self.assertEqual(FAIL, record.verdict)
        with self.assertRaises(sut.NotApplicable):
            sut.run_check('maximality', context(2, 2, hyperplane=line))


class SpreadChecksTest(unittest.TestCase):

    def assert_pass(self, name, n, q, **kwargs):
        record = sut.run_check(name, context(n, q, **kwargs))
        self.assertEqual(PASS, record.verdict, record.witness)
        return record

    def test_canonical(self):
        record = self.assert_pass('canonical-spread', 3, 2)
        self.assertEqual(5, record.witness['lines'])
        self.assertEqual([1, 1, 1],
                         list(record.witness['minimal_polynomial']))
        self.assertEqual([], record.witness['annihilating_divisors'])
        self.assert_pass('spread-dual', 3, 2)
        record = self.assert_pass('dual-uniqueness', 3, 2)
        self.assertTrue(record.witness['canonical']['equals_dual'])
        record = self.assert_pass('property-s-equivalence', 3, 2)
        pairs = record.witness['pairs']
        self.assertEqual(10, len(pairs))
        for name, outcome in pairs.items():
            if name.startswith('moved_dual'):
                self.assertEqual([False, False], outcome)
        record = self.assert_pass('spread-hyperplane', 3, 2)
        self.assertEqual(45, record.witness['size'])

    def test_correspondence_with_matrix(self):
        field = field_of_order(2)
        matrix = parse_matrix(field, 'diag([[0,1],[1,1]],[[0,1],[1,1]])', 4)
        record = self.assert_pass('theorem-1-14', 3, 2, matrix=matrix)
        self.assertEqual(45, record.witness['size'])
        self.assertEqual(1, record.witness['spread_type'])
        with self.assertRaises(sut.NotApplicable):
            sut.run_check('theorem-1-14',
                          context(3, 2, matrix=parse_matrix(field, 'I', 4)))

    def test_correspondence_without_smat(self):
        field = field_of_order(2)
        # companion matrix of t^4 + t + 1, no eigenvalue and no spread
        matrix = parse_matrix(
            field, '[[0,0,0,1],[1,0,0,1],[0,1,0,0],[0,0,1,0]]', 4)
        record = self.assert_pass('tensor-spread-correspondence', 3, 2,
                                  matrix=matrix)
        self.assertEqual(1, record.witness['smat_fails'])
        self.assertNotIn('spread_type', record.witness)

    def test_piecemeal(self):
        self.assert_pass('piecemeal-partition', 3, 2)
        self.assert_pass('piecemeal-partition', 5, 2)
        self.assert_pass('piecemeal-standard', 3, 2)
        self.assert_pass('scalar-shift-invariance', 3, 2)

    def test_search_first_k(self):
        record = self.assert_pass('spread-search', 3, 2, first_k=2)
        self.assertEqual(2, record.witness['spreads'])
        self.assertNotIn('expected_spreads', record.witness)

    def test_standard_spreads(self):
        self.assert_pass('standard-spreads', 3, 2)


@unittest.skipUnless(SLOW, 'set FLAGGEOM_SLOW to run the battery')
class BatteryTest(unittest.TestCase):

    def test_suite(self):
        records = sut.run_suite(context(3, 2, jobs=0))
        self.assertEqual(len(sut.SUITE), len(records))
        failed = [(r.id, r.instance, r.witness) for r in records
                  if r.verdict != PASS]
        self.assertEqual([], failed)

    def test_search(self):
        record = sut.run_check('spread-search', context(3, 2))
        self.assertEqual(56, record.witness['spreads'])
        self.assertEqual(PASS, record.verdict)
