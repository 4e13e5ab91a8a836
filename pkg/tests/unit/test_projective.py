# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.

import libflaggeom.projective as sut
from libflaggeom.gf import field_of_order
import pickle
import unittest
import numpy as np


class CountingTest(unittest.TestCase):

    def test_gaussian_binomial(self):
        self.assertEqual(1, sut.gaussian_binomial(4, 0, 2))
        self.assertEqual(15, sut.gaussian_binomial(4, 1, 2))
        self.assertEqual(35, sut.gaussian_binomial(4, 2, 2))
        self.assertEqual(130, sut.gaussian_binomial(4, 2, 3))
        self.assertEqual(0, sut.gaussian_binomial(3, 4, 2))

    def test_theta(self):
        self.assertEqual(7, sut.theta(2, 2))
        self.assertEqual(15, sut.theta(3, 2))
        self.assertEqual(40, sut.theta(3, 3))
        self.assertEqual(1, sut.theta(0, 5))


class ProjectiveSpaceTest(unittest.TestCase):

    def setUp(self):
        self.space = sut.ProjectiveSpace(3, field_of_order(2))

    def test_sizes(self):
        self.assertEqual(15, self.space.size)
        for dim, count in [(0, 15), (1, 35), (2, 15)]:
            self.assertEqual(count, len(self.space.enumerate(dim)))
            for subspace in self.space.enumerate(dim):
                self.assertEqual(sut.theta(dim, 2), len(subspace))
                self.assertEqual(dim, subspace.dim)

    def test_dimension_range(self):
        with self.assertRaises(sut.DimOutOfRange):
            self.space.enumerate(3)
        with self.assertRaises(sut.DimOutOfRange):
            sut.ProjectiveSpace(0, field_of_order(2))

    def test_incidence(self):
        incidence = self.space.incidence
        self.assertTrue(np.array_equal(incidence, incidence.T))
        self.assertTrue(np.all(incidence.sum(axis=1) == 7))
        for h in range(self.space.size):
            self.assertEqual(
                self.space.hyperplane_points(h).tolist(),
                self.space.hyperplane_subspace(
                    self.space.hyperplane(h)).point_set.tolist())

    def test_index_of(self):
        points = self.space.points
        self.assertEqual(list(range(15)),
                         self.space.index_of(points).tolist())
        space = sut.ProjectiveSpace(2, field_of_order(3))
        self.assertEqual(space.index_of([0, 1, 2]),
                         space.index_of([0, 2, 1]))
        with self.assertRaises(sut.ProjectiveError):
            space.index_of([0, 0, 0])

    def test_lines(self):
        lines = self.space.enumerate(1)
        # two points lie on exactly one line
        counts = np.zeros((15, 15), dtype=int)
        for line in lines:
            for a in line.point_set:
                for b in line.point_set:
                    counts[a, b] += 1
        off = counts[~np.eye(15, dtype=bool)]
        self.assertTrue(np.all(off == 1))
        line = self.space.line_through(0, 1)
        self.assertIn(line, lines)
        self.assertEqual(line, lines[self.space.subspace_index(line)])

    def test_annihilator(self):
        for plane in self.space.enumerate(1):
            annihilator = self.space.annihilator(plane)
            self.assertEqual(2, len(annihilator))
            hyperplanes = self.space.hyperplanes_containing(plane)
            self.assertEqual(3, len(hyperplanes))
            for h in hyperplanes:
                self.assertTrue(np.all(
                    self.space.incidence[h, plane.point_set]))

    def test_span_and_meet(self):
        a, b = self.space.point(1), self.space.point(2)
        line = self.space.span([a, b])
        self.assertEqual(1, line.dim)
        plane = self.space.hyperplane(0)
        meet = self.space.meet(line, plane)
        self.assertIsNotNone(meet)
        self.assertIn(meet.dim, (0, 1))
        other = self.space.span([self.space.point(4), self.space.point(8)])
        # every line meets every plane in PG(3, q)
        self.assertIsNotNone(self.space.meet(other, plane))
        self.assertIsNone(self.space.subspace(np.zeros((2, 4))))

    def test_incident(self):
        for h in range(self.space.size):
            for p in range(self.space.size):
                self.assertEqual(
                    bool(self.space.incidence[h, p]),
                    self.space.incident(self.space.point(p),
                                        self.space.hyperplane(h)))

    def test_ambient_mismatch(self):
        other = sut.ProjectiveSpace(3, field_of_order(3))
        with self.assertRaises(sut.AmbientMismatch):
            self.space.span([other.point(0)])

    def test_subspace_serialization(self):
        line = self.space.line_through(0, 1)
        data = line.as_dict()
        self.assertEqual(1, data['dim'])
        self.assertEqual(3, len(data['points']))

    def test_format(self):
        self.assertEqual('[0:0:0:1]', self.space.format_point(0))
        self.assertEqual('[0:0:0:1]', repr(self.space.point(0)))

    def test_pickle(self):
        self.space.enumerate(1)
        copy = pickle.loads(pickle.dumps(self.space))
        self.assertEqual(self.space, copy)
        self.assertEqual(35, len(copy.enumerate(1)))


class ExtensionFieldSpaceTest(unittest.TestCase):

    def test_plane_over_gf4(self):
        space = sut.ProjectiveSpace(2, field_of_order(4))
        self.assertEqual(21, space.size)
        lines = space.enumerate(1)
        self.assertEqual(21, len(lines))
        self.assertTrue(all(len(line) == 5 for line in lines))
        self.assertTrue(np.all(space.incidence.sum(axis=0) == 5))
