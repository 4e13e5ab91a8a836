# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.

import libflaggeom.flags as sut
from libflaggeom.gf import field_of_order
from libflaggeom.projective import DimOutOfRange, ProjectiveSpace, theta
import unittest
import numpy as np

DISTANCES = np.array([sut.DISTANCE[name] for name in sut.CLASSES])


def first_pair(geometry, name):
    classes = geometry.class_matrix()
    a, b = np.argwhere(classes == sut.CLASSES.index(name))[0]
    return int(a), int(b)


class HexagonTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.geometry = sut.build_flag_geometry(2, field_of_order(2))

    def test_counts(self):
        self.assertEqual(21, self.geometry.size)
        self.assertEqual(14, len(self.geometry.lines))
        self.assertTrue(all(len(lines) == 2
                            for lines in self.geometry.flag_lines))
        self.assertTrue(all(len(line.members) == 3
                            for line in self.geometry.lines))

    def test_girth(self):
        self.assertEqual(12, self.geometry.incidence_girth())

    def test_diameter(self):
        self.assertEqual(3, self.geometry.diameter())

    def test_repr(self):
        self.assertEqual('A(2,2)', repr(self.geometry))


class FlagGeometryTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.geometry = sut.build_flag_geometry(3, field_of_order(2))

    def test_counts(self):
        geometry = self.geometry
        self.assertEqual(105, geometry.size)
        self.assertEqual(210, len(geometry.lines))
        kinds = [line.kind for line in geometry.lines]
        self.assertEqual(105, kinds.count(sut.PENCIL))
        self.assertEqual(105, kinds.count(sut.AXIAL))
        self.assertTrue(all(len(lines) == 2 * theta(1, 2)
                            for lines in geometry.flag_lines))

    def test_lines_are_cliques(self):
        for members in self.geometry.line_members:
            for a in members:
                for b in members:
                    if a != b:
                        self.assertTrue(self.geometry.collinear(a, b))

    def test_line_families(self):
        geometry = self.geometry
        for line in geometry.lines:
            if line.kind == sut.PENCIL:
                points = set(geometry.flag_point[line.members].tolist())
                self.assertEqual({line.base}, points)
            else:
                hyperplanes = set(geometry.flag_hyp[line.members].tolist())
                self.assertEqual({line.base}, hyperplanes)

    def test_closed_form_matches_search(self):
        geometry = self.geometry
        closed = DISTANCES[geometry.class_matrix()]
        for flag in range(geometry.size):
            self.assertTrue(np.array_equal(closed[flag],
                                           geometry.distances_from(flag)))
        self.assertEqual(3, geometry.diameter())

    def test_pair_class_agrees_with_matrix(self):
        geometry = self.geometry
        classes = geometry.class_matrix()
        for a in range(0, geometry.size, 7):
            for b in range(geometry.size):
                self.assertEqual(sut.CLASSES[classes[a, b]],
                                 geometry.pair_class(a, b))
        self.assertTrue(np.array_equal(classes, classes.T))

    def test_ball(self):
        geometry = self.geometry
        self.assertEqual(1, geometry.ball(0, 0).sum())
        self.assertEqual(1 + len(geometry.neighbors[0]),
                         geometry.ball(0, 1).sum())
        self.assertEqual(geometry.size, geometry.ball(0, 3).sum())

    def test_special_neighbor(self):
        geometry = self.geometry
        a, b = first_pair(geometry, sut.SPECIAL)
        joint = geometry.special_neighbor(a, b)
        self.assertEqual([joint], geometry.common_neighbors(a, b).tolist())
        self.assertTrue(geometry.collinear(a, joint))
        self.assertTrue(geometry.collinear(joint, b))
        with self.assertRaises(sut.GeometryMismatch):
            geometry.special_neighbor(a, a)

    def test_symp_is_grid(self):
        geometry = self.geometry
        a, b = first_pair(geometry, sut.POLAR)
        symp = geometry.symp(a, b)
        self.assertEqual(9, len(symp))
        self.assertIn(a, symp)
        self.assertIn(b, symp)
        rulings = geometry.grid_rulings(symp)
        self.assertIsNotNone(rulings)
        rows, columns = rulings
        self.assertEqual(3, len(rows))
        self.assertEqual(3, len(columns))

    def test_symp_needs_polar_pair(self):
        a, b = first_pair(self.geometry, sut.OPPOSITE)
        with self.assertRaises(sut.NotPolar):
            self.geometry.symp(a, b)

    def test_grid_rulings_rejects_lines(self):
        members = self.geometry.line_members[0]
        self.assertIsNone(self.geometry.grid_rulings(members))

    def test_singular_subspaces(self):
        geometry = self.geometry
        subspaces = list(geometry.singular_subspaces())
        self.assertEqual(30, len(subspaces))
        for subspace in subspaces:
            self.assertEqual(7, len(subspace.members))
            inside = geometry.class_matrix()[
                np.ix_(subspace.members, subspace.members)]
            self.assertTrue(np.all(inside <= 1))

    def test_flag_of(self):
        geometry = self.geometry
        space = geometry.space
        flag = geometry.flag(17)
        self.assertEqual(17, geometry.flag_of(flag.point_index,
                                              flag.hyp_index))
        self.assertEqual(17, geometry.flag_of(
            space.point(flag.point_index),
            space.hyperplanes[flag.hyp_index]))
        p = flag.point_index
        outside = int(np.nonzero(~space.incidence[:, p].astype(bool))[0][0])
        with self.assertRaises(sut.GeometryMismatch):
            geometry.flag_of(p, outside)
        with self.assertRaises(sut.GeometryMismatch):
            geometry.pair_class(0, geometry.size)

    def test_format(self):
        self.assertEqual('([0:0:0:1],[0:0:1:0])', self.geometry.format_flag(0))


class LimitsTest(unittest.TestCase):

    def test_size_cap(self):
        space = ProjectiveSpace(3, field_of_order(2))
        with self.assertRaises(sut.SizeCap):
            sut.FlagGeometry(space, 100)
        self.assertEqual(105, sut.FlagGeometry(space, 105).size)

    def test_dimension(self):
        with self.assertRaises(DimOutOfRange):
            sut.build_flag_geometry(1, field_of_order(2))

    def test_larger_field(self):
        geometry = sut.build_flag_geometry(2, field_of_order(3))
        self.assertEqual(52, geometry.size)
        self.assertTrue(all(len(line.members) == 4
                            for line in geometry.lines))
        self.assertEqual(3, geometry.diameter())
