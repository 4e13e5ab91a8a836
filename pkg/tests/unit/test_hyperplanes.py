# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.

import libflaggeom.hyperplanes as sut
from libflaggeom.embedding import quasi_singular_hyperplane, \
    tensor_hyperplane
from libflaggeom.flags import build_flag_geometry
from libflaggeom.gf import field_of_order
import unittest
import numpy as np


def singular(geometry, point=0):
    space = geometry.space
    flag = geometry.flag(int(geometry.point_flags[point][0]))
    return quasi_singular_hyperplane(geometry, space.point(flag.point_index),
                                     space.hyperplane(flag.hyp_index)), flag


class RunLengthTest(unittest.TestCase):

    def test_encode(self):
        bitmap = np.array([True, True, False, True, False, False])
        self.assertEqual([[0, 2], [3, 1]], sut.rle_encode(bitmap))
        self.assertEqual([], sut.rle_encode(np.zeros(4, dtype=bool)))

    def test_decode(self):
        bitmap = sut.rle_decode([[0, 2], [3, 1]], 6)
        self.assertEqual([True, True, False, True, False, False],
                         bitmap.tolist())


class HexagonHyperplaneTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.geometry = build_flag_geometry(2, field_of_order(2))

    def test_quasi_singular_sizes(self):
        geometry = self.geometry
        space = geometry.space
        incident, non_incident = set(), set()
        for a in range(space.size):
            for A in range(space.size):
                hyperplane = quasi_singular_hyperplane(
                    geometry, space.point(a), space.hyperplane(A))
                if space.incidence[A, a]:
                    incident.add(hyperplane.size)
                    self.assertIn(geometry.flag_id[a, A], hyperplane)
                else:
                    non_incident.add(hyperplane.size)
        self.assertEqual({13}, incident)
        self.assertEqual({15}, non_incident)

    def test_singular_is_ball(self):
        hyperplane, flag = singular(self.geometry)
        ball = self.geometry.ball(flag.flag_index, 2)
        self.assertTrue(np.array_equal(ball, hyperplane.members))
        self.assertEqual([flag.flag_index],
                         sut.deepest_points(self.geometry,
                                            hyperplane).tolist())

    def test_not_a_hyperplane(self):
        geometry = self.geometry
        valid, tally = sut.is_geometric_hyperplane(geometry, [0])
        self.assertFalse(valid)
        self.assertIn(0, tally)
        all_flags = np.ones(geometry.size, dtype=bool)
        self.assertFalse(sut.is_geometric_hyperplane(geometry, all_flags)[0])
        with self.assertRaises(sut.NotAHyperplane):
            sut.GeometricHyperplane(geometry, [0, 1])
        with self.assertRaises(sut.NotAHyperplane):
            sut.complement_connected(geometry, [0, 1])

    def test_maximal_and_connected(self):
        hyperplane, _ = singular(self.geometry)
        maximal, witness = sut.is_maximal_hyperplane(self.geometry,
                                                     hyperplane)
        self.assertTrue(maximal)
        self.assertIsNone(witness)
        self.assertTrue(sut.complement_connected(self.geometry, hyperplane))
        self.assertEqual([8], sut.complement_components(self.geometry,
                                                        hyperplane))

    def test_split_complement(self):
        hyperplane = tensor_hyperplane(self.geometry,
                                       [[0, 0, 0], [0, 0, 1], [1, 0, 0]])
        self.assertEqual(9, hyperplane.size)
        self.assertFalse(sut.complement_connected(self.geometry, hyperplane))
        self.assertEqual([6, 6], sut.complement_components(self.geometry,
                                                           hyperplane))
        maximal, witness = sut.is_maximal_hyperplane(self.geometry,
                                                     hyperplane)
        self.assertFalse(maximal)
        self.assertEqual(15, witness['closure_size'])
        closure = set(witness['closure'])
        self.assertEqual(15, len(closure))
        self.assertIn(witness['flag'], closure)
        self.assertTrue(set(hyperplane.indices().tolist()) <= closure)
        # the stalled closure is a subspace
        self.assertEqual(15, sut.subspace_closure(self.geometry,
                                                  sorted(closure)).sum())

    def test_closure(self):
        geometry = self.geometry
        line = geometry.line_members[0]
        closure = sut.subspace_closure(geometry, line[:2])
        self.assertEqual(sorted(line.tolist()),
                         np.nonzero(closure)[0].tolist())
        # a flag and its opposite span nothing more
        a = 0
        opposite = int(np.nonzero(geometry.class_matrix()[a] == 4)[0][0])
        self.assertEqual(2, sut.subspace_closure(geometry,
                                                 [a, opposite]).sum())

    def test_serialization(self):
        hyperplane, _ = singular(self.geometry)
        for rle in (False, True):
            data = hyperplane.as_dict(rle)
            self.assertEqual(13, data['size'])
            copy = sut.GeometricHyperplane.from_dict(self.geometry, data)
            self.assertEqual(hyperplane, copy)
            self.assertEqual(sut.QUASI_SINGULAR, copy.provenance.kind)

    def test_raw_provenance(self):
        hyperplane, _ = singular(self.geometry)
        copy = sut.GeometricHyperplane(self.geometry, hyperplane.indices())
        self.assertEqual(sut.RAW, copy.provenance.kind)
        self.assertEqual(hyperplane, copy)
        self.assertEqual(hash(hyperplane), hash(copy))


class SpaceHyperplaneTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.geometry = build_flag_geometry(3, field_of_order(2))

    def test_singular_hyperplane(self):
        hyperplane, flag = singular(self.geometry)
        self.assertEqual(73, hyperplane.size)
        self.assertTrue(sut.complement_connected(self.geometry, hyperplane))
        self.assertTrue(sut.contains_singular_subspace(self.geometry,
                                                       hyperplane))
        self.assertEqual([flag.flag_index],
                         sut.deepest_points(self.geometry,
                                            hyperplane).tolist())

    def test_tensor_hyperplanes_are_maximal(self):
        rng = np.random.default_rng(7)
        for _ in range(3):
            matrix = rng.integers(0, 2, size=(4, 4))
            matrix[0, 1] = 1
            hyperplane = tensor_hyperplane(self.geometry, matrix)
            self.assertTrue(sut.is_maximal_hyperplane(self.geometry,
                                                      hyperplane)[0])
            self.assertTrue(sut.complement_connected(self.geometry,
                                                     hyperplane))

    def test_line_tally(self):
        hyperplane, _ = singular(self.geometry)
        tally = sut.line_tally(self.geometry, hyperplane)
        self.assertEqual(len(self.geometry.lines), len(tally))
        self.assertTrue(set(tally.tolist()) <= {1, 3})

    def test_singular_containment_batched(self):
        hyperplane, flag = singular(self.geometry)
        stack = np.stack([hyperplane.members,
                          np.zeros(self.geometry.size, dtype=bool)])
        points, hyperplanes = sut.singular_containment(self.geometry, stack)
        self.assertEqual((2, 15), points.shape)
        self.assertTrue(points[0, flag.point_index])
        self.assertTrue(hyperplanes[0, flag.hyp_index])
        self.assertFalse(np.any(points[1]) or np.any(hyperplanes[1]))
