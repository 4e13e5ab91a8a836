# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.

import libflaggeom.embedding as sut
from libflaggeom.flags import build_flag_geometry
from libflaggeom.gf import field_of_order
from libflaggeom.hyperplanes import TENSOR, is_geometric_hyperplane
from libflaggeom.linalg import identity, matmul, shift, scale
import unittest
import numpy as np

GF2 = field_of_order(2)
GF3 = field_of_order(3)


class SaturationFormTest(unittest.TestCase):

    def test_trace_of_product(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            x, y = rng.integers(0, 3, size=(2, 3, 3))
            expected = int(sut.trace(GF3, matmul(GF3, x, y)))
            self.assertEqual(expected, sut.saturation_form(GF3, x, y))
            self.assertEqual(sut.saturation_form(GF3, x, y),
                             sut.saturation_form(GF3, y, x))

    def test_size_mismatch(self):
        with self.assertRaises(sut.SizeMismatch):
            sut.saturation_form(GF2, identity(2), identity(3))
        with self.assertRaises(sut.SizeMismatch):
            sut.saturation_form(GF2, np.zeros((2, 3)), np.zeros((2, 3)))

    def test_gram_form(self):
        for field, order in [(GF2, 4), (GF3, 3)]:
            form = sut.GramForm(field, order)
            self.assertEqual(order * order, form.rank)
            self.assertTrue(form.is_block_diagonal())
        form = sut.GramForm(GF3, 2)
        self.assertEqual(1, form(identity(2), [[1, 0], [0, 0]]))

    def test_diagnostics(self):
        report = sut.gram_diagnostics(GF2, 3)
        self.assertTrue(report['exhaustive'])
        self.assertEqual(report['expected_rank'], report['gram_rank'])
        for key in ['block_diagonal', 'char2_isotropy', 'square_trace',
                    'pure_tensor_isotropy']:
            self.assertTrue(report[key], key)
        report = sut.gram_diagnostics(GF3, 2, samples=50, exhaustive_cap=0)
        self.assertFalse(report['exhaustive'])
        self.assertNotIn('char2_isotropy', report)
        self.assertTrue(report['square_trace'])


class EmbeddingTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.geometry = build_flag_geometry(3, GF2)

    def test_flags_embed_null_traced(self):
        images = sut.embedded_flags(self.geometry).reshape(-1, 4, 4)
        self.assertTrue(np.all(sut.trace(GF2, images) == 0))
        tensor = sut.embed_flag(self.geometry, 5)
        self.assertTrue(np.array_equal(images[5], tensor.matrix))
        self.assertEqual(0, int(GF2.sum(GF2.mul(tensor.x, tensor.xi))))

    def test_orthogonality_is_distance(self):
        holds, witness = sut.orthogonality_matches_distance(self.geometry)
        self.assertTrue(holds)
        self.assertIsNone(witness)

    def test_lines_embed_as_lines(self):
        self.assertTrue(sut.lines_embed_as_lines(self.geometry))


class TensorHyperplaneTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.geometry = build_flag_geometry(2, GF3)

    def test_scalar_matrix(self):
        with self.assertRaises(sut.ScalarMatrix):
            sut.tensor_hyperplane(self.geometry, identity(3))
        with self.assertRaises(sut.SizeMismatch):
            sut.tensor_hyperplane(self.geometry, identity(4))

    def test_scalar_shift_invariance(self):
        matrix = np.array([[0, 1, 0], [0, 0, 1], [1, 2, 0]])
        hyperplane = sut.tensor_hyperplane(self.geometry, matrix)
        self.assertEqual(TENSOR, hyperplane.provenance.kind)
        self.assertEqual(hyperplane, sut.tensor_hyperplane(
            self.geometry, shift(GF3, matrix, 2)))
        self.assertEqual(hyperplane, sut.tensor_hyperplane(
            self.geometry, scale(GF3, matrix, 2)))

    def test_batched_members(self):
        rng = np.random.default_rng(5)
        stack = rng.integers(0, 3, size=(6, 3, 3))
        batched = sut.tensor_members(self.geometry, stack)
        for matrix, members in zip(stack, batched):
            self.assertTrue(np.array_equal(
                sut.tensor_members(self.geometry, matrix), members))

    def test_arises_from_embedding(self):
        matrix = np.array([[1, 1, 0], [0, 0, 2], [0, 1, 0]])
        hyperplane = sut.tensor_hyperplane(self.geometry, matrix)
        arises, found = sut.arises_from_embedding(self.geometry, hyperplane)
        self.assertTrue(arises)
        self.assertEqual(sut.span_with_identity(GF3, matrix),
                         sut.span_with_identity(GF3, found))

    def test_line_is_not_embedded_hyperplane(self):
        members = self.geometry.line_members[0]
        self.assertEqual((False, None),
                         sut.arises_from_embedding(self.geometry, members))


class HyperplaneClassesTest(unittest.TestCase):

    def test_classes_at_plane_over_gf2(self):
        geometry = build_flag_geometry(2, GF2)
        classes = sut.hyperplane_classes(GF2, 3)
        self.assertEqual(255, len(classes))
        bitmaps = set()
        for matrix in classes:
            if np.all(matrix == 0):
                continue
            hyperplane = sut.tensor_hyperplane(geometry, matrix)
            self.assertTrue(is_geometric_hyperplane(geometry, hyperplane)[0])
            bitmaps.add(hyperplane.members.tobytes())
        self.assertEqual(255, len(bitmaps))

    def test_all_matrices(self):
        matrices = sut.all_matrices(GF2, 2)
        self.assertEqual(16, len(matrices))
        self.assertEqual([[1, 0], [0, 0]], matrices[1].tolist())
        self.assertEqual([[0, 0], [0, 1]], matrices[8].tolist())
        self.assertEqual(4, len(sut.all_matrices(GF2, 2, 2, 6)))

    def test_span_with_identity(self):
        matrix = np.array([[0, 1], [1, 1]])
        self.assertEqual(sut.span_with_identity(GF2, matrix),
                         sut.span_with_identity(GF2, shift(GF2, matrix, 1)))
        self.assertNotEqual(sut.span_with_identity(GF2, matrix),
                            sut.span_with_identity(GF2, [[1, 1], [0, 0]]))
