# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module realizes the natural embedding of the flag geometry into
the null-traced matrices, the trace form `f(X, Y) = trace(XY)` and the
hyperplanes of tensor type.

A flag ([x], [xi]) is mapped to the outer product `x xi` (x a column, xi a
row). The hyperplane of tensor type of a non-scalar matrix M consists of
the flags with `xi M x = 0`. """

import collections
import logging
import numpy as np

from typing import Any, Dict, Iterator, Optional, Tuple  # noqa: ignore=F401

from libflaggeom import Error
from libflaggeom.flags import CLASSES, SPECIAL, FlagGeometry  # noqa: ignore=F401
from libflaggeom.gf import Field  # noqa: ignore=F401
from libflaggeom.hyperplanes import QUASI_SINGULAR, TENSOR, \
    GeometricHyperplane, Provenance, as_bitmap
from libflaggeom.linalg import as_array, canonical_vectors, identity, \
    is_scalar, matmul, matrix_to_list, rank, rank_and_kernel, row_echelon, \
    transpose
from libflaggeom.projective import Hyperplane, Point  # noqa: ignore=F401

__all__ = ['PureTensor', 'GramForm', 'embed_flag', 'saturation_form',
           'tensor_hyperplane', 'quasi_singular_hyperplane',
           'arises_from_embedding', 'gram_diagnostics']

PureTensor = collections.namedtuple('PureTensor', ['x', 'xi', 'matrix'])


class ScalarMatrix(Error):
    pass


class SizeMismatch(Error):
    pass


def embed_flag(geometry, flag):
    # type: (FlagGeometry, Any) -> PureTensor
    index = geometry._flag_index(flag)
    x = geometry.space.points[geometry.flag_point[index]]
    xi = geometry.space.hyperplanes[geometry.flag_hyp[index]]
    return PureTensor(x, xi, geometry.space.field.mul(x[:, None],
                                                      xi[None, :]))


def embedded_flags(geometry):
    # type: (FlagGeometry) -> np.ndarray
    """ Row-major flattened images of all flags, one row per flag. """
    field = geometry.space.field
    x = geometry.space.points[geometry.flag_point]
    xi = geometry.space.hyperplanes[geometry.flag_hyp]
    return field.mul(x[:, :, None], xi[:, None, :]).reshape(geometry.size, -1)


def saturation_form(field, left, right):
    # type: (Field, np.ndarray, np.ndarray) -> int
    """ f(X, Y) = sum of X[i, j] * Y[j, i] = trace(XY). """
    left, right = np.asarray(left), np.asarray(right)
    if left.shape != right.shape or left.shape[0] != left.shape[-1]:
        raise SizeMismatch('f needs two square matrices of one order, got '
                           '{0} and {1}'.format(left.shape, right.shape))
    return int(field.sum(field.mul(left, right.T).ravel()))


def self_pairing(field, matrices):
    # type: (Field, np.ndarray) -> np.ndarray
    """ f(X, X) for a stack of matrices. """
    matrices = np.asarray(matrices)
    flat = field.mul(matrices, transpose(matrices))
    return field.sum(flat.reshape(flat.shape[:-2] + (-1,)), axis=-1)


def trace(field, matrices):
    # type: (Field, np.ndarray) -> np.ndarray
    return field.sum(np.diagonal(np.asarray(matrices), axis1=-2, axis2=-1),
                     axis=-1)


class GramForm(object):
    """ The trace form on square matrices of a given order, with its Gram
    matrix in the basis of matrix units E_ij (row-major order). """

    def __init__(self, field, order):
        # type: (Field, int) -> None
        self.field = field
        self.order = order
        dim = order * order
        self.matrix = np.zeros((dim, dim), dtype=np.int64)
        for i in range(order):
            for j in range(order):
                # f(E_ij, E_kl) is one exactly when (k, l) = (j, i)
                self.matrix[i * order + j, j * order + i] = 1

    def __call__(self, left, right):
        return saturation_form(self.field, left, right)

    @property
    def rank(self):
        # type: () -> int
        return rank(self.field, self.matrix)

    def block_order(self):
        """ Diagonal units first, then the pairs (E_ij, E_ji) for i < j. """
        d = self.order
        order = [i * d + i for i in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                order.extend([i * d + j, j * d + i])
        return order

    def is_block_diagonal(self):
        # type: () -> bool
        """ In the block order the Gram matrix is an identity block followed
        by d(d-1)/2 hyperbolic blocks [[0, 1], [1, 0]]. """
        d = self.order
        order = self.block_order()
        reordered = self.matrix[np.ix_(order, order)]
        hyperbolic = as_array([[0, 1], [1, 0]])
        expected = np.zeros_like(reordered)
        expected[:d, :d] = identity(d)
        for block in range(d * (d - 1) // 2):
            start = d + 2 * block
            expected[start:start + 2, start:start + 2] = hyperbolic
        return bool(np.array_equal(reordered, expected))


def _order_of(geometry):
    return geometry.n + 1


def tensor_members(geometry, matrices):
    # type: (FlagGeometry, np.ndarray) -> np.ndarray
    """ Bitmaps of `xi M x = 0` over all flags, for one matrix or a stack. """
    field = geometry.space.field
    matrices = np.asarray(matrices, dtype=np.int64)
    rows = matmul(field, geometry.space.hyperplanes, matrices)
    values = field.sum(field.mul(rows[..., geometry.flag_hyp, :],
                                 geometry.space.points[geometry.flag_point]),
                       axis=-1)
    return values == 0


def tensor_hyperplane(geometry, matrix):
    # type: (FlagGeometry, np.ndarray) -> GeometricHyperplane
    matrix = as_array(matrix)
    order = _order_of(geometry)
    if matrix.shape != (order, order):
        raise SizeMismatch('matrix of shape {0} for order {1}'
                           .format(matrix.shape, order))
    if is_scalar(matrix):
        raise ScalarMatrix('scalar matrices are orthogonal to every '
                           'null-traced matrix, they define no hyperplane',
                           matrix=matrix_to_list(matrix))
    return GeometricHyperplane(geometry, tensor_members(geometry, matrix),
                               Provenance(TENSOR, matrix_to_list(matrix)))


def quasi_singular_hyperplane(geometry, point, hyperplane):
    # type: (FlagGeometry, Point, Hyperplane) -> GeometricHyperplane
    """ The tensor hyperplane of `a alpha`; singular when a is on A. """
    field = geometry.space.field
    a = geometry.space.points[point.index]
    alpha = geometry.space.hyperplanes[hyperplane.index]
    matrix = field.mul(a[:, None], alpha[None, :])
    return GeometricHyperplane(
        geometry, tensor_members(geometry, matrix),
        Provenance(QUASI_SINGULAR, {'point': point.index,
                                    'hyperplane': hyperplane.index}))


def arises_from_embedding(geometry, flags):
    # type: (FlagGeometry, Any) -> Tuple[bool, Optional[np.ndarray]]
    """ Do the images of the members span a hyperplane of the null-traced
    matrices whose preimage is the flag set itself?

    :return: the verdict and the matrix M defining the spanned hyperplane
    (as the f-orthogonal of M) when the rank is right """

    field = geometry.space.field
    order = _order_of(geometry)
    members = as_bitmap(geometry, flags)
    images = embedded_flags(geometry)[members]
    if rank(field, images) != order * order - 2:
        return False, None
    transposed = transpose(images.reshape(-1, order, order)) \
        .reshape(len(images), -1)
    _, kernel = rank_and_kernel(field, transposed)
    candidates = [row.reshape(order, order) for row in kernel
                  if not is_scalar(row.reshape(order, order))]
    matrix = candidates[0]
    preimage = tensor_members(geometry, matrix)
    return bool(np.array_equal(preimage, members)), matrix


def hyperplane_classes(field, order):
    # type: (Field, int) -> np.ndarray
    """ One matrix per hyperplane of the null-traced matrices: the classes
    of nonzero matrices modulo the scalars, each represented with a zero
    bottom-right entry and first nonzero entry one. """
    tails = canonical_vectors(field, order * order - 1)
    padded = np.hstack([tails, np.zeros((len(tails), 1), dtype=np.int64)])
    return padded.reshape(-1, order, order)


def span_with_identity(field, matrix):
    # type: (Field, np.ndarray) -> Tuple[int, ...]
    """ Hashable echelon form of the span of M and I. """
    rows = np.vstack([np.asarray(matrix).ravel(),
                      identity(len(matrix)).ravel()])
    echelon, _ = row_echelon(field, rows)
    return tuple(echelon.ravel().tolist())


def all_matrices(field, order, start=0, stop=None):
    # type: (Field, int, int, Optional[int]) -> np.ndarray
    """ The matrices with codes in [start, stop): entry (i, j) is the digit
    of weight q^(i*order+j) of the code. """
    count = field.q ** (order * order)
    stop = count if stop is None else min(stop, count)
    codes = np.arange(start, stop, dtype=np.int64)
    weights = field.q ** np.arange(order * order, dtype=np.int64)
    digits = (codes[:, None] // weights[None, :]) % field.q
    return digits.reshape(-1, order, order)


def orthogonality_matches_distance(geometry):
    # type: (FlagGeometry) -> Tuple[bool, Optional[Tuple[int, int]]]
    """ f(e(a), e(b)) = 0 exactly when the flags a, b are at distance at
    most two.

    :return: verdict and the first pair violating it """

    field = geometry.space.field
    order = _order_of(geometry)
    images = embedded_flags(geometry)
    transposed = transpose(images.reshape(-1, order, order)) \
        .reshape(len(images), -1)
    orthogonal = matmul(field, images, transposed.T) == 0
    near = geometry.class_matrix() <= CLASSES.index(SPECIAL)
    wrong = np.argwhere(orthogonal != near)
    if len(wrong):
        return False, (int(wrong[0][0]), int(wrong[0][1]))
    return True, None


def lines_embed_as_lines(geometry):
    # type: (FlagGeometry) -> bool
    """ The images of every flag line span a projective line. """
    field = geometry.space.field
    images = embedded_flags(geometry)
    return all(rank(field, images[members]) == 2
               for members in geometry.line_members)


def gram_diagnostics(field, n, rng=None, samples=200, exhaustive_cap=1 << 16):
    # type: (Field, int, Any, int, int) -> Dict[str, Any]
    """ Rank and block shape of the Gram matrix, isotropy laws.

    * `gram_rank` must equal (n+1)^2,
    * `block_diagonal` the reordered Gram matrix is I + hyperbolic blocks,
    * `char2_isotropy` (characteristic two only) f(X, X) = 0 iff the trace
      vanishes; exhaustive when q^((n+1)^2) is within the cap, sampled
      otherwise,
    * `square_trace` f(X, X) = trace(X^2) on samples,
    * `pure_tensor_isotropy` for every point x and hyperplane xi,
      f(x xi, x xi) = xi(x)^2, so it vanishes iff x is on xi. """

    order = n + 1
    form = GramForm(field, order)
    rng = rng if rng is not None else np.random.default_rng(0)
    report = {'gram_rank': form.rank,
              'expected_rank': order * order,
              'block_diagonal': form.is_block_diagonal()}

    if field.q ** (order * order) <= exhaustive_cap:
        matrices = all_matrices(field, order)
        report['exhaustive'] = True
    else:
        matrices = rng.integers(0, field.q, size=(samples, order, order))
        report['exhaustive'] = False
    pairing = self_pairing(field, matrices)
    if field.p == 2:
        report['char2_isotropy'] = bool(np.array_equal(
            pairing == 0, trace(field, matrices) == 0))
    sample = matrices[:samples] if report['exhaustive'] else matrices
    squares = matmul(field, sample, sample)
    report['square_trace'] = bool(np.array_equal(
        self_pairing(field, sample), trace(field, squares)))

    points = canonical_vectors(field, order)
    tensors = field.mul(points[:, None, :, None], points[None, :, None, :])
    values = matmul(field, points, points.T)
    report['pure_tensor_isotropy'] = bool(np.array_equal(
        self_pairing(field, tensors), field.mul(values.T, values.T)))
    logging.debug('gram diagnostics: %s', report)
    return report
