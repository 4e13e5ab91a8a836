# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module implements exact linear algebra over a finite field.

Vectors, covectors and matrices are numpy int64 arrays of element codes.
Vectors are columns when a matrix acts on them (`M x`) and covectors are
rows (`xi M`); a list of vectors is stored as the rows of a 2D array.

Functions take the `Field` as their first argument. Most of them accept
stacks of matrices (leading batch axes) where it is cheap to do so. """

import collections
import itertools
import json
import logging
import re
import numpy as np

from typing import Any, List, Optional, Sequence, Tuple  # noqa: ignore=F401

from libflaggeom import Error
from libflaggeom.gf import Field  # noqa: ignore=F401

__all__ = ['rank_and_kernel', 'eigen_spectrum', 'minimal_polynomial',
           'check_smat', 'rational_block_basis', 'Poly']


class LinAlgError(Error):
    pass


class SingularMatrix(LinAlgError):
    pass


class NotQuadraticIrreducible(LinAlgError):
    pass


class OddDimension(LinAlgError):
    pass


class BlockConstructionStalled(LinAlgError):
    pass


class MatrixSyntaxError(LinAlgError):
    pass


Eigen = collections.namedtuple('Eigen', ['value', 'right', 'left'])


def as_array(values):
    # type: (Any) -> np.ndarray
    return np.array(values, dtype=np.int64)


def identity(size):
    # type: (int) -> np.ndarray
    return np.eye(size, dtype=np.int64)


def block_diagonal(blocks):
    # type: (Sequence[np.ndarray]) -> np.ndarray
    size = sum(len(block) for block in blocks)
    result = np.zeros((size, size), dtype=np.int64)
    offset = 0
    for block in blocks:
        width = len(block)
        result[offset:offset + width, offset:offset + width] = block
        offset += width
    return result


def transpose(matrix):
    # type: (np.ndarray) -> np.ndarray
    return np.swapaxes(matrix, -1, -2)


def is_scalar(matrix):
    # type: (np.ndarray) -> bool
    """ True when the matrix lies on the line spanned by the identity. """
    matrix = np.asarray(matrix)
    diagonal = np.diagonal(matrix)
    off = matrix - np.diag(diagonal)
    return not np.any(off) and bool(np.all(diagonal == diagonal[0]))


def matmul(field, left, right):
    # type: (Field, np.ndarray, np.ndarray) -> np.ndarray
    """ Matrix product over the field, broadcasting over batch axes. """

    left = np.asarray(left, dtype=np.int64)
    right = np.asarray(right, dtype=np.int64)
    if field.k == 1:
        return np.matmul(left, right) % field.p
    result = None
    for t in range(left.shape[-1]):
        term = field.mul(left[..., :, t, None], right[..., None, t, :])
        result = term if result is None else field.add(result, term)
    return result


def apply(field, matrix, vectors):
    # type: (Field, np.ndarray, np.ndarray) -> np.ndarray
    """ Images `M x` of the vectors stored as rows (batched over matrices). """
    return matmul(field, vectors, transpose(matrix))


def scale(field, matrix, factor):
    # type: (Field, np.ndarray, int) -> np.ndarray
    return field.mul(np.asarray(matrix, dtype=np.int64), factor)


def shift(field, matrix, value):
    # type: (Field, np.ndarray, int) -> np.ndarray
    """ M + value*I """
    result = np.array(matrix, dtype=np.int64, copy=True)
    index = np.arange(len(result))
    result[index, index] = field.add(result[index, index], value)
    return result


def row_echelon(field, rows):
    # type: (Field, Any) -> Tuple[np.ndarray, List[int]]
    """ Reduced row echelon form with the leftmost pivots scaled to one.

    :return: the nonzero rows of the echelon form and the pivot columns """

    matrix = np.array(rows, dtype=np.int64, copy=True)
    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1)
    height, width = matrix.shape
    pivots = []  # type: List[int]
    row = 0
    for column in range(width):
        if row == height:
            break
        candidates = np.nonzero(matrix[row:, column])[0]
        if not len(candidates):
            continue
        chosen = row + candidates[0]
        if chosen != row:
            matrix[[row, chosen]] = matrix[[chosen, row]]
        matrix[row] = field.mul(matrix[row],
                                field.inv(int(matrix[row, column])))
        factors = matrix[:, column].copy()
        factors[row] = 0
        others = np.nonzero(factors)[0]
        if len(others):
            matrix[others] = field.sub(
                matrix[others],
                field.mul(factors[others, None], matrix[row][None, :]))
        pivots.append(column)
        row += 1
    return matrix[:row], pivots


def rank(field, rows):
    # type: (Field, Any) -> int
    rows = np.asarray(rows)
    if rows.size == 0:
        return 0
    return len(row_echelon(field, rows)[1])


def rank_and_kernel(field, rows, width=None):
    # type: (Field, Any, Optional[int]) -> Tuple[int, np.ndarray]
    """ Rank of the row list and a basis of the vectors it annihilates.

    :param rows: 2D array (or list of rows)
    :param width: column count, needed only when the row list is empty
    :return: (rank, kernel basis as the rows of a 2D array) """

    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        width = width if width is not None else rows.shape[-1]
        return 0, identity(width)
    echelon, pivots = row_echelon(field, rows)
    width = echelon.shape[1]
    free = [column for column in range(width) if column not in pivots]
    kernel = np.zeros((len(free), width), dtype=np.int64)
    for index, column in enumerate(free):
        kernel[index, column] = 1
        kernel[index, pivots] = field.neg(echelon[:len(pivots), column])
    return len(pivots), kernel


def solve(field, matrix, target):
    # type: (Field, np.ndarray, np.ndarray) -> Optional[np.ndarray]
    """ One solution x of `M x = target`, or None when inconsistent. """

    matrix = np.asarray(matrix, dtype=np.int64)
    augmented = np.hstack([matrix, np.asarray(target).reshape(-1, 1)])
    echelon, pivots = row_echelon(field, augmented)
    width = matrix.shape[1]
    if width in pivots:
        return None
    solution = np.zeros(width, dtype=np.int64)
    for row, column in enumerate(pivots):
        solution[column] = echelon[row, width]
    return solution


def inverse(field, matrix):
    # type: (Field, np.ndarray) -> np.ndarray
    matrix = np.asarray(matrix, dtype=np.int64)
    size = len(matrix)
    echelon, pivots = row_echelon(field,
                                  np.hstack([matrix, identity(size)]))
    if pivots[:size] != list(range(size)) or len(pivots) < size:
        raise SingularMatrix('matrix is not invertible',
                             matrix=matrix.tolist())
    return echelon[:size, size:]


def canonical_vectors(field, length):
    # type: (Field, int) -> np.ndarray
    """ One representative per 1-space of GF(q)^length, the first nonzero
    coordinate being one, in lexicographic order. """

    chunks = []
    for lead in reversed(range(length)):
        width = length - lead - 1
        tails = np.array(list(itertools.product(range(field.q), repeat=width)),
                         dtype=np.int64).reshape(field.q ** width, width)
        chunk = np.zeros((len(tails), length), dtype=np.int64)
        chunk[:, lead] = 1
        chunk[:, lead + 1:] = tails
        chunks.append(chunk)
    return np.vstack(chunks)


def normalize(field, vectors):
    # type: (Field, np.ndarray) -> np.ndarray
    """ Scale every (nonzero) vector so its first nonzero coordinate is one.
    Zero vectors stay zero. """

    vectors = np.asarray(vectors, dtype=np.int64)
    nonzero = vectors != 0
    lead = np.argmax(nonzero, axis=-1)
    leading = np.take_along_axis(vectors, lead[..., None], axis=-1)
    leading = np.where(leading == 0, 1, leading)
    return field.mul(vectors, field.inv(leading))


def encode(field, vectors):
    # type: (Field, np.ndarray) -> np.ndarray
    """ Big-endian integer code of each vector; it orders canonical vectors
    lexicographically. """

    vectors = np.asarray(vectors, dtype=np.int64)
    weights = field.q ** np.arange(vectors.shape[-1] - 1, -1, -1,
                                   dtype=np.int64)
    return vectors.dot(weights)


def eigen_spectrum(field, matrix):
    # type: (Field, np.ndarray) -> List[Eigen]
    """ Eigenvalues in F with right and left eigenspace bases, found by a
    singularity test of `M - lambda I` for every lambda. """

    matrix = np.asarray(matrix, dtype=np.int64)
    result = []
    for value in range(field.q):
        shifted = shift(field, matrix, field.neg(value))
        _, right = rank_and_kernel(field, shifted)
        if len(right):
            _, left = rank_and_kernel(field, transpose(shifted))
            result.append(Eigen(value, right, left))
    return result


def eigenvector_mask(field, matrix, points):
    # type: (Field, np.ndarray, np.ndarray) -> np.ndarray
    """ Which of the points x satisfy `M x in <x>`, batched over matrices.

    :param matrix: one matrix or a stack of them
    :param points: canonical vectors of the points, as rows
    :return: bool array, batch axes followed by the point axis """

    images = apply(field, matrix, points)
    x = np.broadcast_to(points, images.shape)
    dependent = np.ones(images.shape[:-1], dtype=bool)
    for i, j in itertools.combinations(range(points.shape[-1]), 2):
        dependent &= field.sub(field.mul(x[..., i], images[..., j]),
                               field.mul(x[..., j], images[..., i])) == 0
    return dependent


def has_eigenvector(field, matrix, points):
    # type: (Field, np.ndarray, np.ndarray) -> Any
    """ Batched test: does some point x satisfy `M x in <x>`? """
    return np.any(eigenvector_mask(field, matrix, points), axis=-1)


class Poly(object):
    """ Polynomial over a finite field, coefficients little-endian. """

    def __init__(self, field, coefficients):
        # type: (Field, Sequence[int]) -> None
        coefficients = [int(c) for c in coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self.field = field
        self.coefficients = tuple(coefficients)

    @property
    def degree(self):
        # type: () -> int
        return len(self.coefficients) - 1

    @property
    def is_monic(self):
        # type: () -> bool
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and \
            self.coefficients == other.coefficients

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.field, self.coefficients))

    def __repr__(self):
        terms = []
        for power in reversed(range(len(self.coefficients))):
            c = self.coefficients[power]
            if not c:
                continue
            unit = {0: '', 1: 't'}.get(power, 't^{0}'.format(power))
            if not unit:
                terms.append(str(c))
            elif c == 1:
                terms.append(unit)
            else:
                terms.append('{0}{1}'.format(c, unit))
        return ' + '.join(terms) if terms else '0'

    def evaluate(self, value):
        # type: (int) -> int
        result = 0
        for c in reversed(self.coefficients):
            result = int(self.field.add(self.field.mul(result, value), c))
        return result

    def evaluate_matrix(self, matrix):
        # type: (np.ndarray) -> np.ndarray
        matrix = np.asarray(matrix, dtype=np.int64)
        result = np.zeros_like(matrix)
        for c in reversed(self.coefficients):
            result = shift(self.field, matmul(self.field, result, matrix), c)
        return result

    def annihilates(self, matrix):
        # type: (np.ndarray) -> bool
        return not np.any(self.evaluate_matrix(matrix))

    def roots(self):
        # type: () -> List[int]
        return [value for value in range(self.field.q)
                if self.evaluate(value) == 0]

    def monic_divisors(self):
        """ The proper monic divisors, by trial division with every monic
        polynomial of smaller degree. """
        for degree in range(self.degree):
            for tail in itertools.product(range(self.field.q),
                                          repeat=degree):
                candidate = Poly(self.field, list(tail) + [1])
                if not self._remainder(candidate):
                    yield candidate

    def _remainder(self, divisor):
        # type: (Poly) -> List[int]
        field = self.field
        remainder = list(self.coefficients)
        lead = field.inv(divisor.coefficients[-1])
        while len(remainder) >= len(divisor.coefficients):
            factor = int(field.mul(remainder[-1], lead))
            offset = len(remainder) - len(divisor.coefficients)
            for i, c in enumerate(divisor.coefficients):
                remainder[offset + i] = int(
                    field.sub(remainder[offset + i], field.mul(factor, c)))
            while remainder and remainder[-1] == 0:
                remainder.pop()
        return remainder

    def is_irreducible_quadratic(self):
        # type: () -> bool
        return self.degree == 2 and not self.roots()


def minimal_polynomial(field, matrix):
    # type: (Field, np.ndarray) -> Poly
    """ The first linear dependency among I, M, M^2, ... made monic. """

    matrix = np.asarray(matrix, dtype=np.int64)
    powers = [identity(len(matrix)).ravel()]
    current = identity(len(matrix))
    while True:
        current = matmul(field, current, matrix)
        powers.append(current.ravel())
        _, kernel = rank_and_kernel(field, np.array(powers).T)
        if len(kernel):
            relation = kernel[0]
            return Poly(field, field.div(relation, relation[-1]))


def companion(field, a, b):
    # type: (Field, int, int) -> np.ndarray
    """ Companion matrix [[0, -b], [1, -a]] of t^2 + at + b. """
    return as_array([[0, field.neg(b)], [1, field.neg(a)]])


def _det3(field, x, y, z, columns):
    i, j, k = columns
    mul, sub, add = field.mul, field.sub, field.add
    return add(sub(mul(x[..., i], sub(mul(y[..., j], z[..., k]),
                                      mul(y[..., k], z[..., j]))),
                   mul(x[..., j], sub(mul(y[..., i], z[..., k]),
                                      mul(y[..., k], z[..., i])))),
               mul(x[..., k], sub(mul(y[..., i], z[..., j]),
                                  mul(y[..., j], z[..., i]))))


def check_smat(field, matrix, side='right', points=None):
    # type: (Field, np.ndarray, str, Optional[np.ndarray]) -> Any
    """ Is `M^2 x` in `<x, M x>` for every nonzero x (right side), or
    `xi M^2` in `<xi, xi M>` for every nonzero xi (left side)?

    Every point is tested once, through its canonical representative: the
    stack [x; Mx; M^2x] must have all 3x3 minors zero.

    :param matrix: one matrix or a stack of them
    :return: bool, or bool array over the batch axes """

    matrix = np.asarray(matrix, dtype=np.int64)
    if side == 'left':
        matrix = transpose(matrix)
    elif side != 'right':
        raise LinAlgError('side is either right or left, got {0}'
                          .format(side))
    size = matrix.shape[-1]
    if points is None:
        points = canonical_vectors(field, size)
    once = apply(field, matrix, points)
    twice = apply(field, matrix, once)
    x = np.broadcast_to(points, once.shape)
    holds = np.ones(once.shape[:-1], dtype=bool)
    for columns in itertools.combinations(range(size), 3):
        holds &= _det3(field, x, once, twice, columns) == 0
    result = np.all(holds, axis=-1)
    return bool(result) if result.ndim == 0 else result


def rational_block_basis(field, matrix):
    # type: (Field, np.ndarray) -> Tuple[np.ndarray, Poly]
    """ Basis change B with `B^-1 M B = diag(C, ..., C)`, C the companion
    matrix of the minimal polynomial, which must be an irreducible
    quadratic. The basis is (v1, M v1, v2, M v2, ...) where each v is the
    first standard vector outside the span collected so far. """

    matrix = np.asarray(matrix, dtype=np.int64)
    size = len(matrix)
    poly = minimal_polynomial(field, matrix)
    if not poly.is_irreducible_quadratic():
        raise NotQuadraticIrreducible(
            'minimal polynomial {0!r} is not an irreducible quadratic'
            .format(poly), poly=list(poly.coefficients))
    if size % 2:
        raise OddDimension('odd dimension {0} has no block basis'
                           .format(size))

    basis = []  # type: List[np.ndarray]
    for v in identity(size):
        if len(basis) == size:
            break
        if rank(field, basis + [v]) == len(basis):
            continue
        image = apply(field, matrix, v[None, :])[0]
        if rank(field, basis + [v, image]) != len(basis) + 2:
            break
        basis.extend([v, image])
    if len(basis) != size:
        raise BlockConstructionStalled('block basis stalled at {0} vectors'
                                       .format(len(basis)),
                                       matrix=matrix.tolist())

    change = np.array(basis, dtype=np.int64).T
    a, b = poly.coefficients[1], poly.coefficients[0]
    blocks = block_diagonal([companion(field, a, b)] * (size // 2))
    conjugate = matmul(field, matmul(field, inverse(field, change), matrix),
                       change)
    if not np.array_equal(conjugate, blocks):
        raise BlockConstructionStalled('block basis does not conjugate to '
                                       'the companion blocks',
                                       matrix=matrix.tolist())
    logging.debug('block basis found, minimal polynomial %r', poly)
    return change, poly


def parse_matrix(field, text, size=None):
    # type: (Field, str, Optional[int]) -> np.ndarray
    """ Read a matrix literal.

    Accepted forms: a row-major JSON grid `[[0,1],[1,1]]`, `I` (identity,
    needs the size), `O` (zero matrix), `diag(X, Y, ...)` where every part
    is one of these forms, and `@path` for a file holding any of them. """

    text = text.strip()
    if text.startswith('@'):
        with open(text[1:], 'r') as handle:
            return parse_matrix(field, handle.read(), size)
    if text in ('I', 'O'):
        if size is None:
            raise MatrixSyntaxError('{0} needs the matrix size'.format(text))
        return identity(size) if text == 'I' \
            else np.zeros((size, size), dtype=np.int64)
    match = re.match(r'^diag\((.*)\)$', text, re.DOTALL)
    if match:
        parts = _split_top_level(match.group(1))
        blocks = []
        for part in parts:
            block = _parse_scalar_block(field, part)
            blocks.append(block if block is not None
                          else parse_matrix(field, part))
        result = block_diagonal(blocks)
    else:
        try:
            grid = json.loads(text)
        except ValueError:
            raise MatrixSyntaxError('not a matrix literal: {0}'.format(text))
        if not isinstance(grid, list) or not grid or \
                not all(isinstance(row, list) for row in grid) or \
                len(set(len(row) for row in grid)) != 1 or \
                len(grid) != len(grid[0]):
            raise MatrixSyntaxError('not a square grid: {0}'.format(text))
        result = as_array([[field.coerce(v) for v in row] for row in grid])
    if size is not None and len(result) != size:
        raise MatrixSyntaxError('matrix has order {0}, expected {1}'
                                .format(len(result), size))
    return result


def _parse_scalar_block(field, text):
    # type: (Field, str) -> Optional[np.ndarray]
    text = text.strip()
    if re.match(r'^-?\d+$', text):
        return as_array([[field.coerce(int(text))]])
    return None


def _split_top_level(text):
    # type: (str) -> List[str]
    parts, depth, current = [], 0, ''
    for char in text:
        if char in '[(':
            depth += 1
        elif char in '])':
            depth -= 1
        if char == ',' and depth == 0:
            parts.append(current)
            current = ''
        else:
            current += char
    parts.append(current)
    return [part.strip() for part in parts if part.strip()]


def matrix_to_list(matrix):
    # type: (np.ndarray) -> List[List[int]]
    return [[int(v) for v in row] for row in np.asarray(matrix)]
