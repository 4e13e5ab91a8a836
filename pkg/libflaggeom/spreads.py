# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module implements line spreads of PG(n, q) for odd n, their duals
and the hyperplanes of the flag geometry they define.

A spread is stored as a sorted 2D array of point indices, one row per line,
with the inverse map from points to lines. Every construction (standard,
canonical, from a matrix, piecemeal) produces such an array and validates
the partition property before handing it out.

Matrices act on column vectors. A basis argument is a matrix whose columns
are the basis vectors written in the natural coordinates; the matrices of
the constructions are given in that basis and converted with `E M E^-1`. """

import collections
import json
import logging
import numpy as np

from typing import Any, Dict, List, Optional, Sequence, Tuple  # noqa: ignore=F401

from libflaggeom import Error
from libflaggeom.flags import FlagGeometry  # noqa: ignore=F401
from libflaggeom.gf import Field, QuadraticExtension  # noqa: ignore=F401
from libflaggeom.hyperplanes import SPREAD, GeometricHyperplane, \
    Provenance, as_bitmap
from libflaggeom.linalg import LinAlgError, SingularMatrix, apply, \
    as_array, block_diagonal, canonical_vectors, check_smat, companion, \
    eigen_spectrum, eigenvector_mask, has_eigenvector, identity, inverse, \
    matmul, matrix_to_list, minimal_polynomial, rank, rank_and_kernel, \
    rational_block_basis, Poly
from libflaggeom.projective import AmbientMismatch, DimOutOfRange, \
    ProjectiveSpace, theta  # noqa: ignore=F401

__all__ = ['LineSpread', 'DualLineSpread', 'is_line_spread',
           'standard_spread', 'canonical_spread', 'spread_from_matrix',
           'piecemeal_spread', 'dual_spread', 'check_property_S',
           'spread_hyperplane', 'spread_of_hyperplane', 'apply_collineation',
           'piecemeal_collineation', 'is_standard', 'standardize_collineation',
           'standard_equivalence', 'SpreadFile']

STANDARD = 'STANDARD'
CANONICAL = 'CANONICAL'
FROM_MATRIX = 'FROM_MATRIX'
PIECEMEAL = 'PIECEMEAL'
RAW = 'RAW'

NOT_STANDARD = 'NOT_STANDARD'
INCONCLUSIVE = 'INCONCLUSIVE'

Construction = collections.namedtuple('Construction', ['kind', 'detail'])

StandardVerdict = collections.namedtuple('StandardVerdict',
                                         ['verdict', 'witness'])


class SpreadError(Error):
    pass


class NotASpread(SpreadError):
    pass


class NotADualSpread(SpreadError):
    pass


class EvenDimension(SpreadError):
    pass


class ProportionalPair(SpreadError):
    pass


class NotAGenerator(SpreadError):
    pass


class HasEigenvalue(SpreadError):
    pass


class SmatFails(SpreadError):
    pass


class EigenvalueInBlock(SpreadError):
    pass


class NotASubspace(SpreadError):
    pass


class PropertySFails(SpreadError):
    pass


class NoDual(SpreadError):
    pass


class TagMissing(SpreadError):
    pass


def _half(space):
    # type: (ProjectiveSpace) -> int
    if space.n % 2 == 0:
        raise EvenDimension('PG({0},{1}) has no line spread, the dimension '
                            'is even'.format(space.n, space.field.q),
                            n=space.n)
    return (space.n + 1) // 2


def _basis(space, basis):
    # type: (ProjectiveSpace, Any) -> np.ndarray
    if basis is None:
        return identity(space.n + 1)
    basis = as_array(basis)
    inverse(space.field, basis)
    return basis


def _conjugate(field, basis, matrix):
    # type: (Field, np.ndarray, np.ndarray) -> np.ndarray
    return matmul(field, matmul(field, basis, matrix),
                  inverse(field, basis))


def _all_vectors(field, length):
    # type: (Field, int) -> np.ndarray
    """ Every vector of GF(q)^length, the zero vector included. """
    codes = np.arange(field.q ** length, dtype=np.int64)
    weights = field.q ** np.arange(length, dtype=np.int64)
    return (codes[:, None] // weights[None, :]) % field.q


def line_points(space, first, second):
    # type: (ProjectiveSpace, np.ndarray, np.ndarray) -> np.ndarray
    """ Sorted point indices of the lines <x, y> for independent rows x, y:
    the point x and the points y + t x. """

    field = space.field
    scalars = field.elements
    first = np.asarray(first, dtype=np.int64)
    second = np.asarray(second, dtype=np.int64)
    others = field.add(second[:, None, :],
                       field.mul(scalars[None, :, None], first[:, None, :]))
    vectors = np.concatenate([first[:, None, :], others], axis=1)
    return np.sort(space.index_of(vectors), axis=-1)


def _point_sets(lines):
    # type: (Any) -> List[np.ndarray]
    return [np.sort(np.asarray(getattr(line, 'point_set', line),
                               dtype=np.int64))
            for line in lines]


def is_line_spread(space, lines):
    # type: (ProjectiveSpace, Any) -> Tuple[bool, Optional[Dict[str, Any]]]
    """ Are the lines a partition of the points?

    :param lines: point index lists or `Subspace` objects
    :return: the verdict and the first violation """

    lines = _point_sets(lines)
    for index, members in enumerate(lines):
        if len(members) != space.field.q + 1 or not np.array_equal(
                space.line_through(members[0], members[1]).point_set,
                members):
            return False, {'line': index, 'reason': 'not a line'}
    counts = np.bincount(np.concatenate(lines) if lines else
                         np.zeros(0, dtype=np.int64), minlength=space.size)
    wrong = np.nonzero(counts != 1)[0]
    if len(wrong):
        point = int(wrong[0])
        return False, {'point': point,
                       'vector': space.format_point(point),
                       'count': int(counts[point])}
    return True, None


class LineSpread(object):
    """ A partition of the points of PG(n, q) into lines. """

    def __init__(self, space, lines, construction=None, validate=True):
        # type: (ProjectiveSpace, Any, Optional[Construction], bool) -> None
        lines = _point_sets(lines)
        if validate:
            valid, violation = is_line_spread(space, lines)
            if not valid:
                raise NotASpread('the lines do not partition the points of '
                                 '{0!r}: {1}'.format(space, violation),
                                 violation=violation)
        self.space = space
        self.lines = np.unique(np.array(lines, dtype=np.int64), axis=0)
        self.construction = construction or Construction(RAW, None)
        self.line_of_point = np.full(space.size, -1, dtype=np.int64)
        self.line_of_point[self.lines] = \
            np.arange(len(self.lines))[:, None]
        self._inside = None  # type: Optional[np.ndarray]

    def __len__(self):
        return len(self.lines)

    def __eq__(self, other):
        return isinstance(other, LineSpread) and \
            self.space == other.space and \
            np.array_equal(self.lines, other.lines)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.lines.tobytes())

    def __repr__(self):
        return 'LineSpread({0}, {1!r}, {2} lines)'.format(
            self.construction.kind, self.space, len(self))

    def line(self, index):
        """ The line as a `Subspace`. """
        return self.space.subspace(self.space.points[self.lines[index][:2]])

    def line_through(self, point):
        # type: (int) -> np.ndarray
        return self.lines[self.line_of_point[int(point)]]

    def bitmap(self):
        # type: () -> np.ndarray
        """ Boolean matrix, [l, p] tells whether p is on the l-th line. """
        result = np.zeros((len(self.lines), self.space.size), dtype=bool)
        result[np.arange(len(self.lines))[:, None], self.lines] = True
        return result

    def line_in_hyperplane(self):
        # type: () -> np.ndarray
        """ Boolean matrix, [l, h] tells whether the l-th line is on the
        hyperplane h. """
        if self._inside is None:
            self._inside = np.all(self.space.incidence[:, self.lines],
                                  axis=-1).T
        return self._inside

    def as_dict(self):
        return {'n': self.space.n,
                'field': self.space.field.as_dict(),
                'tag': {'kind': self.construction.kind,
                        'detail': self.construction.detail},
                'lines': self.lines.tolist()}

    @classmethod
    def from_dict(cls, data, space=None):
        # type: (Dict[str, Any], Optional[ProjectiveSpace]) -> LineSpread
        field = Field.from_dict(data['field'])
        if space is None:
            space = ProjectiveSpace(int(data['n']), field)
        elif (space.n, space.field) != (data['n'], field):
            raise AmbientMismatch('spread of PG({0},{1}) read for {2!r}'
                                  .format(data['n'], field.q, space))
        tag = data.get('tag') or {}
        return cls(space, data['lines'],
                   Construction(tag.get('kind', RAW), tag.get('detail')))


class SpreadFile(object):
    """ Spread persistence methods. """

    @staticmethod
    def save(filename, spread):
        # type: (str, LineSpread) -> None
        with open(filename, 'w') as handle:
            json.dump(spread.as_dict(), handle, sort_keys=True, indent=4)

    @staticmethod
    def load(filename, space=None):
        # type: (str, Optional[ProjectiveSpace]) -> LineSpread
        with open(filename, 'r') as handle:
            return LineSpread.from_dict(json.load(handle), space)


class DualLineSpread(object):
    """ A family of sub-hyperplanes, every hyperplane containing exactly one
    of them. """

    def __init__(self, space, members, validate=True):
        # type: (ProjectiveSpace, Any, bool) -> None
        members = _point_sets(members)
        expected = theta(space.n - 2, space.field.q)
        if validate:
            for index, points in enumerate(members):
                if len(points) != expected or \
                        rank(space.field, space.points[points]) != space.n - 1:
                    raise NotADualSpread('member {0} is not a sub-hyperplane'
                                         .format(index), member=index)
        self.space = space
        self.members = np.unique(np.array(members, dtype=np.int64), axis=0)
        self._contained = np.all(space.incidence[:, self.members],
                                 axis=-1).T
        counts = self._contained.sum(axis=0)
        if validate and np.any(counts != 1):
            hyperplane = int(np.nonzero(counts != 1)[0][0])
            raise NotADualSpread('hyperplane {0} contains {1} members'
                                 .format(space.format_point(hyperplane),
                                         int(counts[hyperplane])),
                                 hyperplane=hyperplane)
        self.member_of_hyp = np.argmax(self._contained, axis=0)

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return isinstance(other, DualLineSpread) and \
            self.space == other.space and \
            np.array_equal(self.members, other.members)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.members.tobytes())

    def __repr__(self):
        return 'DualLineSpread({0!r}, {1} members)'.format(self.space,
                                                           len(self))

    def member(self, index):
        return self.space.subspace(self.space.points[self.members[index]])

    def bitmap(self):
        # type: () -> np.ndarray
        result = np.zeros((len(self.members), self.space.size), dtype=bool)
        result[np.arange(len(self.members))[:, None], self.members] = True
        return result

    def member_in_hyperplane(self):
        # type: () -> np.ndarray
        return self._contained

    def as_dict(self):
        return {'n': self.space.n,
                'field': self.space.field.as_dict(),
                'members': self.members.tolist()}


# constructions

def matrix_lines(space, matrix):
    # type: (ProjectiveSpace, np.ndarray) -> np.ndarray
    """ The distinct lines <p, Mp>. They form a spread only when M also
    satisfies `M^2 x in <x, Mx>`. """

    field = space.field
    matrix = as_array(matrix)
    fixed = eigenvector_mask(field, matrix, space.points)
    if np.any(fixed):
        point = int(np.argmax(fixed))
        raise HasEigenvalue('the point {0} is fixed by the matrix'
                            .format(space.format_point(point)),
                            point=point)
    images = apply(field, matrix, space.points)
    return np.unique(line_points(space, space.points, images), axis=0)


def spread_from_matrix(space, matrix):
    # type: (ProjectiveSpace, Any) -> LineSpread
    """ The spread {<p, Mp>} of a matrix without eigenvalues in the field
    and with `M^2 x in <x, Mx>` for every x. """

    field = space.field
    matrix = as_array(matrix)
    if matrix.shape != (space.n + 1, space.n + 1):
        raise SpreadError('matrix of shape {0} for {1!r}'
                          .format(matrix.shape, space))
    values = [eigen.value for eigen in eigen_spectrum(field, matrix)]
    if values:
        raise HasEigenvalue('the matrix has eigenvalues {0}'.format(values),
                            values=values)
    if not check_smat(field, matrix, 'right', space.points):
        raise SmatFails('M^2 x is not in <x, Mx> for some x',
                        matrix=matrix_to_list(matrix))
    return LineSpread(space, matrix_lines(space, matrix),
                      Construction(FROM_MATRIX, matrix_to_list(matrix)))


def _extension_matrix(extension, values):
    # type: (QuadraticExtension, Sequence[int]) -> np.ndarray
    """ Columns are the coordinates of the values over the base field. """
    return np.array([extension.coordinates(v) for v in values],
                    dtype=np.int64).T


def _check_extension(space, extension):
    if extension.base != space.field:
        raise SpreadError('{0!r} does not extend the field of {1!r}'
                          .format(extension, space))


def standard_matrix(space, extension, a, b, basis=None, generator=None):
    # type: (ProjectiveSpace, QuadraticExtension, Sequence[int], Sequence[int], Any, Optional[int]) -> np.ndarray
    """ A matrix whose lines <p, Mp> are the standard spread of the tuples.

    The coordinates of a vector are mapped to the vector of the extension
    with entries `x[2j] a[j] + x[2j+1] b[j]`. Multiplication by the
    generator, pulled back through this map, is the matrix.

    :return: the matrix in natural coordinates """

    _check_extension(space, extension)
    field = space.field
    m = _half(space)
    if len(a) != m or len(b) != m:
        raise SpreadError('the tuples need {0} entries each'.format(m))
    generator = extension.omega if generator is None else int(generator)
    if extension.contains_base(generator):
        raise NotAGenerator('{0} lies in the base field'.format(generator))
    multiplication = extension.multiplication_matrix(generator)
    blocks = []
    for j, pair in enumerate(zip(a, b)):
        coordinates = _extension_matrix(extension, pair)
        try:
            pullback = inverse(field, coordinates)
        except SingularMatrix:
            raise ProportionalPair('a[{0}] = {1} and b[{0}] = {2} are '
                                   'proportional'.format(j, *pair),
                                   index=j)
        blocks.append(matmul(field, matmul(field, pullback, multiplication),
                             coordinates))
    return _conjugate(field, _basis(space, basis), block_diagonal(blocks))


def standard_spread(space, extension, a, b, basis=None):
    # type: (ProjectiveSpace, QuadraticExtension, Sequence[int], Sequence[int], Any) -> LineSpread
    """ The lines whose vectors are the 1-spaces of the extension. """

    basis = _basis(space, basis)
    matrix = standard_matrix(space, extension, a, b, basis)
    detail = {'a': [int(v) for v in a],
              'b': [int(v) for v in b],
              'extension': extension.as_dict(),
              'basis': matrix_to_list(basis)}
    return LineSpread(space, matrix_lines(space, matrix),
                      Construction(STANDARD, detail))


def canonical_matrix(space, extension, generator=None, basis=None):
    # type: (ProjectiveSpace, QuadraticExtension, Optional[int], Any) -> np.ndarray
    """ diag(C, ..., C) in the given basis, C the companion matrix of the
    minimal polynomial of the generator. """

    _check_extension(space, extension)
    m = _half(space)
    generator = extension.omega if generator is None else int(generator)
    if extension.contains_base(generator):
        raise NotAGenerator('{0} lies in the base field'.format(generator))
    a, b = extension.char_poly(generator)
    blocks = block_diagonal([companion(space.field, a, b)] * m)
    return _conjugate(space.field, _basis(space, basis), blocks)


def canonical_spread(space, extension, generator=None, basis=None):
    # type: (ProjectiveSpace, QuadraticExtension, Optional[int], Any) -> Tuple[LineSpread, np.ndarray]
    """ The canonical spread of the generator and its companion matrix. """

    field = space.field
    generator = extension.omega if generator is None else int(generator)
    basis = _basis(space, basis)
    matrix = canonical_matrix(space, extension, generator, basis)
    a, b = extension.char_poly(generator)
    assert minimal_polynomial(field, matrix) == Poly(field, [b, a, 1])
    assert check_smat(field, matrix, 'right', space.points)
    detail = {'generator': generator,
              'extension': extension.as_dict(),
              'basis': matrix_to_list(basis)}
    spread = LineSpread(space, matrix_lines(space, matrix),
                        Construction(CANONICAL, detail))
    return spread, matrix


def piecemeal_spread(space, blocks, basis=None):
    # type: (ProjectiveSpace, Sequence[Any], Any) -> LineSpread
    """ The spread built layer by layer from 2x2 blocks without eigenvalues.

    With W_k spanned by the first 2k basis vectors and f_k acting on it as
    diag(A_1, ..., A_k), the lines are <v + e_2k, f_k(v) + e_2k+1> for
    every k < m and every v in W_k. """

    field = space.field
    m = _half(space)
    blocks = [as_array(block) for block in blocks]
    if len(blocks) != m - 1:
        raise SpreadError('{0!r} needs {1} blocks, got {2}'
                          .format(space, m - 1, len(blocks)))
    for index, block in enumerate(blocks):
        if block.shape != (2, 2):
            raise SpreadError('block {0} is not 2x2'.format(index))
        if eigen_spectrum(field, block):
            raise EigenvalueInBlock('block {0} has an eigenvalue'
                                    .format(index), index=index,
                                    block=matrix_to_list(block))
    basis = _basis(space, basis)
    size = space.n + 1
    chunks = []
    for k in range(m):
        tails = _all_vectors(field, 2 * k)
        images = apply(field, block_diagonal(blocks[:k]), tails) if k \
            else tails
        first = np.zeros((len(tails), size), dtype=np.int64)
        second = np.zeros((len(tails), size), dtype=np.int64)
        first[:, :2 * k] = tails
        first[:, 2 * k] = 1
        second[:, :2 * k] = images
        second[:, 2 * k + 1] = 1
        chunks.append(line_points(space, apply(field, basis, first),
                                  apply(field, basis, second)))
    detail = {'blocks': [matrix_to_list(block) for block in blocks],
              'basis': matrix_to_list(basis)}
    return LineSpread(space, np.vstack(chunks),
                      Construction(PIECEMEAL, detail))


def piecemeal_collineation(space, blocks, basis=None):
    # type: (ProjectiveSpace, Sequence[Any], Any) -> np.ndarray
    """ For n = 3: diag(A, C) with C the companion matrix of the
    characteristic polynomial of A. It fixes no point and stabilizes every
    line of the piecemeal spread of (A,). """

    if space.n != 3:
        raise DimOutOfRange('the collineation is built for n = 3 only')
    field = space.field
    block = as_array(blocks[0])
    determinant = field.sub(field.mul(block[0, 0], block[1, 1]),
                            field.mul(block[0, 1], block[1, 0]))
    trace = field.add(block[0, 0], block[1, 1])
    partner = as_array([[0, field.neg(determinant)], [1, trace]])
    return _conjugate(field, _basis(space, basis),
                      block_diagonal([block, partner]))


def apply_collineation(spread, matrix):
    # type: (LineSpread, Any) -> LineSpread
    """ The image of the spread under an invertible matrix. """

    space = spread.space
    matrix = as_array(matrix)
    inverse(space.field, matrix)
    vectors = space.points[spread.lines]
    images = apply(space.field, matrix, vectors)
    lines = np.sort(space.index_of(images), axis=-1)
    return LineSpread(space, lines,
                      Construction(RAW, {'image_of':
                                         spread.construction.kind}))


# duals

def _check_same_space(spread, other):
    if spread.space != other.space:
        raise AmbientMismatch('{0!r} and {1!r} live in different spaces'
                              .format(spread, other))


def check_property_S(spread, dual):
    # type: (LineSpread, DualLineSpread) -> Tuple[bool, bool]
    """ Evaluate both compatibility properties by counting.

    (S)  every member L of the dual contains the spread line of each of
         its points, so the spread lines inside L cover L;
    (S*) every hyperplane through a spread line l contains exactly one
         member of the dual through l.

    :return: the two verdicts, independently computed """

    _check_same_space(spread, dual)
    line_bitmap = spread.bitmap().astype(np.int64)
    member_bitmap = dual.bitmap()
    # [l, k]: the l-th line lies in the k-th member
    line_in_member = np.all(member_bitmap[:, spread.lines], axis=-1).T
    covered = line_in_member.astype(np.int64).T.dot(line_bitmap)
    s_holds = bool(np.array_equal(covered, member_bitmap.astype(np.int64)))

    line_in_hyp = spread.line_in_hyperplane()
    through = line_in_member.astype(np.int64).dot(
        dual.member_in_hyperplane().astype(np.int64))
    s_star_holds = bool(np.all(through[line_in_hyp] == 1))
    return s_holds, s_star_holds


def dual_spread(spread):
    # type: (LineSpread) -> DualLineSpread
    """ The unique dual of the spread, when it exists.

    For every hyperplane H the only possible member inside H is the set of
    points p of H whose spread line lies in H. The dual exists exactly when
    every such set is a sub-hyperplane, they form a dual spread, and the
    pair satisfies the compatibility properties. """

    space = spread.space
    if space.n < 3:
        raise DimOutOfRange('duals of spreads need n >= 3')
    field = space.field
    candidates = spread.line_in_hyperplane()[spread.line_of_point].T
    expected = theta(space.n - 2, field.q)
    for hyperplane, row in enumerate(candidates):
        points = np.nonzero(row)[0]
        if len(points) != expected or \
                rank(field, space.points[points]) != space.n - 1:
            raise NotASubspace('the spread lines inside {0} do not cover a '
                               'sub-hyperplane'
                               .format(space.format_point(hyperplane)),
                               hyperplane=hyperplane, size=len(points))
    members = np.unique(candidates, axis=0)
    try:
        dual = DualLineSpread(space, [np.nonzero(row)[0] for row in members])
    except NotADualSpread as error:
        raise NotASubspace(str(error), **error.details)
    s_holds, s_star_holds = check_property_S(spread, dual)
    if not (s_holds and s_star_holds):
        raise PropertySFails('the forced dual is not compatible',
                             s=s_holds, s_star=s_star_holds)
    logging.debug('%r has a dual of %d members', spread, len(dual))
    return dual


def has_dual(spread):
    # type: (LineSpread) -> bool
    try:
        dual_spread(spread)
        return True
    except (NotASubspace, PropertySFails):
        return False


# hyperplanes

def spread_hyperplane_members(geometry, spread, dual):
    # type: (FlagGeometry, LineSpread, DualLineSpread) -> Tuple[np.ndarray, np.ndarray]
    """ The flags (p, H) with the spread line of p on H, and the flags with
    p on the member of H. """

    _check_same_space(spread, dual)
    if geometry.space != spread.space:
        raise AmbientMismatch('{0!r} is not over the space of {1!r}'
                              .format(geometry, spread))
    p, h = geometry.flag_point, geometry.flag_hyp
    by_lines = spread.line_in_hyperplane()[spread.line_of_point[p], h]
    by_members = dual.bitmap()[dual.member_of_hyp[h], p]
    return by_lines, by_members


def spread_hyperplane(geometry, spread, dual=None):
    # type: (FlagGeometry, LineSpread, Optional[DualLineSpread]) -> GeometricHyperplane
    if dual is None:
        try:
            dual = dual_spread(spread)
        except (NotASubspace, PropertySFails) as error:
            raise NoDual('{0!r} admits no dual: {1}'.format(spread, error),
                         **error.details)
    by_lines, by_members = spread_hyperplane_members(geometry, spread, dual)
    if not np.array_equal(by_lines, by_members):
        flag = int(np.argmax(by_lines != by_members))
        raise SpreadError('the two descriptions differ at {0}'
                          .format(geometry.format_flag(flag)), flag=flag)
    return GeometricHyperplane(
        geometry, by_lines,
        Provenance(SPREAD, {'construction': spread.construction.kind,
                            'lines': len(spread)}))


def spread_of_hyperplane(geometry, flags):
    # type: (FlagGeometry, Any) -> Optional[LineSpread]
    """ Recognize a hyperplane of spread type: the hyperplanes paired with a
    point p must meet in a line, which is the spread line of p.

    :return: the spread, or None when the flags are not of spread type """

    space = geometry.space
    members = as_bitmap(geometry, flags)
    lines = []
    for point in range(space.size):
        own = geometry.point_flags[point]
        hyperplanes = geometry.flag_hyp[own[members[own]]]
        if not len(hyperplanes):
            return None
        common = np.nonzero(np.all(space.incidence[hyperplanes], axis=0))[0]
        if len(common) != space.field.q + 1:
            return None
        lines.append(common)
    lines = np.unique(np.array(lines), axis=0)
    if not is_line_spread(space, lines)[0]:
        return None
    spread = LineSpread(space, lines, Construction(RAW, None))
    if not has_dual(spread):
        return None
    by_lines, _ = spread_hyperplane_members(geometry, spread,
                                            dual_spread(spread))
    return spread if np.array_equal(by_lines, members) else None


# standardness

def _stabilizer(spread):
    # type: (LineSpread) -> np.ndarray
    """ Basis (flattened rows) of the matrices X with X p on the spread line
    of p for every point p: xi X p = 0 for every covector xi vanishing on
    the line, written for two points of every line. """

    space = spread.space
    field = space.field
    size = space.n + 1
    points = space.points[spread.lines[:, :2]]
    annihilators = np.array([rank_and_kernel(field, pair)[1]
                             for pair in points])
    constraints = field.mul(annihilators[:, None, :, :, None],
                            points[:, :, None, None, :])
    _, kernel = rank_and_kernel(field, constraints.reshape(-1, size * size))
    return kernel


def _complement_of_identity(field, rows, size):
    # type: (Field, np.ndarray, int) -> np.ndarray
    chosen = [identity(size).ravel()]
    for row in rows:
        if rank(field, chosen + [row]) > len(chosen):
            chosen.append(row)
    return np.array(chosen[1:], dtype=np.int64).reshape(-1, size * size)


def _standard_witness(field, matrix, dimension):
    witness = {'matrix': matrix_to_list(matrix),
               'stabilizer_dim': dimension}
    try:
        basis, poly = rational_block_basis(field, matrix)
        witness['block_basis'] = matrix_to_list(basis)
        witness['minimal_polynomial'] = repr(poly)
    except LinAlgError as error:
        logging.warning('block basis of a fixed point free stabilizer '
                        'failed: %s', error)
        witness['anomaly'] = str(error)
    return witness


def is_standard(spread, cap=1000000, batch=None):
    # type: (LineSpread, int, Optional[int]) -> StandardVerdict
    """ Look for a fixed point free matrix stabilizing every line.

    Such a matrix exists exactly for spreads of standard type. The matrices
    stabilizing every line form a space containing the scalars; fixing no
    point is invariant under `sX + tI`, so the projective classes modulo
    the scalars are searched, up to the cap. """

    space = spread.space
    field = space.field
    size = space.n + 1
    stabilizer = _stabilizer(spread)
    dimension = len(stabilizer)
    complement = _complement_of_identity(field, stabilizer, size)
    logging.debug('%r: line stabilizer of dimension %d', spread, dimension)
    if not len(complement):
        return StandardVerdict(NOT_STANDARD, {'stabilizer_dim': dimension})
    classes = theta(len(complement) - 1, field.q)
    if classes > cap:
        return StandardVerdict(INCONCLUSIVE, {'stabilizer_dim': dimension,
                                              'classes': classes,
                                              'cap': cap})
    coefficients = canonical_vectors(field, len(complement))
    batch = batch or max(1, 2000000 // (space.size * size))
    for start in range(0, len(coefficients), batch):
        matrices = matmul(field, coefficients[start:start + batch],
                          complement).reshape(-1, size, size)
        free = ~has_eigenvector(field, matrices, space.points)
        if np.any(free):
            matrix = matrices[int(np.argmax(free))]
            return StandardVerdict(STANDARD,
                                   _standard_witness(field, matrix,
                                                     dimension))
    return StandardVerdict(NOT_STANDARD, {'stabilizer_dim': dimension,
                                          'classes': classes})


def _standard_tuples(spread):
    # type: (LineSpread) -> Tuple[QuadraticExtension, List[int], List[int], np.ndarray]
    kind, detail = spread.construction
    if kind not in (STANDARD, CANONICAL) or not detail:
        raise TagMissing('{0!r} carries no standard construction, test it '
                         'with is_standard'.format(spread))
    extension = QuadraticExtension.from_dict(detail['extension'])
    m = _half(spread.space)
    if kind == CANONICAL:
        a, b = [1] * m, [int(detail['generator'])] * m
    else:
        a, b = list(detail['a']), list(detail['b'])
    return extension, a, b, as_array(detail['basis'])


def standardize_collineation(spread, generator=None):
    # type: (LineSpread, Optional[int]) -> np.ndarray
    """ A block diagonal matrix mapping a standard spread onto the canonical
    spread of the generator (in the same basis).

    Block j maps the coordinates over (a_j, b_j) to the coordinates over
    (1, w): it is Q^-1 P_j with P_j, Q the coordinate matrices of the
    pairs. """

    extension, a, b, basis = _standard_tuples(spread)
    field = spread.space.field
    generator = extension.omega if generator is None else int(generator)
    if extension.contains_base(generator):
        raise NotAGenerator('{0} lies in the base field'.format(generator))
    target = inverse(field, _extension_matrix(extension, [1, generator]))
    blocks = []
    for j, pair in enumerate(zip(a, b)):
        coordinates = _extension_matrix(extension, pair)
        if rank(field, coordinates) < 2:
            raise ProportionalPair('a[{0}] and b[{0}] are proportional'
                                   .format(j), index=j)
        blocks.append(matmul(field, target, coordinates))
    return _conjugate(field, basis, block_diagonal(blocks))


def standard_equivalence(spread, other):
    # type: (LineSpread, LineSpread) -> np.ndarray
    """ A matrix mapping one standard spread onto another built over the
    same extension. """

    _check_same_space(spread, other)
    if _standard_tuples(spread)[0] != _standard_tuples(other)[0]:
        raise SpreadError('the spreads are built over different extensions')
    field = spread.space.field
    return matmul(field, inverse(field, standardize_collineation(other)),
                  standardize_collineation(spread))
