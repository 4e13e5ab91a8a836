# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module enumerates the projective space PG(n, q) and answers
incidence questions about its subspaces.

Points are indexed by the lexicographic order of their canonical vectors
(first nonzero coordinate is one). Hyperplanes are indexed the same way by
their canonical covectors, so the point and hyperplane lists are the same
array, read as columns or as rows. """

import itertools
import logging
import numpy as np

from typing import Any, Dict, List, Optional, Sequence, Tuple  # noqa: ignore=F401

from libflaggeom import Error
from libflaggeom.gf import Field  # noqa: ignore=F401
from libflaggeom.linalg import canonical_vectors, encode, matmul, normalize, \
    rank_and_kernel, row_echelon

__all__ = ['ProjectiveSpace', 'Subspace', 'Point', 'Hyperplane',
           'gaussian_binomial', 'theta', 'format_vector']


class ProjectiveError(Error):
    pass


class DimOutOfRange(ProjectiveError):
    pass


class AmbientMismatch(ProjectiveError):
    pass


def gaussian_binomial(n, k, q):
    # type: (int, int, int) -> int
    """ Number of k-dimensional subspaces of an n-dimensional vector space
    over GF(q). """
    if k < 0 or k > n:
        return 0
    numerator, denominator = 1, 1
    for i in range(k):
        numerator *= q ** (n - i) - 1
        denominator *= q ** (i + 1) - 1
    return numerator // denominator


def theta(n, q):
    # type: (int, int) -> int
    """ Number of points of PG(n, q). """
    return (q ** (n + 1) - 1) // (q - 1)


def format_vector(rep):
    # type: (Sequence[int]) -> str
    return '[{0}]'.format(':'.join(str(int(c)) for c in rep))


class Point(object):
    __slots__ = ('space', 'index')

    def __init__(self, space, index):
        # type: (ProjectiveSpace, int) -> None
        self.space = space
        self.index = int(index)

    @property
    def rep(self):
        # type: () -> np.ndarray
        return self.space.points[self.index]

    def __eq__(self, other):
        return type(self) is type(other) and self.space == other.space and \
            self.index == other.index

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((type(self).__name__, self.index))

    def __repr__(self):
        return format_vector(self.rep)


class Hyperplane(Point):
    """ A hyperplane, given by its canonical covector. """
    __slots__ = ()


class Subspace(object):
    """ A projective subspace stored with its reduced echelon basis and the
    sorted indices of its points. """

    def __init__(self, space, basis, point_set):
        # type: (ProjectiveSpace, np.ndarray, np.ndarray) -> None
        self.space = space
        self.basis = basis
        self.point_set = point_set

    @property
    def dim(self):
        # type: () -> int
        return len(self.basis) - 1

    def __contains__(self, point):
        index = point.index if isinstance(point, Point) else int(point)
        position = np.searchsorted(self.point_set, index)
        return position < len(self.point_set) and \
            self.point_set[position] == index

    def __len__(self):
        return len(self.point_set)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.space == other.space \
            and np.array_equal(self.basis, other.basis)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(self.point_set.tolist()))

    def __repr__(self):
        return '<{0}>'.format(', '.join(format_vector(row)
                                        for row in self.basis))

    def as_dict(self):
        return {'dim': self.dim,
                'basis': self.basis.tolist(),
                'points': self.point_set.tolist()}


class ProjectiveSpace(object):
    """ PG(n, q) with its points and hyperplanes enumerated. """

    def __init__(self, n, field):
        # type: (int, Field) -> None
        if n < 1:
            raise DimOutOfRange('projective dimension must be positive, '
                                'got {0}'.format(n), n=n)
        self.n = n
        self.field = field
        self.points = canonical_vectors(field, n + 1)
        self.codes = encode(field, self.points)
        self.size = len(self.points)
        self._incidence = None  # type: Optional[np.ndarray]
        self._subspaces = {}  # type: Dict[int, List[Subspace]]
        self._lookup = {}  # type: Dict[int, Dict[Tuple[int, ...], int]]
        logging.debug('PG(%d,%d) has %d points', n, field.q, self.size)

    def __eq__(self, other):
        return isinstance(other, ProjectiveSpace) and \
            (self.n, self.field) == (other.n, other.field)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.n, self.field))

    def __repr__(self):
        return 'PG({0},{1})'.format(self.n, self.field.q)

    def __getstate__(self):
        state = self.__dict__.copy()
        state['_subspaces'] = {}
        state['_lookup'] = {}
        return state

    @property
    def hyperplanes(self):
        # type: () -> np.ndarray
        return self.points

    def point(self, index):
        # type: (int) -> Point
        return Point(self, index)

    def hyperplane(self, index):
        # type: (int) -> Hyperplane
        return Hyperplane(self, index)

    def index_of(self, vectors):
        # type: (Any) -> Any
        """ Index of the point (or hyperplane) of each nonzero vector. """
        vectors = np.asarray(vectors, dtype=np.int64)
        if not np.all(np.any(vectors != 0, axis=-1)):
            raise ProjectiveError('the zero vector is not a point')
        codes = encode(self.field, normalize(self.field, vectors))
        return np.searchsorted(self.codes, codes)

    @property
    def incidence(self):
        # type: () -> np.ndarray
        """ Boolean matrix, entry [h, p] tells whether point p lies on
        hyperplane h. It is symmetric. """
        if self._incidence is None:
            values = matmul(self.field, self.points, self.points.T)
            self._incidence = values == 0
        return self._incidence

    def hyperplane_points(self, hyperplane):
        # type: (Any) -> np.ndarray
        index = hyperplane.index if isinstance(hyperplane, Point) \
            else int(hyperplane)
        return np.nonzero(self.incidence[index])[0]

    def points_of(self, basis):
        # type: (np.ndarray) -> np.ndarray
        """ Sorted point indices of the span of linearly independent rows. """
        basis = np.asarray(basis, dtype=np.int64)
        coefficients = canonical_vectors(self.field, len(basis))
        vectors = matmul(self.field, coefficients, basis)
        return np.sort(self.index_of(vectors))

    def subspace(self, rows):
        # type: (Any) -> Optional[Subspace]
        """ The subspace spanned by the rows, None when they are all zero. """
        echelon, pivots = row_echelon(self.field, rows)
        if not pivots:
            return None
        return Subspace(self, echelon, self.points_of(echelon))

    def annihilator(self, subspace):
        # type: (Subspace) -> np.ndarray
        """ Basis of the covectors vanishing on the subspace. """
        return rank_and_kernel(self.field, subspace.basis)[1]

    def hyperplanes_containing(self, subspace):
        # type: (Subspace) -> np.ndarray
        return self.points_of(row_echelon(self.field,
                                          self.annihilator(subspace))[0])

    def hyperplane_subspace(self, hyperplane):
        # type: (Hyperplane) -> Subspace
        kernel = rank_and_kernel(self.field,
                                 self.hyperplanes[hyperplane.index][None])[1]
        return self.subspace(kernel)

    def enumerate(self, dim):
        # type: (int) -> List[Subspace]
        """ All subspaces of the given projective dimension, sorted by their
        point sets. """

        if not 0 <= dim <= self.n - 1:
            raise DimOutOfRange('dimension {0} is not in [0, {1}]'
                                .format(dim, self.n - 1), dim=dim)
        if dim not in self._subspaces:
            bases = _echelon_bases(self.field, self.n + 1, dim + 1)
            coefficients = canonical_vectors(self.field, dim + 1)
            vectors = matmul(self.field, coefficients, bases)
            point_sets = np.sort(self.index_of(vectors), axis=-1)
            order = np.lexsort(point_sets.T[::-1])
            subspaces = [Subspace(self, bases[i], point_sets[i])
                         for i in order]
            expected = gaussian_binomial(self.n + 1, dim + 1, self.field.q)
            assert len(subspaces) == expected
            self._subspaces[dim] = subspaces
            logging.debug('%r: %d subspaces of dimension %d', self,
                          len(subspaces), dim)
        return self._subspaces[dim]

    def subspace_index(self, subspace):
        # type: (Subspace) -> int
        """ Position of the subspace in `enumerate(subspace.dim)`. """
        if subspace.dim not in self._lookup:
            self._lookup[subspace.dim] = dict(
                (tuple(s.point_set.tolist()), i)
                for i, s in enumerate(self.enumerate(subspace.dim)))
        return self._lookup[subspace.dim][tuple(subspace.point_set.tolist())]

    def _check(self, part):
        if part.space != self:
            raise AmbientMismatch('{0!r} does not belong to {1!r}'
                                  .format(part, self))

    def _rows(self, part):
        self._check(part)
        if isinstance(part, Hyperplane):
            return self.hyperplane_subspace(part).basis
        if isinstance(part, Point):
            return part.rep[None, :]
        return part.basis

    def span(self, parts):
        # type: (Sequence[Any]) -> Subspace
        rows = np.vstack([self._rows(part) for part in parts])
        return self.subspace(rows)

    def meet(self, a, b):
        # type: (Any, Any) -> Optional[Subspace]
        """ The intersection, None when it is empty. """
        a, b = self.span([a]), self.span([b])
        conditions = np.vstack([self.annihilator(a), self.annihilator(b)])
        _, kernel = rank_and_kernel(self.field, conditions, self.n + 1)
        if not len(kernel):
            return None
        return self.subspace(kernel)

    def incident(self, point, other):
        # type: (Point, Any) -> bool
        self._check(point)
        self._check(other)
        if isinstance(other, Hyperplane):
            return bool(self.incidence[other.index, point.index])
        if isinstance(other, Point):
            return point.index == other.index
        return point in other

    def line_through(self, a, b):
        # type: (int, int) -> Subspace
        return self.subspace(self.points[[a, b]])

    def format_point(self, index):
        # type: (int) -> str
        return format_vector(self.points[index])


def _echelon_bases(field, width, height):
    # type: (Field, int, int) -> np.ndarray
    """ Every reduced echelon matrix of full rank with the given shape. """

    result = []
    for pivots in itertools.combinations(range(width), height):
        free = [(row, column) for row, pivot in enumerate(pivots)
                for column in range(pivot + 1, width)
                if column not in pivots]
        for values in itertools.product(range(field.q), repeat=len(free)):
            basis = np.zeros((height, width), dtype=np.int64)
            basis[np.arange(height), list(pivots)] = 1
            for (row, column), value in zip(free, values):
                basis[row, column] = value
            result.append(basis)
    return np.array(result, dtype=np.int64).reshape(-1, height, width)
