# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module builds the point-hyperplane flag geometry of PG(n, q).

The points of the geometry are the flags (p, H) with p on H. Flags are
numbered in lexicographic order of (point index, hyperplane index). Lines
come in two families:

  PENCIL  a point p and a sub-hyperplane L through p; the flags (p, H) for
          every hyperplane H containing L.
  AXIAL   a line l and a hyperplane H containing it; the flags (x, H) for
          every point x of l.

A sub-hyperplane is carried by the line of the dual space formed by the
hyperplanes containing it. Since points and hyperplanes share their index
list, both families are carried by `space.enumerate(1)`. """

import collections
import logging
import numpy as np

from typing import Any, Dict, List, Optional, Tuple  # noqa: ignore=F401

from libflaggeom import Error
from libflaggeom.projective import DimOutOfRange, Hyperplane, Point, \
    ProjectiveSpace, format_vector, theta  # noqa: ignore=F401

__all__ = ['FlagGeometry', 'Flag', 'FlagLine', 'SingularSubspace',
           'build_flag_geometry']

PENCIL = 'PENCIL'
AXIAL = 'AXIAL'

EQUAL = 'EQUAL'
COLLINEAR = 'COLLINEAR'
POLAR = 'POLAR'
SPECIAL = 'SPECIAL'
OPPOSITE = 'OPPOSITE'

CLASSES = (EQUAL, COLLINEAR, POLAR, SPECIAL, OPPOSITE)
DISTANCE = {EQUAL: 0, COLLINEAR: 1, POLAR: 2, SPECIAL: 2, OPPOSITE: 3}

Flag = collections.namedtuple('Flag',
                              ['point_index', 'hyp_index', 'flag_index'])

FlagLine = collections.namedtuple('FlagLine',
                                  ['kind', 'base', 'carrier', 'members'])

SingularSubspace = collections.namedtuple('SingularSubspace',
                                          ['kind', 'base', 'members'])


class SizeCap(Error):
    pass


class GeometryMismatch(Error):
    pass


class NotPolar(Error):
    pass


class FlagGeometry(object):
    """ The flags, the flag lines and the collinearity graph. """

    def __init__(self, space, cap=None):
        # type: (ProjectiveSpace, Optional[int]) -> None
        if space.n < 2:
            raise DimOutOfRange('flag geometry needs n >= 2, got {0}'
                                .format(space.n), n=space.n)
        q = space.field.q
        count = space.size * theta(space.n - 1, q)
        if cap is not None and count > cap:
            raise SizeCap('{0} flags exceed the cap of {1}'
                          .format(count, cap), count=count, cap=cap)
        self.space = space
        self.n = space.n
        self.q = q

        incidence = space.incidence
        # the matrix is symmetric, row-major order gives (point, hyperplane)
        self.flag_point, self.flag_hyp = np.nonzero(incidence)
        self.size = len(self.flag_point)
        self.flag_id = np.full(incidence.shape, -1, dtype=np.int64)
        self.flag_id[self.flag_point, self.flag_hyp] = np.arange(self.size)
        self.point_flags = [np.nonzero(self.flag_point == p)[0]
                            for p in range(space.size)]
        self.hyp_flags = [np.nonzero(self.flag_hyp == h)[0]
                          for h in range(space.size)]

        self._build_lines()
        self._build_neighbors()
        logging.info('flag geometry of %r: %d flags, %d lines', space,
                     self.size, len(self.lines))

    def __eq__(self, other):
        return isinstance(other, FlagGeometry) and self.space == other.space

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return 'A({0},{1})'.format(self.n, self.q)

    def _build_lines(self):
        carriers = self.space.enumerate(1)
        carrier_points = np.array([line.point_set for line in carriers])
        # inside[x, l]: the line l lies on the hyperplane x, equivalently
        # the point x lies on every hyperplane of the dual line l
        inside = np.all(self.space.incidence[:, carrier_points], axis=-1)

        lines = []
        for p, l in zip(*np.nonzero(inside)):
            members = np.sort(self.flag_id[p, carrier_points[l]])
            lines.append(FlagLine(PENCIL, int(p), int(l), members))
        for h, l in zip(*np.nonzero(inside)):
            members = np.sort(self.flag_id[carrier_points[l], h])
            lines.append(FlagLine(AXIAL, int(h), int(l), members))
        self.lines = lines
        self.line_members = np.array([line.members for line in lines])

        per_flag = collections.defaultdict(list)  # type: Dict[int, List[int]]
        for index, members in enumerate(self.line_members):
            for flag in members:
                per_flag[int(flag)].append(index)
        self.flag_lines = [np.array(per_flag[f], dtype=np.int64)
                           for f in range(self.size)]
        expected = 2 * theta(self.n - 2, self.q)
        assert all(len(ids) == expected for ids in self.flag_lines)

    def _build_neighbors(self):
        neighbors = []
        for f in range(self.size):
            p, h = self.flag_point[f], self.flag_hyp[f]
            joined = np.union1d(self.point_flags[p], self.hyp_flags[h])
            neighbors.append(joined[joined != f])
        self.neighbors = neighbors

    # flags

    def flag(self, index):
        # type: (int) -> Flag
        return Flag(int(self.flag_point[index]), int(self.flag_hyp[index]),
                    int(index))

    def flag_of(self, point, hyperplane):
        # type: (Any, Any) -> int
        """ Flag index of a (point, hyperplane) pair given as indices,
        `Point` objects or vectors. """
        p = _index(self.space, point)
        h = _index(self.space, hyperplane)
        index = int(self.flag_id[p, h])
        if index < 0:
            raise GeometryMismatch('{0} is not on {1}'.format(
                self.space.format_point(p), self.space.format_point(h)))
        return index

    def format_flag(self, index):
        # type: (int) -> str
        return '({0},{1})'.format(
            format_vector(self.space.points[self.flag_point[index]]),
            format_vector(self.space.hyperplanes[self.flag_hyp[index]]))

    def _flag_index(self, flag):
        if isinstance(flag, Flag):
            return flag.flag_index
        index = int(flag)
        if not 0 <= index < self.size:
            raise GeometryMismatch('flag {0} is not in {1!r}'
                                   .format(index, self))
        return index

    # distances

    def pair_class(self, a, b):
        # type: (Any, Any) -> str
        """ Closed form classification of a pair of flags. """
        a, b = self._flag_index(a), self._flag_index(b)
        if a == b:
            return EQUAL
        p, H = self.flag_point[a], self.flag_hyp[a]
        q, K = self.flag_point[b], self.flag_hyp[b]
        if p == q or H == K:
            return COLLINEAR
        incidence = self.space.incidence
        p_on_K, q_on_H = incidence[K, p], incidence[H, q]
        if p_on_K and q_on_H:
            return POLAR
        if p_on_K or q_on_H:
            return SPECIAL
        return OPPOSITE

    def distance(self, a, b):
        # type: (Any, Any) -> int
        return DISTANCE[self.pair_class(a, b)]

    def class_matrix(self):
        # type: () -> np.ndarray
        """ `pair_class` for all pairs at once, as positions in `CLASSES`. """
        incidence = self.space.incidence
        p, h = self.flag_point, self.flag_hyp
        same = (p[:, None] == p[None, :]) | (h[:, None] == h[None, :])
        a_on_b = incidence[h[None, :], p[:, None]]
        b_on_a = incidence[h[:, None], p[None, :]]
        result = np.full((self.size, self.size), 4, dtype=np.int8)
        result[a_on_b | b_on_a] = 3
        result[a_on_b & b_on_a] = 2
        result[same] = 1
        np.fill_diagonal(result, 0)
        return result

    def distances_from(self, a):
        # type: (Any) -> np.ndarray
        """ Breadth first search in the collinearity graph; -1 marks
        unreachable flags. """
        a = self._flag_index(a)
        distances = np.full(self.size, -1, dtype=np.int64)
        distances[a] = 0
        frontier = np.array([a])
        level = 0
        while len(frontier):
            level += 1
            reached = np.unique(np.concatenate(
                [self.neighbors[f] for f in frontier]))
            frontier = reached[distances[reached] < 0]
            distances[frontier] = level
        return distances

    def bfs_distance(self, a, b):
        # type: (Any, Any) -> int
        return int(self.distances_from(a)[self._flag_index(b)])

    def ball(self, center, radius):
        # type: (Any, int) -> np.ndarray
        distances = self.distances_from(center)
        return (distances >= 0) & (distances <= radius)

    def diameter(self):
        # type: () -> int
        return max(int(self.distances_from(f).max())
                   for f in range(self.size))

    def collinear(self, a, b):
        # type: (Any, Any) -> bool
        return self.pair_class(a, b) == COLLINEAR

    def common_neighbors(self, a, b):
        # type: (Any, Any) -> np.ndarray
        return np.intersect1d(self.neighbors[self._flag_index(a)],
                              self.neighbors[self._flag_index(b)])

    def special_neighbor(self, a, b):
        # type: (Any, Any) -> int
        """ The flag (p, K) or (q, H) through which a special pair
        {(p, H), (q, K)} is joined. """
        a, b = self._flag_index(a), self._flag_index(b)
        if self.pair_class(a, b) != SPECIAL:
            raise GeometryMismatch('not a special pair')
        p, H = self.flag_point[a], self.flag_hyp[a]
        q, K = self.flag_point[b], self.flag_hyp[b]
        if self.space.incidence[K, p]:
            return int(self.flag_id[p, K])
        return int(self.flag_id[q, H])

    def incidence_girth(self):
        # type: () -> int
        """ Girth of the bipartite flag/line incidence graph. """
        flags = self.size
        adjacency = [list(self.flag_lines[f] + flags) for f in range(flags)]
        adjacency += [list(members) for members in self.line_members]
        best = None
        for root in range(len(adjacency)):
            depth = {root: 0}
            parent = {root: -1}
            queue = collections.deque([root])
            while queue:
                vertex = queue.popleft()
                for other in adjacency[vertex]:
                    other = int(other)
                    if other not in depth:
                        depth[other] = depth[vertex] + 1
                        parent[other] = vertex
                        queue.append(other)
                    elif parent[vertex] != other:
                        cycle = depth[vertex] + depth[other] + 1
                        best = cycle if best is None else min(best, cycle)
        return best if best is not None else 0

    # substructures

    def symp(self, a, b):
        # type: (Any, Any) -> np.ndarray
        """ The flags (x, X) with x on the line <p, q> and X through the
        intersection of H and K, for a polar pair (p, H), (q, K). """
        a, b = self._flag_index(a), self._flag_index(b)
        if self.pair_class(a, b) != POLAR:
            raise NotPolar('{0} and {1} are not polar'.format(
                self.format_flag(a), self.format_flag(b)))
        points = self.space.line_through(self.flag_point[a],
                                         self.flag_point[b]).point_set
        hyperplanes = self.space.line_through(self.flag_hyp[a],
                                              self.flag_hyp[b]).point_set
        return np.sort(self.flag_id[points[:, None],
                                    hyperplanes[None, :]].ravel())

    def grid_rulings(self, members):
        # type: (np.ndarray) -> Optional[Tuple[List[np.ndarray], List[np.ndarray]]]
        """ Split a flag set into its two rulings when it is a
        (q+1)x(q+1) grid: every member collinear with exactly 2q others
        inside, the rows sharing a point and the columns a hyperplane. """
        members = np.asarray(members)
        side = self.q + 1
        if len(members) != side * side:
            return None
        rows = [members[self.flag_point[members] == p]
                for p in np.unique(self.flag_point[members])]
        columns = [members[self.flag_hyp[members] == h]
                   for h in np.unique(self.flag_hyp[members])]
        if len(rows) != side or len(columns) != side or \
                any(len(r) != side for r in rows + columns):
            return None
        for f in members:
            inside = np.intersect1d(self.neighbors[f], members)
            if len(inside) != 2 * self.q:
                return None
        return rows, columns

    def singular_subspace(self, base):
        # type: (Point) -> SingularSubspace
        """ The flags through a point, or the flags on a hyperplane. """
        if isinstance(base, Hyperplane):
            return SingularSubspace('HYPERPLANE', base.index,
                                    self.hyp_flags[base.index])
        if isinstance(base, Point):
            return SingularSubspace('POINT', base.index,
                                    self.point_flags[base.index])
        raise GeometryMismatch('singular subspaces are based at a point or '
                               'a hyperplane')

    def singular_subspaces(self):
        """ Every maximal singular subspace, point based ones first. """
        for p in range(self.space.size):
            yield self.singular_subspace(self.space.point(p))
        for h in range(self.space.size):
            yield self.singular_subspace(self.space.hyperplane(h))


def _index(space, value):
    if isinstance(value, Point):
        return value.index
    if isinstance(value, (int, np.integer)):
        return int(value)
    return int(space.index_of(np.asarray(value)))


def build_flag_geometry(n, field, cap=None):
    """ Enumerate PG(n, q) and build its flag geometry. """
    return FlagGeometry(ProjectiveSpace(n, field), cap)
