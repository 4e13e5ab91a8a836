# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module implements subspaces and geometric hyperplanes of the flag
geometry: closure, hyperplane validation, maximality and the connectivity
of the complement.

Flag sets are numpy boolean bitmaps over the flag indices. """

import collections
import logging
import numpy as np

from typing import Any, Dict, List, Optional, Tuple  # noqa: ignore=F401

from libflaggeom import Error, run_parallel
from libflaggeom.flags import CLASSES, OPPOSITE, FlagGeometry  # noqa: ignore=F401

__all__ = ['GeometricHyperplane', 'Provenance', 'subspace_closure',
           'is_geometric_hyperplane', 'is_maximal_hyperplane',
           'complement_connected']

TENSOR = 'TENSOR'
QUASI_SINGULAR = 'QUASI_SINGULAR'
SPREAD = 'SPREAD'
RAW = 'RAW'

CLASS_CODES = dict((name, code) for code, name in enumerate(CLASSES))

Provenance = collections.namedtuple('Provenance', ['kind', 'detail'])


class NotAHyperplane(Error):
    pass


def as_bitmap(geometry, flags):
    # type: (FlagGeometry, Any) -> np.ndarray
    """ Accept a bitmap, a `GeometricHyperplane` or a list of flag indices. """
    if isinstance(flags, GeometricHyperplane):
        return flags.members.copy()
    flags = np.asarray(flags)
    if flags.dtype == bool and flags.shape == (geometry.size,):
        return flags.copy()
    bitmap = np.zeros(geometry.size, dtype=bool)
    bitmap[flags.astype(np.int64)] = True
    return bitmap


def rle_encode(bitmap):
    # type: (np.ndarray) -> List[List[int]]
    """ Runs of members as [start, length] pairs. """
    padded = np.concatenate([[False], bitmap, [False]]).astype(np.int8)
    edges = np.nonzero(np.diff(padded))[0]
    return [[int(start), int(stop - start)]
            for start, stop in zip(edges[::2], edges[1::2])]


def rle_decode(runs, size):
    # type: (List[List[int]], int) -> np.ndarray
    bitmap = np.zeros(size, dtype=bool)
    for start, length in runs:
        bitmap[start:start + length] = True
    return bitmap


class GeometricHyperplane(object):
    """ A membership bitmap over the flags with the construction it came
    from. Instances are validated at construction unless asked not to. """

    def __init__(self, geometry, members, provenance=None, validate=True):
        # type: (FlagGeometry, Any, Optional[Provenance], bool) -> None
        self.geometry = geometry
        self.members = as_bitmap(geometry, members)
        self.provenance = provenance or Provenance(RAW, None)
        if validate:
            valid, tally = is_geometric_hyperplane(geometry, self.members)
            if not valid:
                raise NotAHyperplane('flag set of size {0} is not a geometric'
                                     ' hyperplane (line intersections {1})'
                                     .format(self.size, dict(tally)),
                                     tally=dict(tally))

    @property
    def size(self):
        # type: () -> int
        return int(self.members.sum())

    def indices(self):
        # type: () -> np.ndarray
        return np.nonzero(self.members)[0]

    def __contains__(self, flag):
        return bool(self.members[int(flag)])

    def __eq__(self, other):
        return isinstance(other, GeometricHyperplane) and \
            self.geometry == other.geometry and \
            np.array_equal(self.members, other.members)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.members.tobytes())

    def __repr__(self):
        return 'GeometricHyperplane({0}, {1}/{2})'.format(
            self.provenance.kind, self.size, self.geometry.size)

    def as_dict(self, rle=False):
        result = {'provenance': {'kind': self.provenance.kind,
                                 'detail': self.provenance.detail},
                  'size': self.size}
        if rle:
            result['rle'] = True
            result['members'] = rle_encode(self.members)
        else:
            result['members'] = self.indices().tolist()
        return result

    @classmethod
    def from_dict(cls, geometry, data, validate=True):
        # type: (FlagGeometry, Dict[str, Any], bool) -> GeometricHyperplane
        if data.get('rle'):
            members = rle_decode(data['members'], geometry.size)
        else:
            members = as_bitmap(geometry, data['members'])
        provenance = data.get('provenance') or {}
        return cls(geometry, members,
                   Provenance(provenance.get('kind', RAW),
                              provenance.get('detail')),
                   validate)


def line_tally(geometry, flags):
    # type: (FlagGeometry, Any) -> np.ndarray
    """ Number of members on every flag line. """
    members = as_bitmap(geometry, flags)
    return members[geometry.line_members].sum(axis=1)


def subspace_closure(geometry, flags):
    # type: (FlagGeometry, Any) -> np.ndarray
    """ The least superset containing every line that meets it twice. """

    members = as_bitmap(geometry, flags)
    full = geometry.q + 1
    counts = members[geometry.line_members].sum(axis=1)
    queue = collections.deque(np.nonzero((counts >= 2) & (counts < full))[0])
    while queue:
        line = queue.popleft()
        if counts[line] == full:
            continue
        for flag in geometry.line_members[line]:
            if members[flag]:
                continue
            members[flag] = True
            for other in geometry.flag_lines[flag]:
                counts[other] += 1
                if counts[other] == 2:
                    queue.append(other)
    return members


def is_geometric_hyperplane(geometry, flags):
    # type: (FlagGeometry, Any) -> Tuple[bool, collections.Counter]
    """ Proper, and every line meets it in one flag or lies inside.

    :return: the verdict and the tally of line intersection sizes """

    members = as_bitmap(geometry, flags)
    counts = line_tally(geometry, members)
    tally = collections.Counter(int(c) for c in counts)
    proper = not np.all(members)
    valid = proper and set(tally) <= {1, geometry.q + 1}
    return valid, tally


def _require_hyperplane(geometry, flags):
    members = as_bitmap(geometry, flags)
    valid, tally = is_geometric_hyperplane(geometry, members)
    if not valid:
        raise NotAHyperplane('not a geometric hyperplane (line intersections'
                             ' {0})'.format(dict(tally)), tally=dict(tally))
    return members


def _saturation_failures(work):
    """ External flags whose closure together with the hyperplane stalls. """
    geometry, members, flags = work
    failures = []
    for flag in flags:
        extended = members.copy()
        extended[flag] = True
        closure = subspace_closure(geometry, extended)
        if not np.all(closure):
            failures.append((int(flag), np.nonzero(closure)[0].tolist()))
            break
    return failures


def is_maximal_hyperplane(geometry, flags, jobs=1):
    # type: (FlagGeometry, Any, int) -> Tuple[bool, Optional[Dict[str, Any]]]
    """ Every external flag together with the hyperplane generates the
    whole geometry.

    :return: the verdict and, on failure, the first offending flag with its
    stalled closure (sorted flag indices) """

    members = _require_hyperplane(geometry, flags)
    external = np.nonzero(~members)[0]
    chunks = np.array_split(external, max(jobs, 1)) if jobs != 1 \
        else [external]
    results = run_parallel(_saturation_failures,
                           [(geometry, members, chunk) for chunk in chunks],
                           jobs)
    failures = sorted(failure for result in results for failure in result)
    if failures:
        flag, closure = failures[0]
        logging.info('closure with flag %d stalls at %d flags', flag,
                     len(closure))
        return False, {'flag': flag, 'closure': closure,
                       'closure_size': len(closure)}
    return True, None


def complement_connected(geometry, flags):
    # type: (FlagGeometry, Any) -> bool
    """ Is the collinearity graph on the flags outside connected? """

    members = _require_hyperplane(geometry, flags)
    outside = np.nonzero(~members)[0]
    if not len(outside):
        return True
    seen = members.copy()
    seen[outside[0]] = True
    frontier = [outside[0]]
    while len(frontier):
        reached = np.unique(np.concatenate(
            [geometry.neighbors[f] for f in frontier]))
        frontier = reached[~seen[reached]]
        seen[frontier] = True
    return bool(np.all(seen))


def complement_components(geometry, flags):
    # type: (FlagGeometry, Any) -> List[int]
    """ Sizes of the connected components of the collinearity graph on the
    flags outside, largest first. """

    members = _require_hyperplane(geometry, flags)
    seen = members.copy()
    sizes = []
    for start in np.nonzero(~members)[0]:
        if seen[start]:
            continue
        seen[start] = True
        frontier = np.array([start])
        size = 1
        while len(frontier):
            reached = np.unique(np.concatenate(
                [geometry.neighbors[f] for f in frontier]))
            frontier = reached[~seen[reached]]
            seen[frontier] = True
            size += len(frontier)
        sizes.append(size)
    return sorted(sizes, reverse=True)


def singular_containment(geometry, flags):
    # type: (FlagGeometry, np.ndarray) -> Tuple[np.ndarray, np.ndarray]
    """ Which maximal singular subspaces lie inside the flag set(s).

    :param flags: bitmap, or a stack of bitmaps (leading batch axes)
    :return: boolean arrays indexed by point and by hyperplane """

    members = np.asarray(flags, dtype=bool)
    points = geometry.space.size
    per_point = members.shape[-1] // points
    # flags are sorted by point, so every point owns a contiguous block
    by_point = members.reshape(members.shape[:-1] + (points, per_point))
    order = np.argsort(geometry.flag_hyp, kind='stable')
    by_hyp = members[..., order].reshape(members.shape[:-1] +
                                         (points, per_point))
    return np.all(by_point, axis=-1), np.all(by_hyp, axis=-1)


def contains_singular_subspace(geometry, flags):
    # type: (FlagGeometry, Any) -> bool
    points, hyperplanes = singular_containment(geometry,
                                               as_bitmap(geometry, flags))
    return bool(np.any(points) or np.any(hyperplanes))


def deepest_points(geometry, flags):
    # type: (FlagGeometry, Any) -> np.ndarray
    """ Members from which every member is at distance at most two. """
    members = as_bitmap(geometry, flags)
    inside = np.nonzero(members)[0]
    classes = geometry.class_matrix()[np.ix_(inside, inside)]
    opposite = CLASS_CODES[OPPOSITE]
    return inside[np.all(classes != opposite, axis=1)]
