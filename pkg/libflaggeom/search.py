# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module enumerates line spreads by backtracking and analyzes the
spreads it finds.

The search is an exact cover over the points: every node takes the least
uncovered point and branches over the lines through it which are disjoint
from the lines chosen so far. Point sets are Python integers used as bit
masks. The exhaustive mode splits the tree by the lines through the first
point, those subtrees can run in separate processes. """

import collections
import json
import logging
import numpy as np

from typing import Any, Dict, Iterable, List, Optional, Tuple  # noqa: ignore=F401

from libflaggeom import Error, run_parallel
from libflaggeom.embedding import arises_from_embedding
from libflaggeom.flags import FlagGeometry  # noqa: ignore=F401
from libflaggeom.projective import ProjectiveSpace  # noqa: ignore=F401
from libflaggeom.spreads import INCONCLUSIVE, NOT_STANDARD, RAW, \
    Construction, LineSpread, NoDual, dual_spread, is_standard, \
    spread_hyperplane, EvenDimension, NotASubspace, PropertySFails

__all__ = ['search_spreads', 'analyze_spreads', 'problem_hits',
           'write_catalog', 'read_catalog']

EXHAUSTIVE = 'exhaustive'
FIRST_K = 'first_k'
MODES = (EXHAUSTIVE, FIRST_K)

SearchResult = collections.namedtuple('SearchResult',
                                      ['spreads', 'nodes', 'complete'])


class SearchCapExceeded(Error):
    pass


class _Exhausted(Exception):
    """ Internal signal: the node budget ran out. """
    pass


class _Found(Exception):
    """ Internal signal: enough spreads were collected. """
    pass


class LineTable(object):
    """ The lines of a projective space as point masks, grouped by their
    least point. """

    def __init__(self, space):
        # type: (ProjectiveSpace) -> None
        self.space = space
        self.lines = np.array([line.point_set for line in space.enumerate(1)],
                              dtype=np.int64)
        self.masks = [sum(1 << int(p) for p in line) for line in self.lines]
        self.full = (1 << space.size) - 1
        self.through = [[] for _ in range(space.size)]  # type: List[List[int]]
        for index, line in enumerate(self.lines):
            for point in line:
                self.through[int(point)].append(index)
        logging.debug('%r: %d lines to cover %d points', space,
                      len(self.lines), space.size)


class _Walker(object):
    """ Depth first exact cover with a node budget. """

    def __init__(self, table, cap, limit=None):
        # type: (LineTable, int, Optional[int]) -> None
        self.table = table
        self.cap = cap
        self.limit = limit
        self.nodes = 0
        self.found = []  # type: List[List[int]]

    def walk(self, covered, chosen):
        # type: (int, List[int]) -> None
        self.nodes += 1
        if self.nodes > self.cap:
            raise _Exhausted()
        free = self.table.full & ~covered
        if not free:
            self.found.append(sorted(chosen))
            if self.limit is not None and len(self.found) >= self.limit:
                raise _Found()
            return
        point = (free & -free).bit_length() - 1
        for line in self.table.through[point]:
            mask = self.table.masks[line]
            if mask & covered:
                continue
            chosen.append(line)
            self.walk(covered | mask, chosen)
            chosen.pop()


def _subtree(work):
    """ Explore the spreads containing one given line through point 0. """
    table, line, cap = work
    walker = _Walker(table, cap)
    try:
        walker.walk(table.masks[line], [line])
        return walker.found, walker.nodes, True
    except _Exhausted:
        return walker.found, walker.nodes, False


def search_spreads(space, mode=EXHAUSTIVE, first_k=None, cap=2000000,
                   jobs=1):
    # type: (ProjectiveSpace, str, Optional[int], int, int) -> SearchResult
    """ Enumerate line spreads of the space.

    :param mode: `exhaustive` visits the whole tree, `first_k` stops after
    `first_k` spreads
    :param cap: node budget (per first-branch subtree in exhaustive mode)
    :param jobs: worker processes for the exhaustive mode
    :return: spreads (each a sorted list of line indices into
    `space.enumerate(1)`), the number of visited nodes and completeness """

    if space.n % 2 == 0:
        raise EvenDimension('PG({0},{1}) has no line spread'
                            .format(space.n, space.field.q), n=space.n)
    if mode not in MODES:
        raise Error('unknown search mode {0}'.format(mode))
    table = LineTable(space)

    if mode == FIRST_K:
        if not first_k or first_k < 1:
            raise Error('first_k mode needs a positive count')
        walker = _Walker(table, cap, first_k)
        try:
            walker.walk(0, [])
        except _Found:
            pass
        except _Exhausted:
            raise SearchCapExceeded('search stopped after {0} nodes with {1} '
                                    'spreads'.format(cap, len(walker.found)),
                                    nodes=walker.nodes,
                                    found=len(walker.found))
        logging.info('%r: %d spreads in %d nodes', space, len(walker.found),
                     walker.nodes)
        return SearchResult(walker.found, walker.nodes,
                            len(walker.found) >= first_k)

    work = [(table, line, cap) for line in table.through[0]]
    results = run_parallel(_subtree, work, jobs)
    spreads = sorted(spread for found, _, _ in results for spread in found)
    nodes = 1 + sum(count for _, count, _ in results)
    if not all(complete for _, _, complete in results):
        raise SearchCapExceeded('some subtree exceeded {0} nodes'.format(cap),
                                nodes=nodes, found=len(spreads))
    logging.info('%r: %d spreads in %d nodes', space, len(spreads), nodes)
    return SearchResult(spreads, nodes, True)


def catalog_spread(space, line_indices):
    # type: (ProjectiveSpace, List[int]) -> LineSpread
    lines = space.enumerate(1)
    return LineSpread(space, [lines[i].point_set for i in line_indices],
                      Construction(RAW, None))


def _analyze(work):
    """ The analysis record of one catalog entry. """
    geometry, index, line_indices, cap = work
    spread = catalog_spread(geometry.space, line_indices)
    verdict = is_standard(spread, cap)
    entry = {'index': index,
             'lines': spread.lines.tolist(),
             'standard': verdict.verdict,
             'stabilizer_dim': verdict.witness.get('stabilizer_dim'),
             'dual': False,
             'from_embedding': None}
    try:
        dual = dual_spread(spread)
    except (NotASubspace, PropertySFails, NoDual):
        return entry
    entry['dual'] = True
    hyperplane = spread_hyperplane(geometry, spread, dual)
    entry['hyperplane_size'] = hyperplane.size
    entry['from_embedding'] = arises_from_embedding(geometry,
                                                    hyperplane.members)[0]
    return entry


def analyze_spreads(geometry, spreads, cap=1000000, jobs=1):
    # type: (FlagGeometry, List[List[int]], int, int) -> List[Dict[str, Any]]
    """ Standardness, dual and embedding verdicts of every found spread. """
    work = [(geometry, index, spread, cap)
            for index, spread in enumerate(spreads)]
    entries = run_parallel(_analyze, work, jobs)
    for entry in problem_hits(entries):
        logging.warning('spread %d is not standard and admits a dual',
                        entry['index'])
    return entries


def problem_hits(entries):
    # type: (Iterable[Dict[str, Any]]) -> List[Dict[str, Any]]
    """ Entries which are not standard but admit a dual. """
    return [entry for entry in entries
            if entry['standard'] == NOT_STANDARD and entry['dual']]


def inconclusive(entries):
    # type: (Iterable[Dict[str, Any]]) -> List[Dict[str, Any]]
    return [entry for entry in entries if entry['standard'] == INCONCLUSIVE]


def broken_entries(entries):
    # type: (Iterable[Dict[str, Any]]) -> List[Dict[str, Any]]
    """ Entries which are not standard, have no dual or whose hyperplane
    does not arise from the embedding. Undecided standardness alone does
    not count. """
    return [entry for entry in entries
            if entry['standard'] == NOT_STANDARD or
            not (entry['dual'] and entry['from_embedding'])]


def write_catalog(filename, space, entries):
    # type: (str, ProjectiveSpace, Iterable[Dict[str, Any]]) -> None
    """ Append the entries to a JSON-lines file. """
    with open(filename, 'a') as handle:
        for entry in entries:
            record = dict(entry, n=space.n, field=space.field.as_dict())
            handle.write(json.dumps(record, sort_keys=True) + '\n')


def read_catalog(filename):
    # type: (str) -> List[Dict[str, Any]]
    with open(filename, 'r') as handle:
        return [json.loads(line) for line in handle if line.strip()]
