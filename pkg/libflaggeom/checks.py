# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module is the registry of verification checks.

A check is a function of a `Context` returning a verdict and a witness. It
never raises on a falsified statement, exceptions are kept for misuse (a
check run on an instance it does not apply to, bad input files). Every
check is registered with a descriptive id and the statement it tests; a few
carry a second, short alias.

The suite is the fixed list of (check, instance) pairs below. """

import collections
import logging
import time
import numpy as np

from typing import Any, Callable, Dict, List, Optional, Tuple  # noqa: ignore=F401

from libflaggeom import Error, run_parallel
from libflaggeom.embedding import all_matrices, arises_from_embedding, \
    embedded_flags, gram_diagnostics, hyperplane_classes, \
    lines_embed_as_lines, orthogonality_matches_distance, \
    quasi_singular_hyperplane, span_with_identity, tensor_hyperplane, \
    tensor_members
from libflaggeom.flags import CLASSES, DISTANCE, PENCIL, AXIAL, \
    POLAR, SPECIAL, FlagGeometry
from libflaggeom.gf import Field, QuadraticExtension, field_of_order, \
    find_irreducible_quadratic  # noqa: ignore=F401
from libflaggeom.hyperplanes import GeometricHyperplane, \
    complement_components, contains_singular_subspace, \
    is_geometric_hyperplane, is_maximal_hyperplane, singular_containment
from libflaggeom.linalg import apply, as_array, check_smat, companion, \
    eigen_spectrum, eigenvector_mask, has_eigenvector, identity, inverse, \
    matmul, matrix_to_list, minimal_polynomial, rank, scale, shift, \
    transpose
from libflaggeom.projective import ProjectiveSpace, gaussian_binomial, theta
from libflaggeom.report import FAIL, INCONCLUSIVE, PASS, Check
from libflaggeom.search import analyze_spreads, broken_entries, \
    problem_hits, search_spreads
from libflaggeom.spreads import FROM_MATRIX, NOT_STANDARD, STANDARD, \
    Construction, DualLineSpread, LineSpread, NoDual, apply_collineation, \
    canonical_spread, check_property_S, dual_spread, is_line_spread, \
    is_standard, matrix_lines, piecemeal_collineation, piecemeal_spread, \
    spread_from_matrix, spread_hyperplane, spread_of_hyperplane, \
    standard_equivalence, standard_spread, standardize_collineation

__all__ = ['Context', 'REGISTRY', 'ALIASES', 'SUITE', 'resolve', 'run_check',
           'run_suite']

CheckSpec = collections.namedtuple('CheckSpec',
                                   ['id', 'statement', 'function'])

REGISTRY = collections.OrderedDict()  # type: Dict[str, CheckSpec]

ALIASES = {
    'theorem-1-14': 'tensor-spread-correspondence',
    'lemma-1-12': 'smat-sides-agree',
    'prop-1-3': 'eigenvector-containment',
    'prop-1-5': 'quasi-singular-balls',
    'prop-2-1': 'tensor-hyperplane-classes',
    'cor-2-2': 'orthogonality-distance',
    'gen-1': 'hyperplane-sections-span',
}

CHUNK = 2048
SAMPLES = 256

_GEOMETRIES = {}  # type: Dict[Tuple[int, Field], FlagGeometry]


class UnknownCheck(Error):
    pass


class NotApplicable(Error):
    pass


def check(name, statement):
    """ Register the decorated function as a check. """

    def decorator(function):
        REGISTRY[name] = CheckSpec(name, statement, function)
        return function

    return decorator


def resolve(name):
    # type: (str) -> CheckSpec
    key = ALIASES.get(name, name)
    if key not in REGISTRY:
        raise UnknownCheck('unknown check {0}, known ones: {1}'.format(
            name, ', '.join(list(REGISTRY) + sorted(ALIASES))))
    return REGISTRY[key]


class Context(object):
    """ The instance and the options a check runs with. """

    def __init__(self, n, field, jobs=1, seed=0, cap_flags=20000,
                 cap_search=2000000, matrix=None, hyperplane=None,
                 spread=None, blocks=None, first_k=None, timings=False):
        # type: (int, Field, int, int, int, int, Any, Any, Any, Any, Optional[int], bool) -> None
        self.n = n
        self.field = field
        self.jobs = jobs
        self.seed = seed
        self.cap_flags = cap_flags
        self.cap_search = cap_search
        self.matrix = None if matrix is None else as_array(matrix)
        self.hyperplane = hyperplane
        self.spread = spread
        self.blocks = blocks
        self.first_k = first_k
        self.timings = timings

    @property
    def instance(self):
        # type: () -> Dict[str, int]
        return {'n': self.n, 'q': self.field.q}

    def at(self, n, q):
        # type: (int, int) -> Context
        """ The same options on another instance, without the inputs. """
        return Context(n, field_of_order(q), self.jobs, self.seed,
                       self.cap_flags, self.cap_search, timings=self.timings)

    def rng(self):
        return np.random.default_rng(self.seed)

    def space(self):
        # type: () -> ProjectiveSpace
        return self.geometry().space if self.n >= 2 \
            else ProjectiveSpace(self.n, self.field)

    def geometry(self):
        # type: () -> FlagGeometry
        key = (self.n, self.field)
        if key not in _GEOMETRIES:
            _GEOMETRIES[key] = FlagGeometry(ProjectiveSpace(*key),
                                            self.cap_flags)
        return _GEOMETRIES[key]

    def extension(self):
        # type: () -> QuadraticExtension
        return QuadraticExtension(self.field)


def run_check(name, context):
    # type: (str, Context) -> Check
    entry = resolve(name)
    logging.debug('running %s on %s', entry.id, context.instance)
    start = time.time()
    verdict, witness = entry.function(context)
    elapsed = int((time.time() - start) * 1000) if context.timings else None
    return Check(entry.id, entry.statement, context.instance, verdict, witness,
                 elapsed)


def _verdict(holds, witness):
    return (PASS if holds else FAIL), witness


def _odd_dimension(context):
    if context.n % 2 == 0:
        raise NotApplicable('line spreads need an odd dimension, got n = {0}'
                            .format(context.n))


def _random_invertible(field, size, rng):
    while True:
        matrix = rng.integers(0, field.q, size=(size, size))
        if rank(field, matrix) == size:
            return matrix.astype(np.int64)


def _non_scalar(matrices):
    # type: (np.ndarray) -> np.ndarray
    order = matrices.shape[-1]
    diagonal = np.diagonal(matrices, axis1=-2, axis2=-1)
    off = matrices * (1 - identity(order))
    return np.any(off.reshape(len(matrices), -1), axis=-1) | \
        np.any(diagonal != diagonal[:, :1], axis=-1)


def _matrix_chunks(context, order):
    """ All matrices of the order in code ranges, or a seeded sample when
    their count exceeds the search cap.

    :return: the exhaustiveness flag and the work chunks """

    count = context.field.q ** (order * order)
    if count <= context.cap_search:
        return True, [(start, min(start + CHUNK, count))
                      for start in range(0, count, CHUNK)]
    sample = context.rng().integers(0, context.field.q,
                                    size=(SAMPLES, order, order))
    return False, [sample.astype(np.int64)]


def _materialize(field, order, chunk):
    if isinstance(chunk, tuple):
        return all_matrices(field, order, *chunk)
    return chunk


def _class_chunks(context, order):
    """ One matrix per hyperplane of tensor type (classes of M modulo the
    scalars and the identity), or a seeded sample of them. """

    field = context.field
    count = theta(order * order - 2, field.q)
    if count <= context.cap_search:
        classes = hyperplane_classes(field, order)
        exhaustive = True
    else:
        sample = context.rng().integers(0, field.q,
                                        size=(SAMPLES, order, order))
        classes = sample[_non_scalar(sample)].astype(np.int64)
        exhaustive = False
    chunks = [classes[start:start + CHUNK]
              for start in range(0, len(classes), CHUNK)]
    return exhaustive, count, chunks


def _first(results):
    failures = [failure for _, failure in results if failure is not None]
    return failures[0] if failures else None


def _merge(results):
    total = collections.Counter()
    for tally, _ in results:
        total.update(tally)
    return dict(total)


# flag geometry

@check('geometry-sanity',
       'flag counts, line sizes, collinearity diameter 3 and the closed form '
       'distance classification against breadth first search')
def geometry_sanity(context):
    geometry = context.geometry()
    n, q = geometry.n, geometry.q
    per_family = gaussian_binomial(n + 1, 2, q) * theta(n - 2, q)
    kinds = collections.Counter(line.kind for line in geometry.lines)
    sizes = sorted(set(len(members) for members in geometry.line_members))
    diameter = geometry.diameter()

    closed = np.array([DISTANCE[name] for name in CLASSES])[
        geometry.class_matrix()]
    mismatch = None
    for flag in range(geometry.size):
        wrong = np.nonzero(geometry.distances_from(flag) != closed[flag])[0]
        if len(wrong):
            mismatch = {'flags': [geometry.format_flag(flag),
                                  geometry.format_flag(wrong[0])],
                        'class': CLASSES[geometry.class_matrix()[
                            flag, wrong[0]]]}
            break
    witness = {'flags': geometry.size,
               'expected_flags': theta(n, q) * theta(n - 1, q),
               'lines': len(geometry.lines),
               'pencil_lines': kinds[PENCIL],
               'axial_lines': kinds[AXIAL],
               'expected_per_family': per_family,
               'line_sizes': sizes,
               'diameter': diameter,
               'mismatch': mismatch}
    holds = witness['flags'] == witness['expected_flags'] and \
        kinds[PENCIL] == per_family == kinds[AXIAL] and \
        sizes == [q + 1] and diameter == 3 and mismatch is None
    return _verdict(holds, witness)


@check('hexagon',
       'for n = 2 the flag geometry is a generalized hexagon: every flag on '
       'two lines and incidence graph girth 12')
def hexagon(context):
    if context.n != 2:
        raise NotApplicable('the hexagon check needs n = 2')
    geometry = context.geometry()
    q = geometry.q
    lines_per_flag = sorted(set(len(ids) for ids in geometry.flag_lines))
    girth = geometry.incidence_girth()
    witness = {'flags': geometry.size,
               'lines': len(geometry.lines),
               'lines_per_flag': lines_per_flag,
               'girth': girth}
    holds = geometry.size == (q * q + q + 1) * (q + 1) and \
        lines_per_flag == [2] and girth == 12
    return _verdict(holds, witness)


@check('symps',
       'every polar pair spans a (q+1)x(q+1) grid and every special pair '
       'has the predicted flag as its unique common neighbour')
def symps(context):
    geometry = context.geometry()
    classes = geometry.class_matrix()
    polar = CLASSES.index(POLAR)
    special = CLASSES.index(SPECIAL)
    grids = {}  # type: Dict[Tuple[int, ...], bool]
    polar_pairs = 0
    special_pairs = 0
    for a, b in zip(*np.nonzero(np.triu(classes == polar))):
        polar_pairs += 1
        members = geometry.symp(a, b)
        key = tuple(members.tolist())
        if key not in grids:
            grids[key] = geometry.grid_rulings(members) is not None
        if not grids[key] or a not in members or b not in members:
            return FAIL, {'pair': [geometry.format_flag(a),
                                   geometry.format_flag(b)],
                          'symp_size': len(members)}
    for a, b in zip(*np.nonzero(np.triu(classes == special))):
        special_pairs += 1
        common = geometry.common_neighbors(a, b)
        predicted = geometry.special_neighbor(a, b)
        if common.tolist() != [predicted]:
            return FAIL, {'pair': [geometry.format_flag(a),
                                   geometry.format_flag(b)],
                          'common': [geometry.format_flag(f)
                                     for f in common],
                          'predicted': geometry.format_flag(predicted)}
    return PASS, {'polar_pairs': polar_pairs,
                  'symps': len(grids),
                  'special_pairs': special_pairs}


# embedding and tensor hyperplanes

def _containment_chunk(work):
    """ Singular subspaces inside H_M against eigenvectors of M. """
    geometry, chunk = work
    space = geometry.space
    field = space.field
    order = space.n + 1
    matrices = _materialize(field, order, chunk)
    matrices = matrices[_non_scalar(matrices)]
    tally = collections.Counter()
    if not len(matrices):
        return tally, None
    by_point, by_hyp = singular_containment(
        geometry, tensor_members(geometry, matrices))
    right = eigenvector_mask(field, matrices, space.points)
    left = eigenvector_mask(field, transpose(matrices), space.hyperplanes)
    for index, matrix in enumerate(matrices):
        tally['matrices'] += 1
        if not np.array_equal(by_point[index], right[index]):
            point = int(np.argmax(by_point[index] != right[index]))
            return tally, {'matrix': matrix_to_list(matrix),
                           'point': space.format_point(point),
                           'reason': 'point based subspace'}
        if not np.array_equal(by_hyp[index], left[index]):
            hyperplane = int(np.argmax(by_hyp[index] != left[index]))
            return tally, {'matrix': matrix_to_list(matrix),
                           'hyperplane': space.format_point(hyperplane),
                           'reason': 'hyperplane based subspace'}
        conditions = (bool(np.any(by_point[index])),
                      bool(np.any(by_hyp[index])),
                      bool(eigen_spectrum(field, matrix)))
        if len(set(conditions)) != 1:
            return tally, {'matrix': matrix_to_list(matrix),
                           'conditions': list(conditions),
                           'reason': 'conditions disagree'}
        tally['with_eigenvalue' if conditions[0] else 'eigenvalue_free'] += 1
    return tally, None


@check('eigenvector-containment',
       'H_M contains the singular subspace based at a point (hyperplane) '
       'exactly when it is a right (left) eigenvector of M; containing one '
       'of either kind is the same as M having an eigenvalue')
def eigenvector_containment(context):
    geometry = context.geometry()
    exhaustive, chunks = _matrix_chunks(context, geometry.n + 1)
    results = run_parallel(_containment_chunk,
                           [(geometry, chunk) for chunk in chunks],
                           context.jobs)
    witness = dict(_merge(results), exhaustive=exhaustive)
    failure = _first(results)
    if failure:
        witness['counterexample'] = failure
    return _verdict(failure is None, witness)


@check('quasi-singular-balls',
       'H_{a,A} is the set of flags collinear with a flag based at a or at '
       'A; for a on A it is the ball of radius 2 around (a, A)')
def quasi_singular_balls(context):
    geometry = context.geometry()
    space = geometry.space
    sizes = collections.defaultdict(set)  # type: Dict[str, set]
    for a in range(space.size):
        for A in range(space.size):
            members = quasi_singular_hyperplane(
                geometry, space.point(a), space.hyperplane(A)).members
            base = np.concatenate([geometry.point_flags[a],
                                   geometry.hyp_flags[A]])
            near = np.zeros(geometry.size, dtype=bool)
            near[base] = True
            for flag in base:
                near[geometry.neighbors[flag]] = True
            incident = bool(space.incidence[A, a])
            if not np.array_equal(members, near) or (
                    incident and not np.array_equal(
                        members, geometry.ball(geometry.flag_id[a, A], 2))):
                return FAIL, {'point': space.format_point(a),
                              'hyperplane': space.format_point(A),
                              'incident': incident,
                              'size': int(members.sum())}
            sizes['incident' if incident else 'non_incident'].add(
                int(members.sum()))
    return PASS, {'flags': geometry.size,
                  'incident_sizes': sorted(sizes['incident']),
                  'non_incident_sizes': sorted(sizes['non_incident'])}


@check('tensor-hyperplane-classes',
       'H_M = H_N exactly when M, I and N, I span the same subspace')
def tensor_hyperplane_classes(context):
    geometry = context.geometry()
    field = context.field
    order = geometry.n + 1
    exhaustive, chunks = _matrix_chunks(context, order)
    by_span = {}  # type: Dict[Tuple[int, ...], bytes]
    by_bitmap = {}  # type: Dict[bytes, Tuple[int, ...]]
    count = 0
    for chunk in chunks:
        matrices = _materialize(field, order, chunk)
        matrices = matrices[_non_scalar(matrices)]
        members = tensor_members(geometry, matrices)
        for matrix, bitmap in zip(matrices, members):
            count += 1
            key = span_with_identity(field, matrix)
            code = np.packbits(bitmap).tobytes()
            if by_span.setdefault(key, code) != code or \
                    by_bitmap.setdefault(code, key) != key:
                return FAIL, {'matrix': matrix_to_list(matrix),
                              'reason': 'hyperplane and span classes '
                                        'differ'}
    witness = {'matrices': count,
               'classes': len(by_span),
               'exhaustive': exhaustive}
    if exhaustive:
        witness['expected_classes'] = theta(order * order - 2, field.q)
        return _verdict(len(by_span) == witness['expected_classes'], witness)
    return PASS, witness


def _hyperplanes_under_test(context):
    """ The given hyperplane (file or matrix) or the tensor type ones.

    :return: exhaustiveness flag and a list of bitmaps """

    geometry = context.geometry()
    if context.hyperplane is not None:
        hyperplane = GeometricHyperplane.from_dict(
            geometry, context.hyperplane, validate=False)
        return False, [hyperplane.members]
    if context.matrix is not None:
        return False, [tensor_members(geometry, context.matrix)]
    order = geometry.n + 1
    count = theta(order * order - 2, context.field.q)
    if count * geometry.size <= context.cap_search:
        classes = hyperplane_classes(context.field, order)
        return True, list(tensor_members(geometry, classes))
    sample = context.rng().integers(0, context.field.q,
                                    size=(SAMPLES // 4, order, order))
    sample = sample[_non_scalar(sample)].astype(np.int64)
    return False, list(tensor_members(geometry, sample))


@check('hyperplane',
       'the flag set is a geometric hyperplane: proper, and every line '
       'meets it in one flag or lies inside')
def hyperplane(context):
    geometry = context.geometry()
    exhaustive, bitmaps = _hyperplanes_under_test(context)
    for index, members in enumerate(bitmaps):
        valid, tally = is_geometric_hyperplane(geometry, members)
        if not valid:
            return FAIL, {'index': index, 'size': int(members.sum()),
                          'line_tally': dict(tally)}
    return PASS, {'hyperplanes': len(bitmaps), 'exhaustive': exhaustive}


_SURVEY_KEYS = ('hyperplanes', 'maximal', 'not_maximal', 'connected',
                'disconnected', 'mismatch')


def _maximality_chunk(work):
    geometry, start, bitmaps = work
    tally = collections.Counter(dict.fromkeys(_SURVEY_KEYS, 0))
    found = []
    for offset, members in enumerate(bitmaps):
        maximal, witness = is_maximal_hyperplane(geometry, members)
        components = complement_components(geometry, members)
        connected = len(components) <= 1
        tally['hyperplanes'] += 1
        tally['maximal' if maximal else 'not_maximal'] += 1
        tally['connected' if connected else 'disconnected'] += 1
        if maximal != connected:
            tally['mismatch'] += 1
        if not (maximal and connected):
            found.append({'index': start + offset,
                          'size': int(members.sum()),
                          'components': components,
                          'closure_size': witness['closure_size']
                          if witness else None})
    return tally, found


def _require_hyperplanes(geometry, bitmaps):
    for members in bitmaps:
        if not is_geometric_hyperplane(geometry, members)[0]:
            raise NotApplicable('the flag set is not a geometric hyperplane')


def _maximality_survey(context):
    """ Maximality and complement components of every hyperplane under
    test.

    :return: the tally (with the exhaustiveness flag) and the hyperplanes
    that are not maximal or have a disconnected complement """

    geometry = context.geometry()
    exhaustive, bitmaps = _hyperplanes_under_test(context)
    _require_hyperplanes(geometry, bitmaps)
    parts = max(context.jobs, 1) * 4
    chunks = [chunk for chunk in np.array_split(np.arange(len(bitmaps)),
                                                parts) if len(chunk)]
    results = run_parallel(_maximality_chunk,
                           [(geometry, int(chunk[0]),
                             [bitmaps[i] for i in chunk])
                            for chunk in chunks], context.jobs)
    tally = collections.Counter()
    found = []
    for part, hits in results:
        tally.update(part)
        found.extend(hits)
    witness = dict(tally, exhaustive=exhaustive)
    splits = collections.Counter(
        '+'.join(str(size) for size in hit['components'])
        for hit in found if len(hit['components']) > 1)
    if splits:
        witness['component_sizes'] = dict(splits)
    return witness, found


@check('maximality',
       'every hyperplane is a maximal subspace: with any external flag it '
       'generates every flag')
def maximality(context):
    witness, found = _maximality_survey(context)
    stalled = [hit for hit in found if hit['closure_size'] is not None]
    if stalled:
        witness['counterexample'] = stalled[0]
    return _verdict(not stalled, witness)


@check('connectivity',
       'the collinearity graph induced on the complement of a hyperplane is '
       'connected')
def connectivity(context):
    witness, found = _maximality_survey(context)
    split = [hit for hit in found if len(hit['components']) > 1]
    if split:
        witness['counterexample'] = split[0]
    return _verdict(not split, witness)


@check('maximal-iff-connected',
       'a hyperplane is a maximal subspace exactly when the collinearity '
       'graph on its complement is connected')
def maximal_iff_connected(context):
    witness, found = _maximality_survey(context)
    mismatched = [hit for hit in found
                  if (hit['closure_size'] is None) !=
                  (len(hit['components']) <= 1)]
    if mismatched:
        witness['counterexample'] = mismatched[0]
    return _verdict(not mismatched, witness)


@check('hyperplane-sections-span',
       'every hyperplane W of the null-traced matrices is spanned by the '
       'embedded flags it contains')
def hyperplane_sections_span(context):
    geometry = context.geometry()
    field = context.field
    order = geometry.n + 1
    images = embedded_flags(geometry)
    exhaustive, count, chunks = _class_chunks(context, order)
    checked = 0
    for chunk in chunks:
        for matrix, members in zip(chunk, tensor_members(geometry, chunk)):
            checked += 1
            if rank(field, images[members]) != order * order - 2:
                return FAIL, {'matrix': matrix_to_list(matrix),
                              'rank': rank(field, images[members]),
                              'expected_rank': order * order - 2}
    return PASS, {'hyperplanes': checked, 'exhaustive': exhaustive,
                  'classes': count}


def _smat_chunk(work):
    field, order, chunk = work
    matrices = _materialize(field, order, chunk)
    right = check_smat(field, matrices, 'right')
    left = check_smat(field, matrices, 'left')
    tally = collections.Counter(matrices=len(matrices),
                                holding=int(np.sum(right)))
    wrong = np.nonzero(right != left)[0]
    if len(wrong):
        return tally, {'matrix': matrix_to_list(matrices[wrong[0]]),
                       'right': bool(right[wrong[0]]),
                       'left': bool(left[wrong[0]])}
    return tally, None


@check('smat-sides-agree',
       'M^2 x lies in <x, Mx> for every vector x exactly when xi M^2 lies in '
       '<xi, xi M> for every covector xi')
def smat_sides_agree(context):
    order = context.n + 1
    exhaustive, chunks = _matrix_chunks(context, order)
    results = run_parallel(_smat_chunk,
                           [(context.field, order, chunk)
                            for chunk in chunks], context.jobs)
    witness = dict(_merge(results), exhaustive=exhaustive)
    failure = _first(results)
    if failure:
        witness['counterexample'] = failure
    return _verdict(failure is None, witness)


@check('gram',
       'the trace form is non-degenerate with block diagonal Gram matrix; '
       'isotropy laws of f(X, X)')
def gram(context):
    report = gram_diagnostics(context.field, context.n, context.rng())
    holds = report['gram_rank'] == report['expected_rank'] and all(
        value for key, value in report.items()
        if isinstance(value, bool) and key != 'exhaustive')
    return _verdict(holds, report)


@check('orthogonality-distance',
       'embedded flags are orthogonal for the trace form exactly when they '
       'are at distance at most 2; flag lines embed as lines')
def orthogonality_distance(context):
    geometry = context.geometry()
    matches, pair = orthogonality_matches_distance(geometry)
    lines = lines_embed_as_lines(geometry)
    witness = {'pairs': geometry.size * geometry.size,
               'lines_embed_as_lines': lines}
    if pair is not None:
        witness['pair'] = [geometry.format_flag(f) for f in pair]
    return _verdict(matches and lines, witness)


# spreads

def _canonical(context):
    space = context.space()
    spread, matrix = canonical_spread(space, context.extension())
    return space, spread, matrix


def _mixed_standard(context):
    """ A standard spread with tuples (1, w, 1, ...), (w, 1, w, ...). """
    space = context.space()
    extension = context.extension()
    m = (space.n + 1) // 2
    w = extension.omega
    a = [1 if j % 2 == 0 else w for j in range(m)]
    b = [w if j % 2 == 0 else 1 for j in range(m)]
    return standard_spread(space, extension, a, b)


@check('canonical-spread',
       'the canonical spread has (q^(n+1)-1)/(q^2-1) lines, partitions the '
       'points, is the standard spread of (1,..,1), (w,..,w) and its '
       'companion matrix has no eigenvalue')
def canonical_spread_check(context):
    _odd_dimension(context)
    space, spread, matrix = _canonical(context)
    q = context.field.q
    extension = context.extension()
    m = (space.n + 1) // 2
    standard = standard_spread(space, extension, [1] * m,
                               [extension.omega] * m)
    polynomial = minimal_polynomial(context.field, matrix)
    annihilating = [divisor.coefficients for divisor
                    in polynomial.monic_divisors()
                    if divisor.annihilates(matrix)]
    valid, violation = is_line_spread(space, spread.lines)
    first = spread.line_through(0)
    witness = {'lines': len(spread),
               'expected_lines': (q ** (space.n + 1) - 1) // (q * q - 1),
               'partition': valid,
               'violation': violation,
               'equals_standard': spread == standard,
               'eigenvalues': [e.value for e in
                               eigen_spectrum(context.field, matrix)],
               'line_through_e0': [space.format_point(p) for p in first],
               'minimal_polynomial': polynomial.coefficients,
               'annihilating_divisors': annihilating,
               'matrix': matrix_to_list(matrix)}
    holds = valid and witness['lines'] == witness['expected_lines'] and \
        witness['equals_standard'] and not witness['eigenvalues'] and \
        polynomial.degree == 2 and not annihilating
    return _verdict(holds, witness)


@check('spread-dual',
       'every standard spread admits a dual; for n = 3 the dual is the '
       'spread itself')
def spread_dual(context):
    _odd_dimension(context)
    _, canonical, _ = _canonical(context)
    witness = {}
    for name, spread in (('canonical', canonical),
                         ('mixed_standard', _mixed_standard(context))):
        try:
            dual = dual_spread(spread)
        except Error as error:
            return FAIL, {'spread': name, 'error': str(error)}
        entry = {'members': len(dual)}
        if context.n == 3:
            entry['self_dual'] = bool(np.array_equal(dual.members,
                                                     spread.lines))
            if not entry['self_dual']:
                return FAIL, dict(entry, spread=name)
        witness[name] = entry
    return PASS, witness


def _covered_sub_hyperplanes(space, spread):
    """ The sub-hyperplanes which are unions of spread lines. """
    covered = []
    for subspace in space.enumerate(space.n - 2):
        points = subspace.point_set
        lines = spread.lines[np.unique(spread.line_of_point[points])]
        if np.all(np.isin(lines, points)):
            covered.append(points)
    return covered


@check('dual-uniqueness',
       'a dual spread assembled from the sub-hyperplanes covered by spread '
       'lines is compatible with the spread and equals the computed dual')
def dual_uniqueness(context):
    _odd_dimension(context)
    space, canonical, _ = _canonical(context)
    witness = {}
    for name, spread in (('canonical', canonical),
                         ('mixed_standard', _mixed_standard(context))):
        try:
            external = DualLineSpread(space,
                                      _covered_sub_hyperplanes(space, spread))
        except Error as error:
            return FAIL, {'spread': name, 'error': str(error)}
        entry = {'members': len(external),
                 'property_s': list(check_property_S(spread, external)),
                 'equals_dual': external == dual_spread(spread)}
        witness[name] = entry
        if entry['property_s'] != [True, True] or not entry['equals_dual']:
            return FAIL, dict(entry, spread=name)
    return PASS, witness


def _image_family(space, members, matrix):
    images = apply(space.field, matrix, space.points[members])
    return np.sort(space.index_of(images), axis=-1)


@check('property-s-equivalence',
       'for a spread and a dual spread the two compatibility properties '
       'hold together or fail together; the dual of a spread has both')
def property_s_equivalence(context):
    _odd_dimension(context)
    space, spread, _ = _canonical(context)
    dual = dual_spread(spread)
    rng = context.rng()
    pairs = [('canonical', spread, dual)]
    mixed = _mixed_standard(context)
    pairs.append(('mixed_standard', mixed, dual_spread(mixed)))
    moved_duals = 0
    while moved_duals < 8:
        g = _random_invertible(space.field, space.n + 1, rng)
        moved = DualLineSpread(space, _image_family(space, dual.members, g))
        if np.array_equal(moved.members, dual.members):
            continue
        pairs.append(('moved_dual_{0}'.format(moved_duals), spread, moved))
        moved_duals += 1
    outcomes = {}
    for name, lines, family in pairs:
        s_holds, s_star_holds = check_property_S(lines, family)
        outcomes[name] = [s_holds, s_star_holds]
        if s_holds != s_star_holds:
            return FAIL, {'pair': name, 's': s_holds, 's_star': s_star_holds}
    for name, outcome in sorted(outcomes.items()):
        # the dual is unique, any other family fails both properties
        expected = [False, False] if name.startswith('moved_dual') \
            else [True, True]
        if outcome != expected:
            return FAIL, {'pair': name, 'outcome': outcome,
                          'expected': expected}
    return PASS, {'pairs': outcomes}


@check('spread-hyperplane',
       'the flags (p, H) with the spread line of p on H form a geometric '
       'hyperplane of size theta_n theta_(n-2), free of singular subspaces, '
       'arising from the embedding and equal to H_M of the companion matrix')
def spread_hyperplane_check(context):
    _odd_dimension(context)
    geometry = context.geometry()
    space, spread, matrix = _canonical(context)
    q = context.field.q
    hyperplane = spread_hyperplane(geometry, spread)
    arises, _ = arises_from_embedding(geometry, hyperplane.members)
    recovered = spread_of_hyperplane(geometry, hyperplane.members)
    witness = {'size': hyperplane.size,
               'expected_size': theta(space.n, q) * theta(space.n - 2, q),
               'geometric': is_geometric_hyperplane(geometry,
                                                    hyperplane.members)[0],
               'singular_subspace': contains_singular_subspace(
                   geometry, hyperplane.members),
               'arises_from_embedding': arises,
               'equals_tensor': hyperplane == tensor_hyperplane(geometry,
                                                                matrix),
               'recovers_spread': recovered == spread}
    holds = witness['size'] == witness['expected_size'] and \
        witness['geometric'] and not witness['singular_subspace'] and \
        arises and witness['equals_tensor'] and witness['recovers_spread']
    return _verdict(holds, witness)


def _correspondence_chunk(work):
    """ H_M is of spread type exactly for eigenvalue free M passing the
    S_mat test, and then it is the hyperplane of the spread of M. """

    geometry, matrices = work
    space = geometry.space
    field = space.field
    tally = collections.Counter()
    members = tensor_members(geometry, matrices)
    by_point, by_hyp = singular_containment(geometry, members)
    singular = np.any(by_point, axis=-1) | np.any(by_hyp, axis=-1)
    eigen = np.atleast_1d(has_eigenvector(field, matrices, space.points))
    smat = np.atleast_1d(check_smat(field, matrices, 'right', space.points))
    for index, matrix in enumerate(matrices):
        tally['matrices'] += 1
        if eigen[index]:
            tally['with_eigenvalue'] += 1
            if not singular[index]:
                return tally, {'matrix': matrix_to_list(matrix),
                               'reason': 'eigenvalue but no singular '
                                         'subspace inside'}
        elif smat[index]:
            tally['spread_type'] += 1
            spread = LineSpread(space, matrix_lines(space, matrix),
                                Construction(FROM_MATRIX,
                                             matrix_to_list(matrix)))
            try:
                hyperplane = spread_hyperplane(geometry, spread)
            except NoDual:
                return tally, {'matrix': matrix_to_list(matrix),
                               'reason': 'spread of the matrix has no dual'}
            if not np.array_equal(hyperplane.members, members[index]):
                return tally, {'matrix': matrix_to_list(matrix),
                               'reason': 'H_M differs from the spread '
                                         'hyperplane'}
        else:
            tally['smat_fails'] += 1
            if is_line_spread(space, matrix_lines(space, matrix))[0]:
                return tally, {'matrix': matrix_to_list(matrix),
                               'reason': 'the lines <x, Mx> partition the '
                                         'points though S_mat fails'}
            if not singular[index] and \
                    spread_of_hyperplane(geometry, members[index]) is not None:
                return tally, {'matrix': matrix_to_list(matrix),
                               'reason': 'H_M is of spread type but S_mat '
                                         'fails'}
    return tally, None


@check('tensor-spread-correspondence',
       'H_M is of spread type exactly when M has no eigenvalue and '
       'satisfies S_mat, and then H_M is the hyperplane of the spread '
       '{<x, Mx>}')
def tensor_spread_correspondence(context):
    _odd_dimension(context)
    geometry = context.geometry()
    space = geometry.space
    if context.matrix is not None:
        matrices = [context.matrix[None]]
        exhaustive = False
        if not _non_scalar(matrices[0])[0]:
            raise NotApplicable('scalar matrices define no hyperplane')
    else:
        exhaustive, _, matrices = _class_chunks(context, space.n + 1)
        if not exhaustive:
            _, _, companion_matrix = _canonical(context)
            rng = context.rng()
            conjugates = []
            for _ in range(16):
                g = _random_invertible(space.field, space.n + 1, rng)
                conjugates.append(matmul(space.field,
                                         matmul(space.field, g,
                                                companion_matrix),
                                         inverse(space.field, g)))
            matrices.append(np.array(conjugates))
    results = run_parallel(_correspondence_chunk,
                           [(geometry, chunk) for chunk in matrices],
                           context.jobs)
    witness = dict(_merge(results), exhaustive=exhaustive)
    if context.matrix is not None:
        witness['size'] = int(tensor_members(geometry,
                                             context.matrix).sum())
    failure = _first(results)
    if failure:
        witness['counterexample'] = failure
    return _verdict(failure is None, witness)


@check('scalar-shift-invariance',
       'the spread {<x, Mx>} does not change under M -> sM + tI, s != 0')
def scalar_shift_invariance(context):
    _odd_dimension(context)
    space, _, companion_matrix = _canonical(context)
    field = space.field
    rng = context.rng()
    bases = [companion_matrix]
    for _ in range(3):
        g = _random_invertible(field, space.n + 1, rng)
        bases.append(matmul(field, matmul(field, g, companion_matrix),
                            inverse(field, g)))
    compared = 0
    for matrix in bases:
        spread = spread_from_matrix(space, matrix)
        for s in range(1, field.q):
            for t in range(field.q):
                shifted = shift(field, scale(field, matrix, s), t)
                compared += 1
                if spread_from_matrix(space, shifted) != spread:
                    return FAIL, {'matrix': matrix_to_list(matrix),
                                  's': s, 't': t}
    return PASS, {'matrices': len(bases), 'shifts': compared}


def _default_blocks(context, count):
    if context.blocks is not None:
        return [as_array(block) for block in context.blocks]
    a, b = find_irreducible_quadratic(context.field)
    return [companion(context.field, a, b)] * count


@check('piecemeal-partition',
       'the piecemeal construction from eigenvalue free 2x2 blocks is a '
       'line spread')
def piecemeal_partition(context):
    _odd_dimension(context)
    space = context.space()
    q = context.field.q
    blocks = _default_blocks(context, (space.n - 1) // 2)
    spread = piecemeal_spread(space, blocks)
    expected = (q ** (space.n + 1) - 1) // (q * q - 1)
    valid, violation = is_line_spread(space, spread.lines)
    return _verdict(valid and len(spread) == expected,
                    {'lines': len(spread), 'expected_lines': expected,
                     'violation': violation,
                     'blocks': [matrix_to_list(b) for b in blocks]})


def _eigenvalue_free_blocks(field):
    blocks = all_matrices(field, 2)
    return [block for block in blocks if not eigen_spectrum(field, block)]


@check('piecemeal-standard',
       'for n = 3 every piecemeal spread is standard, stabilized linewise by '
       'diag(A, C) with C the companion of the characteristic polynomial '
       'of A')
def piecemeal_standard(context):
    if context.n != 3:
        raise NotApplicable('the piecemeal collineation is built for n = 3')
    space = context.space()
    field = space.field
    blocks = _eigenvalue_free_blocks(field)
    verdicts = collections.Counter()
    for block in blocks:
        spread = piecemeal_spread(space, [block])
        verdict = is_standard(spread)
        verdicts[verdict.verdict] += 1
        g = piecemeal_collineation(space, [block])
        fixed = bool(has_eigenvector(field, g, space.points))
        images = np.sort(space.index_of(
            apply(field, g, space.points[spread.lines])), axis=-1)
        linewise = bool(np.array_equal(images, spread.lines))
        if verdict.verdict != STANDARD or fixed or not linewise:
            return FAIL, {'block': matrix_to_list(block),
                          'verdict': verdict.verdict,
                          'collineation_fixes_points': fixed,
                          'stabilizes_lines': linewise}
    return PASS, {'blocks': len(blocks), 'verdicts': dict(verdicts)}


@check('piecemeal-standardness-criterion',
       'for n = 5 the piecemeal spread of blocks [[0, l1], [1, 0]], '
       '[[0, l2], [1, 0]] with non-square l1, l2 is standard exactly when '
       'l1 = l2')
def piecemeal_standardness_criterion(context):
    if context.n != 5:
        raise NotApplicable('the criterion is stated for n = 5')
    field = context.field
    if field.p == 2:
        raise NotApplicable('every element of GF({0}) is a square'
                            .format(field.q))
    space = context.space()
    squares = set(int(v) for v in field.mul(field.elements, field.elements))
    non_squares = [v for v in range(1, field.q) if v not in squares]
    outcomes = []
    holds = True
    for first in non_squares:
        for second in non_squares:
            blocks = [as_array([[0, first], [1, 0]]),
                      as_array([[0, second], [1, 0]])]
            verdict = is_standard(piecemeal_spread(space, blocks))
            expected = STANDARD if first == second else NOT_STANDARD
            outcomes.append({'lambda': [first, second],
                             'verdict': verdict.verdict,
                             'expected': expected})
            if verdict.verdict == INCONCLUSIVE:
                return INCONCLUSIVE, {'outcomes': outcomes}
            holds = holds and verdict.verdict == expected
    return _verdict(holds, {'outcomes': outcomes})


@check('standard-spreads',
       'standard spreads over one quadratic extension are standard, admit a '
       'dual and are mapped onto the canonical spread and onto each other '
       'by explicit block collineations')
def standard_spreads(context):
    _odd_dimension(context)
    space = context.space()
    field = space.field
    extension = context.extension()
    m = (space.n + 1) // 2
    rng = context.rng()
    canonical, _ = canonical_spread(space, extension)
    spreads = []
    while len(spreads) < 4:
        a = [int(v) for v in rng.integers(1, extension.q, size=m)]
        b = [int(v) for v in rng.integers(1, extension.q, size=m)]
        pairs = [(extension.coordinates(x), extension.coordinates(y))
                 for x, y in zip(a, b)]
        if any(rank(field, pair) < 2 for pair in pairs):
            continue
        spreads.append(standard_spread(space, extension, a, b))
    for index, spread in enumerate(spreads):
        g = standardize_collineation(spread)
        if apply_collineation(spread, g) != canonical:
            return FAIL, {'spread': index, 'detail':
                          spread.construction.detail,
                          'reason': 'standardizing map misses the '
                                    'canonical spread'}
        if is_standard(spread).verdict != STANDARD:
            return FAIL, {'spread': index, 'reason': 'not recognized'}
        try:
            dual_spread(spread)
        except Error as error:
            return FAIL, {'spread': index, 'reason': str(error)}
    for index, (first, second) in enumerate(zip(spreads, spreads[1:])):
        if apply_collineation(first,
                              standard_equivalence(first, second)) != second:
            return FAIL, {'pair': [index, index + 1],
                          'reason': 'equivalence map misses'}
    return PASS, {'spreads': len(spreads),
                  'tuples': [spread.construction.detail['a'] +
                             spread.construction.detail['b']
                             for spread in spreads]}


@check('spread-search',
       'the spreads found by exact cover search are standard, admit a dual '
       'and their hyperplanes arise from the embedding; PG(3,2) has 56')
def spread_search(context):
    _odd_dimension(context)
    geometry = context.geometry()
    if context.first_k:
        result = search_spreads(geometry.space, 'first_k', context.first_k,
                                context.cap_search)
    else:
        result = search_spreads(geometry.space, cap=context.cap_search,
                                jobs=context.jobs)
    entries = analyze_spreads(geometry, result.spreads, jobs=context.jobs)
    verdicts = collections.Counter(entry['standard'] for entry in entries)
    problem = [entry['index'] for entry in problem_hits(entries)]
    broken = [entry['index'] for entry in broken_entries(entries)]
    witness = {'spreads': len(entries),
               'nodes': result.nodes,
               'verdicts': dict(verdicts),
               'with_dual': sum(1 for entry in entries if entry['dual']),
               'from_embedding': sum(1 for entry in entries
                                     if entry['from_embedding']),
               'problem_hits': problem,
               'broken': broken}
    if (context.n, context.field.q) == (3, 2) and not context.first_k:
        witness['expected_spreads'] = 56
        if len(entries) != 56:
            return FAIL, witness
    if broken:
        return FAIL, witness
    if verdicts[INCONCLUSIVE]:
        return INCONCLUSIVE, witness
    return PASS, witness


SUITE = [
    ('geometry-sanity', 3, 2),
    ('geometry-sanity', 2, 2),
    ('geometry-sanity', 2, 3),
    ('hexagon', 2, 2),
    ('symps', 3, 2),
    ('eigenvector-containment', 2, 2),
    ('quasi-singular-balls', 2, 2),
    ('quasi-singular-balls', 3, 2),
    ('tensor-hyperplane-classes', 2, 2),
    ('hyperplane', 2, 2),
    ('maximal-iff-connected', 2, 2),
    ('maximality', 3, 2),
    ('connectivity', 3, 2),
    ('hyperplane-sections-span', 2, 2),
    ('smat-sides-agree', 3, 2),
    ('canonical-spread', 3, 2),
    ('canonical-spread', 3, 3),
    ('spread-dual', 3, 2),
    ('spread-dual', 3, 3),
    ('dual-uniqueness', 3, 2),
    ('dual-uniqueness', 3, 3),
    ('dual-uniqueness', 5, 2),
    ('property-s-equivalence', 3, 2),
    ('property-s-equivalence', 3, 3),
    ('spread-hyperplane', 3, 2),
    ('spread-hyperplane', 3, 3),
    ('tensor-spread-correspondence', 3, 2),
    ('tensor-spread-correspondence', 3, 3),
    ('scalar-shift-invariance', 3, 3),
    ('piecemeal-partition', 3, 2),
    ('piecemeal-partition', 5, 2),
    ('piecemeal-partition', 5, 5),
    ('piecemeal-standard', 3, 2),
    ('piecemeal-standard', 3, 3),
    ('piecemeal-standardness-criterion', 5, 5),
    ('standard-spreads', 3, 3),
    ('spread-search', 3, 2),
    ('gram', 2, 3),
    ('gram', 3, 2),
    ('orthogonality-distance', 3, 2),
    ('orthogonality-distance', 2, 3),
]  # type: List[Tuple[str, int, int]]


def run_suite(context, battery=None):
    # type: (Context, Optional[List[Tuple[str, int, int]]]) -> List[Check]
    """ Run the battery, each entry on its own instance. """
    return [run_check(name, context.at(n, q))
            for name, n, q in (battery or SUITE)]
