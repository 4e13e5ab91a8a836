# -*- coding: utf-8 -*-
#
# This file is distributed under the University of Illinois Open Source
# License. See LICENSE.TXT for details.
""" This module implements exact arithmetic over the finite fields GF(p^k).

Field elements are plain integers in [0, q). The base-p digits of the
integer, least significant first, are the coefficients of the polynomial
residue modulo the defining polynomial. Every arithmetic method of `Field`
accepts integers or numpy integer arrays and works element-wise, so the same
code serves scalars, vectors and matrices.

Fields with at most `TABLE_LIMIT` elements carry full addition,
multiplication, negation and inverse tables. Larger prime fields use modular
arithmetic and larger extension fields compute on the fly. """

import itertools
import logging
import numpy as np

from typing import Any, Dict, List, Optional, Sequence, Tuple  # noqa: ignore=F401

from libflaggeom import Error

__all__ = ['Field', 'FieldElement', 'QuadraticExtension', 'make_field',
           'field_of_order', 'field_ops', 'find_irreducible_quadratic']

TABLE_LIMIT = 256


class FieldError(Error):
    pass


class NotPrime(FieldError):
    pass


class Reducible(FieldError):
    pass


class UnsupportedDegree(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


def is_prime(number):
    # type: (int) -> bool
    if number < 2:
        return False
    return all(number % divisor for divisor in
               range(2, int(number ** 0.5) + 1))


def _poly_trim(coefficients):
    # type: (List[int]) -> List[int]
    result = list(coefficients)
    while result and result[-1] == 0:
        result.pop()
    return result


def _poly_mul(left, right, p):
    # type: (Sequence[int], Sequence[int], int) -> List[int]
    result = [0] * max(len(left) + len(right) - 1, 0)
    for i, a in enumerate(left):
        if a:
            for j, b in enumerate(right):
                result[i + j] = (result[i + j] + a * b) % p
    return result


def _poly_rem(dividend, divisor, p):
    # type: (Sequence[int], Sequence[int], int) -> List[int]
    """ Remainder of the division by a polynomial with invertible leading
    coefficient. Coefficient lists are little-endian. """

    remainder = _poly_trim(dividend)
    divisor = _poly_trim(divisor)
    lead_inverse = pow(divisor[-1], p - 2, p)
    while len(remainder) >= len(divisor):
        factor = (remainder[-1] * lead_inverse) % p
        shift = len(remainder) - len(divisor)
        for i, c in enumerate(divisor):
            remainder[shift + i] = (remainder[shift + i] - factor * c) % p
        remainder = _poly_trim(remainder)
    return remainder


def _monic_polynomials(p, degree):
    """ Monic polynomials of the given degree in lexicographic order of
    their coefficients, read from the highest non-leading one down. """

    for high_first in itertools.product(range(p), repeat=degree):
        yield list(reversed(high_first)) + [1]


def is_irreducible(modulus, p):
    # type: (Sequence[int], int) -> bool
    """ Irreducibility over GF(p) by trial division with every monic
    polynomial of degree at most half of the modulus degree. """

    degree = len(modulus) - 1
    if degree == 1:
        return True
    for factor_degree in range(1, degree // 2 + 1):
        for factor in _monic_polynomials(p, factor_degree):
            if not _poly_rem(modulus, factor, p):
                return False
    return True


class Field(object):
    """ The finite field GF(p^k) defined by a monic irreducible modulus. """

    def __init__(self, p, k=1, modulus=None):
        # type: (int, int, Optional[Sequence[int]]) -> None
        if k < 1:
            raise UnsupportedDegree('extension degree must be at least 1, '
                                    'got {0}'.format(k), k=k)
        if not is_prime(p):
            raise NotPrime('{0} is not a prime'.format(p), p=p)

        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = None  # type: Optional[Tuple[int, ...]]
        if k > 1:
            if modulus is None:
                modulus = _least_irreducible(p, k)
                logging.debug('GF(%d) modulus discovered: %s', self.q,
                              modulus)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise Reducible('modulus {0} is not monic of degree {1}'
                                .format(list(modulus), k), modulus=modulus)
            if not is_irreducible(modulus, p):
                raise Reducible('modulus {0} is reducible over GF({1})'
                                .format(list(modulus), p), modulus=modulus)
            self.modulus = modulus
        self.tables = self.q <= TABLE_LIMIT
        if self.tables:
            self._build_tables()

    def __eq__(self, other):
        return isinstance(other, Field) and \
            (self.p, self.k, self.modulus) == \
            (other.p, other.k, other.modulus)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return 'GF({0})'.format(self.q)

    def as_dict(self):
        return {'p': self.p,
                'k': self.k,
                'modulus': list(self.modulus) if self.modulus else []}

    @classmethod
    def from_dict(cls, data):
        # type: (Dict[str, Any]) -> Field
        return cls(int(data['p']), int(data.get('k', 1)),
                   data.get('modulus') or None)

    @property
    def elements(self):
        # type: () -> np.ndarray
        return np.arange(self.q, dtype=np.int64)

    @property
    def omega(self):
        # type: () -> int
        """ The adjoined root of the modulus (the residue of `t`). """
        if self.k < 2:
            raise UnsupportedDegree('prime field has no adjoined root')
        return self.p

    def characteristic_polynomial(self):
        # type: () -> Tuple[int, ...]
        """ Coefficients (little-endian, over the prime field) of the
        polynomial satisfied by `omega`. """
        if self.modulus is None:
            raise UnsupportedDegree('prime field has no adjoined root')
        return self.modulus

    def element(self, rep):
        # type: (int) -> FieldElement
        return FieldElement(self, rep)

    def coerce(self, value):
        # type: (int) -> int
        """ Map an integer literal to an element code. Prime fields accept
        any integer (reduced modulo p), extension fields only codes. """
        value = int(value)
        if 0 <= value < self.q:
            return value
        if self.k == 1:
            return value % self.p
        raise FieldError('{0} is not an element code of {1!r}'
                         .format(value, self))

    # digit packing

    def digits(self, rep):
        # type: (int) -> List[int]
        result = []
        for _ in range(self.k):
            rep, digit = divmod(rep, self.p)
            result.append(digit)
        return result

    def pack(self, digits):
        # type: (Sequence[int]) -> int
        return sum(int(d) * self.p ** i for i, d in enumerate(digits))

    # scalar routines, used to build the tables and beyond them

    def _add_scalar(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return self.pack([(x + y) % self.p for x, y in
                          zip(self.digits(a), self.digits(b))])

    def _neg_scalar(self, a):
        if self.k == 1:
            return (-a) % self.p
        return self.pack([(-x) % self.p for x in self.digits(a)])

    def _mul_scalar(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        product = _poly_mul(self.digits(a), self.digits(b), self.p)
        return self.pack(_poly_rem(product, self.modulus, self.p))

    def _inv_scalar(self, a):
        result, base, exponent = 1, a, self.q - 2
        while exponent:
            if exponent & 1:
                result = self._mul_scalar(result, base)
            base = self._mul_scalar(base, base)
            exponent >>= 1
        return result

    def _primitive_element(self):
        # type: () -> int
        for candidate in range(1, self.q):
            power, order = candidate, 1
            while power != 1:
                power = self._mul_scalar(power, candidate)
                order += 1
            if order == self.q - 1:
                return candidate
        raise FieldError('no primitive element in {0!r}'.format(self))

    def _build_tables(self):
        q = self.q
        digits = np.array([self.digits(r) for r in range(q)], dtype=np.int64)
        weights = self.p ** np.arange(self.k, dtype=np.int64)
        self._add = ((digits[:, None, :] + digits[None, :, :]) % self.p) \
            .dot(weights)
        self._neg = ((-digits) % self.p).dot(weights)
        # multiplication through exponent and logarithm tables
        generator = self._primitive_element()
        exp = [1]
        for _ in range(q - 2):
            exp.append(self._mul_scalar(exp[-1], generator))
        exp = np.array(exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self._mul = np.zeros((q, q), dtype=np.int64)
        self._mul[1:, 1:] = exp[(log[1:, None] + log[None, 1:]) % (q - 1)]
        self._inv = np.zeros(q, dtype=np.int64)
        self._inv[1:] = exp[(-log[1:]) % (q - 1)]

    @staticmethod
    def _pointwise(function, *operands):
        return np.vectorize(function, otypes=[np.int64])(*operands)

    # element-wise arithmetic

    def add(self, a, b):
        if self.tables:
            return self._add[a, b]
        if self.k == 1:
            return np.remainder(np.add(a, b, dtype=np.int64), self.p)
        return self._pointwise(self._add_scalar, a, b)

    def neg(self, a):
        if self.tables:
            return self._neg[a]
        if self.k == 1:
            return np.remainder(np.negative(a, dtype=np.int64), self.p)
        return self._pointwise(self._neg_scalar, a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.tables:
            return self._mul[a, b]
        if self.k == 1:
            return np.remainder(np.multiply(a, b, dtype=np.int64), self.p)
        return self._pointwise(self._mul_scalar, a, b)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero('zero has no inverse in {0!r}'.format(self))
        if self.tables:
            return self._inv[a]
        if self.k == 1:
            return self._pointwise(lambda x: pow(int(x), self.p - 2, self.p),
                                   a)
        return self._pointwise(self._inv_scalar, a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, exponent):
        # type: (int, int) -> int
        result = 1
        for _ in range(exponent):
            result = int(self.mul(result, a))
        return result

    def sum(self, values, axis=0):
        """ Field sum along an axis of an integer array. """
        values = np.asarray(values, dtype=np.int64)
        if self.k == 1:
            return np.remainder(values.sum(axis=axis), self.p)
        values = np.moveaxis(values, axis, 0)
        result = np.zeros(values.shape[1:], dtype=np.int64)
        for layer in values:
            result = self.add(result, layer)
        return result

    def quadratic_extension(self, a=None, b=None):
        # type: (Optional[int], Optional[int]) -> QuadraticExtension
        return QuadraticExtension(self, a, b)


class FieldElement(object):
    """ A field element bound to its field, for the scalar public API. """

    __slots__ = ('field', 'rep')

    def __init__(self, field, rep):
        # type: (Field, int) -> None
        rep = int(rep)
        if not 0 <= rep < field.q:
            raise FieldError('{0} is out of range for {1!r}'
                             .format(rep, field))
        self.field = field
        self.rep = rep

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch('{0!r} and {1!r} differ'
                                    .format(self.field, other.field))
            return other.rep
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field,
                            self.field.add(self.rep, self._other(other)))

    def __sub__(self, other):
        return FieldElement(self.field,
                            self.field.sub(self.rep, self._other(other)))

    def __mul__(self, other):
        return FieldElement(self.field,
                            self.field.mul(self.rep, self._other(other)))

    def __truediv__(self, other):
        return FieldElement(self.field,
                            self.field.div(self.rep, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.rep))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.rep))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.rep == other.rep
        return self.rep == other

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.field, self.rep))

    def __int__(self):
        return self.rep

    def __repr__(self):
        return '{0!r}({1})'.format(self.field, self.rep)


def make_field(p, k=1, modulus=None):
    # type: (int, int, Optional[Sequence[int]]) -> Field
    """ Create GF(p^k); the modulus is discovered when not given. """

    return Field(p, k, modulus)


def field_of_order(q):
    # type: (int) -> Field
    """ GF(q) for a prime power q, with the auto-discovered modulus. """

    for p in range(2, q + 1):
        if q % p == 0:
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            if rest != 1:
                break
            return Field(p, k)
    raise NotPrime('{0} is not a prime power'.format(q), q=q)


def field_ops(a, b, kind):
    # type: (FieldElement, Optional[FieldElement], str) -> FieldElement
    """ Apply one of `add`, `sub`, `mul`, `div`, `neg` or `inv`. """

    if kind == 'add':
        return a + b
    if kind == 'sub':
        return a - b
    if kind == 'mul':
        return a * b
    if kind == 'div':
        return a / b
    if kind == 'neg':
        return -a
    if kind == 'inv':
        return a.inverse()
    raise FieldError('unknown field operation: {0}'.format(kind))


def _has_root(field, a, b):
    # type: (Field, int, int) -> bool
    values = field.elements
    return bool(np.any(
        field.add(field.add(field.mul(values, values), field.mul(a, values)),
                  b) == 0))


def _least_irreducible(p, k):
    # type: (int, int) -> Tuple[int, ...]
    for candidate in _monic_polynomials(p, k):
        if is_irreducible(candidate, p):
            return tuple(candidate)
    raise Reducible('no irreducible polynomial of degree {0}'.format(k))


def find_irreducible_quadratic(field):
    # type: (Field) -> Tuple[int, int]
    """ The lexicographically least (a, b) with t^2 + at + b rootless. """

    for a, b in itertools.product(range(field.q), repeat=2):
        if not _has_root(field, a, b):
            return a, b
    raise Reducible('{0!r} is quadratically closed'.format(field))


class QuadraticExtension(object):
    """ A degree two extension of an arbitrary finite field.

    An element `u + v*omega` (u, v in the base field) is encoded as the
    integer `u + v*q`, where `omega` is a root of `t^2 + a*t + b`. """

    def __init__(self, base, a=None, b=None):
        # type: (Field, Optional[int], Optional[int]) -> None
        if a is None or b is None:
            a, b = find_irreducible_quadratic(base)
        elif _has_root(base, a, b):
            raise Reducible('t^2 + {0}t + {1} has a root in {2!r}'
                            .format(a, b, base), a=a, b=b)
        self.base = base
        self.a = int(a)
        self.b = int(b)
        self.q = base.q ** 2

    def __eq__(self, other):
        return isinstance(other, QuadraticExtension) and \
            (self.base, self.a, self.b) == (other.base, other.a, other.b)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.base, self.a, self.b))

    def __repr__(self):
        return 'GF({0})[t]/(t^2+{1}t+{2})'.format(self.base.q, self.a, self.b)

    def as_dict(self):
        return {'base': self.base.as_dict(), 'a': self.a, 'b': self.b}

    @classmethod
    def from_dict(cls, data):
        # type: (Dict[str, Any]) -> QuadraticExtension
        return cls(Field.from_dict(data['base']), data['a'], data['b'])

    @property
    def omega(self):
        # type: () -> int
        return self.base.q

    def coordinates(self, w):
        # type: (int) -> Tuple[int, int]
        v, u = divmod(int(w), self.base.q)
        return u, v

    def from_coordinates(self, u, v):
        # type: (int, int) -> int
        return int(u) + int(v) * self.base.q

    def contains_base(self, w):
        # type: (int) -> bool
        return self.coordinates(w)[1] == 0

    def add(self, x, y):
        F = self.base
        (u1, v1), (u2, v2) = self.coordinates(x), self.coordinates(y)
        return self.from_coordinates(F.add(u1, u2), F.add(v1, v2))

    def mul(self, x, y):
        F = self.base
        (u1, v1), (u2, v2) = self.coordinates(x), self.coordinates(y)
        vv = F.mul(v1, v2)
        real = F.sub(F.mul(u1, u2), F.mul(self.b, vv))
        imag = F.sub(F.add(F.mul(u1, v2), F.mul(v1, u2)), F.mul(self.a, vv))
        return self.from_coordinates(real, imag)

    def norm(self, w):
        # type: (int) -> int
        F = self.base
        u, v = self.coordinates(w)
        return int(F.add(F.sub(F.mul(u, u), F.mul(self.a, F.mul(u, v))),
                         F.mul(self.b, F.mul(v, v))))

    def trace(self, w):
        # type: (int) -> int
        F = self.base
        u, v = self.coordinates(w)
        return int(F.sub(F.add(u, u), F.mul(self.a, v)))

    def inv(self, w):
        F = self.base
        if int(w) == 0:
            raise DivisionByZero('zero has no inverse in {0!r}'.format(self))
        u, v = self.coordinates(w)
        scale = F.inv(self.norm(w))
        return self.from_coordinates(F.mul(F.sub(u, F.mul(self.a, v)), scale),
                                     F.mul(F.neg(v), scale))

    def multiplication_matrix(self, w):
        # type: (int) -> np.ndarray
        """ Matrix of `z -> w*z` on the coordinates (u, v), column vectors. """
        F = self.base
        u, v = self.coordinates(w)
        return np.array([[u, F.neg(F.mul(self.b, v))],
                         [v, F.sub(u, F.mul(self.a, v))]], dtype=np.int64)

    def char_poly(self, w):
        # type: (int) -> Tuple[int, int]
        """ The (a, b) of the minimal polynomial t^2 + at + b of w over the
        base field. Only meaningful for w outside the base field. """
        return int(self.base.neg(self.trace(w))), self.norm(w)
