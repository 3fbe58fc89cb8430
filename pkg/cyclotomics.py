from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Tuple, Union, List

import numpy as np
import sympy

from common import common

Scalar = Union[int, Fraction]

_INT64_SAFE = 2 ** 62


class _CyclotomicBasis:
    """Power basis of Q(zeta_n) and the reduction of x^k (0 <= k < n) modulo Phi_n."""

    def __init__(self, n: int):
        self.n = n
        self.phi = int(sympy.totient(n))
        x = sympy.Symbol('x')
        # low-degree-first coefficients of the monic Phi_n
        modulus = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs())]
        rows = np.zeros((n, self.phi), dtype=np.int64)
        current = [0] * self.phi
        current[0] = 1
        for k in range(n):
            rows[k] = current
            # multiply by x, then eliminate x^phi
            top = current[-1]
            current = [0] + current[:-1]
            if top:
                current = [c - top * m for c, m in zip(current, modulus[:-1])]
        self.reduction = rows
        self.max_reduction = int(np.abs(rows).max()) if rows.size else 1
        self.normalized_traces = tuple(self._normalized_trace(i) for i in range(self.phi))

    def _normalized_trace(self, i: int) -> Fraction:
        # Ramanujan sum c_n(i) divided by phi(n)
        d = self.n // gcd(i, self.n)
        factors = sympy.factorint(d)
        if any(e > 1 for e in factors.values()):
            return Fraction(0)
        mu = (-1) ** len(factors)
        return Fraction(mu, int(sympy.totient(d)))

    def reduce_exponent_counts(self, counts: Sequence[int]) -> List[int]:
        """Reduces a vector indexed by powers zeta^0..zeta^{n-1} to power-basis coordinates."""
        bound = max((abs(c) for c in counts), default=0) * self.max_reduction * self.n
        if bound < _INT64_SAFE:
            return [int(v) for v in np.asarray(counts, dtype=np.int64) @ self.reduction]
        result = [0] * self.phi
        for k, c in enumerate(counts):
            if c:
                row = self.reduction[k]
                for j in range(self.phi):
                    result[j] += c * int(row[j])
        return result


@lru_cache(maxsize=None)
def cyclotomic_basis(n: int) -> _CyclotomicBasis:
    if n < 1:
        raise ValueError('Conductor must be positive (got {}).'.format(n))
    return _CyclotomicBasis(n)


def _normalize(num: Sequence[int], den: int) -> Tuple[Tuple[int, ...], int]:
    if den < 0:
        num, den = [-c for c in num], -den
    g = den
    for c in num:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(int(c) for c in num), int(den)


def _convolve(a: Sequence[int], b: Sequence[int]) -> List[int]:
    bound = max(map(abs, a), default=0) * max(map(abs, b), default=0) * max(len(a), len(b))
    if bound < _INT64_SAFE:
        return [int(v) for v in np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))]
    result = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                result[i + j] += x * y
    return result


class Cyclotomic:
    """An element of Q(zeta_n) in the power basis zeta^0..zeta^{phi(n)-1}.

    Coefficients are kept as integer numerators over one positive common
    denominator in lowest terms. Values of different conductors compare equal
    when they agree after lifting to the lcm conductor.
    """
    __slots__ = ('conductor', '_num', '_den')

    def __init__(self, conductor: int, coeffs: Sequence[Scalar]):
        basis = cyclotomic_basis(conductor)
        if len(coeffs) != basis.phi:
            raise ValueError('Expected {} coefficients for conductor {} (got {}).'.format(
                basis.phi, conductor, len(coeffs)))
        fractions = [Fraction(c) for c in coeffs]
        den = 1
        for f in fractions:
            den = common.lcm(den, f.denominator)
        self.conductor = conductor
        self._num, self._den = _normalize([f.numerator * (den // f.denominator) for f in fractions], den)

    @classmethod
    def _raw(cls, conductor: int, num: Sequence[int], den: int) -> 'Cyclotomic':
        obj = cls.__new__(cls)
        obj.conductor = conductor
        obj._num, obj._den = _normalize(num, den)
        return obj

    @classmethod
    def from_rational(cls, value: Scalar, conductor: int = 1) -> 'Cyclotomic':
        value = Fraction(value)
        num = [0] * cyclotomic_basis(conductor).phi
        num[0] = value.numerator
        return cls._raw(conductor, num, value.denominator)

    @classmethod
    def zero(cls, conductor: int = 1) -> 'Cyclotomic':
        return cls.from_rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> 'Cyclotomic':
        return cls.from_rational(1, conductor)

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> 'Cyclotomic':
        counts = [0] * n
        counts[k % n] = 1
        return cls.from_exponent_counts(n, counts)

    @classmethod
    def from_exponent_counts(cls, n: int, counts: Sequence[Scalar], denominator: int = 1) -> 'Cyclotomic':
        """Builds sum_k counts[k] * zeta_n^k for integer counts (over an optional common denominator)."""
        if len(counts) != n:
            raise ValueError('Expected {} exponent counts (got {}).'.format(n, len(counts)))
        return cls._raw(n, cyclotomic_basis(n).reduce_exponent_counts([int(c) for c in counts]), denominator)

    @classmethod
    def from_json(cls, obj: dict) -> 'Cyclotomic':
        return cls(int(obj['conductor']), [common.rational_from_str(c) for c in obj['coeffs']])

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def _exponent_counts_at(self, n: int) -> List[int]:
        step = n // self.conductor
        counts = [0] * n
        for i, c in enumerate(self._num):
            counts[(i * step) % n] += c
        return counts

    def lift(self, conductor: int) -> 'Cyclotomic':
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError('Cannot lift conductor {} to {}.'.format(self.conductor, conductor))
        return Cyclotomic.from_exponent_counts(conductor, self._exponent_counts_at(conductor), self._den)

    def _common(self, other: 'Cyclotomic') -> Tuple['Cyclotomic', 'Cyclotomic']:
        n = common.lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    @staticmethod
    def _coerce(value) -> 'Cyclotomic':
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyclotomic.from_rational(value)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        den = common.lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        return Cyclotomic._raw(a.conductor, [x * fa + y * fb for x, y in zip(a._num, b._num)], den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.conductor, [-c for c in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Cyclotomic._raw(self.conductor, [c * other.numerator for c in self._num],
                                   self._den * other.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        n = a.conductor
        product = _convolve(a._num, b._num)
        counts = [0] * n
        for k, c in enumerate(product):
            counts[k % n] += c
        return Cyclotomic._raw(n, cyclotomic_basis(n).reduce_exponent_counts(counts), a._den * b._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
            if not other.is_rational():
                raise ValueError('Division is only supported by rational values.')
            other = other.to_rational()
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError('Cyclotomic division by zero.')
        return self * (1 / other)

    def galois(self, k: int) -> 'Cyclotomic':
        """Image under zeta -> zeta^k, k coprime to the conductor."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise ValueError('{} is not a unit modulo {}.'.format(k, n))
        counts = [0] * n
        for i, c in enumerate(self._num):
            counts[(i * k) % n] += c
        return Cyclotomic.from_exponent_counts(n, counts, self._den)

    def conjugate(self) -> 'Cyclotomic':
        return self.galois(-1 % self.conductor if self.conductor > 1 else 1)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError('{} is not rational.'.format(self))
        return Fraction(self._num[0], self._den)

    def is_integral(self) -> bool:
        return self._den == 1

    def normalized_trace(self) -> Fraction:
        traces = cyclotomic_basis(self.conductor).normalized_traces
        return sum((Fraction(c, self._den) * t for c, t in zip(self._num, traces)), Fraction(0))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        if self.conductor == other.conductor:
            return self._num == other._num and self._den == other._den
        a, b = self._common(other)
        return a._num == b._num and a._den == b._den

    def __hash__(self):
        return hash(self.normalized_trace())

    def to_json(self) -> dict:
        return {'conductor': self.conductor, 'coeffs': [common.rational_to_str(c) for c in self.coeffs]}

    def __repr__(self):
        return 'Cyclotomic({})'.format(self)

    def __str__(self):
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            power = 'z{}'.format(self.conductor) + ('^{}'.format(i) if i > 1 else '')
            terms.append(power if c == 1 else '-' + power if c == -1 else '{}*{}'.format(c, power))
        return ' + '.join(terms).replace('+ -', '- ') if terms else '0'


def cyc_arith(a: Cyclotomic, b: Cyclotomic, op: str) -> Cyclotomic:
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    raise ValueError("op must be one of {'add', 'sub', 'mul'} (got `%s`)." % op)


def cyc_conj(a: Cyclotomic) -> Cyclotomic:
    return a.conjugate()


def zeta_polynomial(n: int, coeffs_low_first: Sequence[Scalar]) -> Cyclotomic:
    """sum_i coeffs[i] * zeta_n^i for a coefficient list of any length."""
    den = 1
    fractions = [Fraction(c) for c in coeffs_low_first]
    for f in fractions:
        den = common.lcm(den, f.denominator)
    counts = [0] * n
    for i, f in enumerate(fractions):
        counts[i % n] += f.numerator * (den // f.denominator)
    return Cyclotomic.from_exponent_counts(n, counts, den)
