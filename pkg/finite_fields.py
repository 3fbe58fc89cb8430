from functools import lru_cache
from itertools import product
from typing import Sequence, Tuple, List, Optional, Union

import numpy as np
import sympy

from common import ArithmeticDomainError

Entries = Tuple[Tuple[int, ...], ...]


class FiniteField:
    """GF(p^k). Elements are the integers 0..p^k-1; digit i (base p) is the coefficient of x^i.

    The modulus is the lexicographically smallest monic irreducible polynomial of
    degree k, coefficients compared from the constant term upwards.
    """

    def __init__(self, p: int, k: int = 1):
        if not sympy.isprime(p):
            raise ArithmeticDomainError('Field characteristic must be prime (got {}).'.format(p))
        if k < 1:
            raise ArithmeticDomainError('Field degree must be positive (got {}).'.format(k))
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus: Tuple[int, ...] = self._smallest_irreducible(p, k)
        self.digits = np.array([self._to_digits(a) for a in range(self.order)], dtype=np.int64).reshape(self.order, k)
        self.place_values = np.array([p ** i for i in range(k)], dtype=np.int64)
        self.primitive_element = self._find_primitive_element()
        self._exp = [0] * (self.order - 1)
        self._log = [-1] * self.order
        value = 1
        for e in range(self.order - 1):
            self._exp[e] = value
            self._log[value] = e
            value = self._poly_mul(value, self.primitive_element)

    @staticmethod
    def _smallest_irreducible(p: int, k: int) -> Tuple[int, ...]:
        x = sympy.Symbol('x')
        for low in product(range(p), repeat=k):
            coeffs_low_first = list(low) + [1]
            poly = sympy.Poly(list(reversed(coeffs_low_first)), x, modulus=p)
            if poly.is_irreducible:
                return tuple(coeffs_low_first)
        raise ArithmeticDomainError('No irreducible polynomial of degree {} over GF({}).'.format(k, p))

    def _to_digits(self, a: int) -> List[int]:
        digits = []
        for _ in range(self.k):
            digits.append(a % self.p)
            a //= self.p
        return digits

    def _from_digits(self, digits: Sequence[int]) -> int:
        return int(sum(int(d) % self.p * self.p ** i for i, d in enumerate(digits)))

    def _poly_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self._to_digits(a), self._to_digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * k - 2, k - 1, -1):
            top = prod[deg]
            if top:
                for i in range(k + 1):
                    prod[deg - k + i] = (prod[deg - k + i] - top * self.modulus[i]) % p
        return self._from_digits(prod[:k])

    def _find_primitive_element(self) -> int:
        if self.k == 1:
            return int(sympy.primitive_root(self.p)) if self.p > 2 else 1
        target = self.order - 1
        divisors = [target // r for r in sympy.primefactors(target)]
        for g in range(2, self.order):
            if all(self._poly_pow(g, d) != 1 for d in divisors):
                return g
        raise ArithmeticDomainError('No primitive element found in GF({}).'.format(self.order))

    def _poly_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            e >>= 1
        return result

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return int(((self.digits[a] + self.digits[b]) % self.p) @ self.place_values)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return int(((-self.digits[a]) % self.p) @ self.place_values)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return (a * b) % self.p
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError('Zero has no inverse in GF({}).'.format(self.order))
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def frobenius(self, a: int, power: int = 1) -> int:
        return self.pow(a, self.p ** power)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ArithmeticDomainError('Zero has no multiplicative order.')
        n = self.order - 1
        return n // int(sympy.gcd(n, self._log[a]))

    def coordinates(self, a: int) -> Tuple[int, ...]:
        return tuple(int(d) for d in self.digits[a])

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __reduce__(self):
        return ff_make, (self.p, self.k)

    def __repr__(self):
        return 'GF({})'.format(self.order)


@lru_cache(maxsize=None)
def ff_make(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


class FFMatrix:
    __slots__ = ('field', 'n', 'entries')

    def __init__(self, field: FiniteField, entries: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) % field.order if field.is_prime_field else int(x) for x in row) for row in entries)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError('FFMatrix must be square (got {} rows of lengths {}).'.format(
                len(rows), [len(row) for row in rows]))
        if not field.is_prime_field and any(not 0 <= x < field.order for row in rows for x in row):
            raise ValueError('Matrix entries must be field elements 0..{}.'.format(field.order - 1))
        self.field = field
        self.n = len(rows)
        self.entries: Entries = rows

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> 'FFMatrix':
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, field: FiniteField, values: Sequence[int]) -> 'FFMatrix':
        n = len(values)
        return cls(field, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.n, self.n)

    def __mul__(self, other: 'FFMatrix') -> 'FFMatrix':
        if self.n != other.n or self.field != other.field:
            raise ValueError('Incompatible matrices: {}x{} over {} and {}x{} over {}.'.format(
                self.n, self.n, self.field, other.n, other.n, other.field))
        f = self.field
        if f.is_prime_field:
            return FFMatrix(f, (self.as_array() @ other.as_array()) % f.p)
        rows = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                acc = 0
                for t in range(self.n):
                    acc = f.add(acc, f.mul(self.entries[i][t], other.entries[t][j]))
                row.append(acc)
            rows.append(row)
        return FFMatrix(f, rows)

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        f = self.field
        if f.is_prime_field:
            return tuple(int(x) for x in (self.as_array() @ np.asarray(vector, dtype=np.int64)) % f.p)
        result = []
        for row in self.entries:
            acc = 0
            for a, v in zip(row, vector):
                acc = f.add(acc, f.mul(a, v))
            result.append(acc)
        return tuple(result)

    def transpose(self) -> 'FFMatrix':
        return FFMatrix(self.field, list(zip(*self.entries)))

    def _row_reduce(self) -> Tuple[int, Optional['FFMatrix']]:
        """Gauss-Jordan on [M | I]; returns (determinant, inverse or None)."""
        f, n = self.field, self.n
        work = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.entries)]
        det = 1
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
            if pivot is None:
                return 0, None
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = f.neg(det)
            det = f.mul(det, work[col][col])
            scale = f.inv(work[col][col])
            work[col] = [f.mul(scale, x) for x in work[col]]
            for r in range(n):
                if r != col and work[r][col] != 0:
                    factor = work[r][col]
                    work[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(work[r], work[col])]
        return det, FFMatrix(f, [row[n:] for row in work])

    def determinant(self) -> int:
        return self._row_reduce()[0]

    def is_invertible(self) -> bool:
        return self.determinant() != 0

    def inverse(self) -> 'FFMatrix':
        det, inverse = self._row_reduce()
        if inverse is None:
            raise ArithmeticDomainError('Singular matrix has no inverse: {}.'.format(self.entries))
        return inverse

    def multiplicative_order(self) -> int:
        if not self.is_invertible():
            raise ArithmeticDomainError('Singular matrix has no multiplicative order: {}.'.format(self.entries))
        identity = FFMatrix.identity(self.field, self.n)
        power, order = self, 1
        while power != identity:
            power = power * self
            order += 1
        return order

    def __pow__(self, e: int) -> 'FFMatrix':
        if e < 0:
            return self.inverse() ** (-e)
        result, base = FFMatrix.identity(self.field, self.n), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, FFMatrix) and self.field == other.field and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __lt__(self, other: 'FFMatrix'):
        return self.entries < other.entries

    def to_json(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def __repr__(self):
        return 'FFMatrix({}, {})'.format(self.field, [list(row) for row in self.entries])


def mat_op(m: FFMatrix, n: Optional[FFMatrix], op: str) -> Union[FFMatrix, int]:
    if op == 'mul':
        if n is None:
            raise ValueError('mat_op `mul` needs two operands.')
        return m * n
    if op == 'inverse':
        return m.inverse()
    if op == 'multiplicative_order':
        return m.multiplicative_order()
    raise ValueError("op must be one of {'mul', 'inverse', 'multiplicative_order'} (got `%s`)." % op)
