from itertools import product
from math import isqrt
from typing import List, Optional, Sequence, Tuple, Dict, Iterable, NamedTuple

import numpy as np
import sympy
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from common import ArithmeticDomainError, BoundExceededError, VerificationError
from config import Config, default_config
from cyclotomics import Cyclotomic
from groups import FiniteGroup, conjugacy_data, class_structure_constants


class CharacterTable:
    """Irreducible characters of a group as exact cyclotomic rows indexed by conjugacy classes."""

    def __init__(self, group: Optional[FiniteGroup], name: str, conductor: int, class_sizes: Sequence[int],
                 rows: Sequence[Sequence[Cyclotomic]], inverse_map: Sequence[int],
                 labels: Optional[Sequence[Tuple[int, ...]]] = None,
                 coordinates: Optional[Sequence[Tuple[int, ...]]] = None):
        self.group = group
        self.name = name
        self.conductor = conductor
        self.class_sizes: Tuple[int, ...] = tuple(class_sizes)
        self.rows: Tuple[Tuple[Cyclotomic, ...], ...] = tuple(tuple(row) for row in rows)
        self.inverse_map: Tuple[int, ...] = tuple(inverse_map)
        # abelian duals only: character label a of each row and coordinate vector of each class
        self.labels = tuple(labels) if labels is not None else None
        self.coordinates = tuple(coordinates) if coordinates is not None else None

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    @property
    def num_classes(self) -> int:
        return len(self.class_sizes)

    @property
    def num_characters(self) -> int:
        return len(self.rows)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(int(row[0].to_rational()) for row in self.rows)

    @property
    def centralizer_orders(self) -> Tuple[int, ...]:
        return tuple(self.order // s for s in self.class_sizes)

    def value(self, character: int, class_idx: int) -> Cyclotomic:
        return self.rows[character][class_idx]

    def character(self, idx: int) -> 'ClassFunction':
        return ClassFunction(self.name, tuple(range(self.num_classes)), self.rows[idx])

    def to_json(self) -> dict:
        return {'group': self.name, 'conductor': self.conductor, 'classes': list(self.class_sizes),
                'rows': [[value.to_json() for value in row] for row in self.rows]}

    def __repr__(self):
        return 'CharacterTable({}, {} classes)'.format(self.name, self.num_classes)


class ClassFunction(NamedTuple):
    """Values of a class function on the listed classes."""
    group_name: str
    classes: Tuple[int, ...]
    values: Tuple[Cyclotomic, ...]

    def value_at(self, class_idx: int) -> Cyclotomic:
        return self.values[self.classes.index(class_idx)]

    def _aligned(self, other: 'ClassFunction'):
        if self.classes != other.classes:
            raise ValueError('Class functions live on different class sets: {} and {}.'.format(
                self.classes, other.classes))

    def __add__(self, other: 'ClassFunction') -> 'ClassFunction':
        self._aligned(other)
        return self._replace(values=tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: 'ClassFunction') -> 'ClassFunction':
        self._aligned(other)
        return self._replace(values=tuple(a - b for a, b in zip(self.values, other.values)))

    def scaled(self, factor) -> 'ClassFunction':
        return self._replace(values=tuple(v * factor for v in self.values))

    def is_constant_on(self, class_block: Iterable[int]) -> bool:
        values = {self.value_at(c) for c in class_block}
        return len(values) <= 1

    def to_json(self) -> dict:
        return {'group': self.group_name, 'classes': list(self.classes),
                'values': [v.to_json() for v in self.values]}


def restrict_class_function(f: ClassFunction, classes: Iterable[int]) -> ClassFunction:
    selected = tuple(sorted(set(classes)))
    if not selected:
        raise ValueError('Cannot restrict a class function to an empty set of classes.')
    missing = set(selected) - set(f.classes)
    if missing:
        raise ValueError('Classes {} are outside the domain of the class function.'.format(sorted(missing)))
    return ClassFunction(f.group_name, selected, tuple(f.value_at(c) for c in selected))


def constant_class_function(table: CharacterTable, value) -> ClassFunction:
    value = Cyclotomic.from_rational(value) if not isinstance(value, Cyclotomic) else value
    return ClassFunction(table.name, tuple(range(table.num_classes)), (value,) * table.num_classes)


def regular_character(table: CharacterTable) -> ClassFunction:
    values = [Cyclotomic.from_rational(table.order)] + [Cyclotomic.zero()] * (table.num_classes - 1)
    return ClassFunction(table.name, tuple(range(table.num_classes)), tuple(values))


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime l = 1 (mod exponent) with l > 2|G|."""
    k = (2 * order) // exponent + 1
    while not sympy.isprime(k * exponent + 1):
        k += 1
    return k * exponent + 1


class _Eigenspace(NamedTuple):
    basis: np.ndarray
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


class _DixonSplitter:
    """Simultaneous eigenvectors of the class multiplication matrices (M_j)_{kl} = c_{jkl} over GF(l)."""

    def __init__(self, constants: np.ndarray, ell: int, seed: int):
        self.constants = constants % ell
        self.ell = ell
        self.field = GF(ell)
        self.rng = np.random.default_rng(seed)
        self.x = sympy.Symbol('x')

    def _domain_matrix(self, rows: np.ndarray) -> DomainMatrix:
        K = self.field
        return DomainMatrix([[K(int(v)) for v in row] for row in rows], rows.shape, K)

    def _to_array(self, matrix: DomainMatrix) -> np.ndarray:
        rows = matrix.to_Matrix().tolist()
        return np.array([[int(v) % self.ell for v in row] for row in rows], dtype=np.int64).reshape(matrix.shape)

    def _rref(self, rows: np.ndarray) -> _Eigenspace:
        reduced, pivots = self._domain_matrix(rows).rref()
        basis = self._to_array(reduced)[:len(pivots)]
        return _Eigenspace(basis, tuple(pivots))

    def _nullspace(self, matrix: np.ndarray) -> np.ndarray:
        n = matrix.shape[0]
        reduced, pivots = self._domain_matrix(matrix).rref()
        reduced = self._to_array(reduced)
        free = [c for c in range(n) if c not in pivots]
        vectors = np.zeros((len(free), n), dtype=np.int64)
        for i, f in enumerate(free):
            vectors[i, f] = 1
            for row, pivot in enumerate(pivots):
                vectors[i, pivot] = (-reduced[row, f]) % self.ell
        return vectors

    def _roots(self, matrix: np.ndarray) -> List[int]:
        coefficients = self._domain_matrix(matrix).charpoly()
        poly = sympy.Poly([int(c) % self.ell for c in coefficients], self.x, modulus=self.ell)
        roots = []
        for factor, _ in poly.factor_list()[1]:
            if factor.degree() != 1:
                raise VerificationError('Class matrix eigenvalues do not lie in GF({}).'.format(self.ell))
            a, b = (int(c) % self.ell for c in factor.all_coeffs())
            roots.append((-b * pow(a, -1, self.ell)) % self.ell)
        return sorted(set(roots))

    def split(self, space: _Eigenspace, matrix: np.ndarray) -> List[_Eigenspace]:
        ell = self.ell
        images = (matrix @ space.basis.T) % ell
        restricted = images[list(space.pivots), :]
        roots = self._roots(restricted)
        if len(roots) == 1:
            return [space]
        parts = []
        identity = np.eye(space.dim, dtype=np.int64)
        for root in roots:
            kernel = self._nullspace((restricted - root * identity) % ell)
            parts.append(self._rref((kernel @ space.basis) % ell))
        return parts

    def trial_matrices(self) -> Iterable[np.ndarray]:
        r = self.constants.shape[0]
        weights = self.rng.integers(0, self.ell, size=r)
        yield np.tensordot(weights, self.constants, axes=1) % self.ell
        for j in range(1, r):
            yield self.constants[j]

    def eigenvectors(self) -> List[np.ndarray]:
        r = self.constants.shape[0]
        pending = [_Eigenspace(np.eye(r, dtype=np.int64), tuple(range(r)))]
        done = []
        for matrix in self.trial_matrices():
            still = []
            for space in pending:
                for part in self.split(space, matrix):
                    (done if part.dim == 1 else still).append(part)
            pending = still
            if not pending:
                break
        if pending or len(done) != r:
            raise VerificationError('Could not split the class algebra into {} eigenvectors over GF({}).'.format(
                r, self.ell))
        vectors = []
        for space in done:
            w = space.basis[0]
            vectors.append((w * pow(int(w[0]), -1, self.ell)) % self.ell)
        return vectors


def _sort_rows(rows: List[List[Cyclotomic]]) -> List[List[Cyclotomic]]:
    def key(row):
        trivial = all(v == 1 for v in row)
        return (not trivial, row[0].to_rational(), tuple(tuple(v.coeffs) for v in row))
    return sorted(rows, key=key)


def character_table(group: FiniteGroup, config: Optional[Config] = None) -> CharacterTable:
    config = config or default_config()
    cd = conjugacy_data(group)
    r = cd.num_classes
    if r > config.MAX_TABLE_CLASSES:
        raise BoundExceededError('{} has {} classes, more than the table bound {}.'.format(
            group.name, r, config.MAX_TABLE_CLASSES))
    order, e = group.order, group.exponent
    ell = dixon_prime(order, e)
    config.get_logger().debug('Dixon: {} classes, exponent {}, prime {}'.format(r, e, ell))
    constants = class_structure_constants(group)
    vectors = _DixonSplitter(constants, ell, config.DIXON_SEED).eigenvectors()

    sizes = cd.sizes
    size_inverses = [pow(s, -1, ell) for s in sizes]
    zeta = pow(int(sympy.primitive_root(ell)), (ell - 1) // e, ell)
    # inverse DFT over the e-th roots of unity modulo l
    exps = (-np.outer(np.arange(e), np.arange(e))) % e
    zeta_powers = np.array([pow(zeta, k, ell) for k in range(e)], dtype=np.int64)
    dft = zeta_powers[exps]
    e_inverse = pow(e, -1, ell)
    power_classes = []
    for rep in cd.representatives:
        classes, x = [], 0
        for _ in range(e):
            classes.append(cd.class_of[x])
            x = group.multiply(x, rep)
        power_classes.append(classes)

    rows = []
    for w in vectors:
        total = sum(int(w[j]) * int(w[cd.inverse_map[j]]) * size_inverses[j] for j in range(r)) % ell
        square = (order * pow(total, -1, ell)) % ell
        degree = isqrt(square)
        if degree * degree != square or order % degree:
            raise VerificationError('Degree recovery failed in {}: d^2 = {} mod {}.'.format(group.name, square, ell))
        modular = np.array([(int(w[j]) * degree * size_inverses[j]) % ell for j in range(r)], dtype=np.int64)
        row = []
        for j in range(r):
            counts = (dft @ modular[power_classes[j]]) % ell
            counts = (counts * e_inverse) % ell
            if int(counts.max(initial=0)) > degree:
                raise VerificationError('Eigenvalue multiplicities out of range for class {} of {}.'.format(
                    j, group.name))
            row.append(Cyclotomic.from_exponent_counts(e, [int(c) for c in counts]))
        rows.append(row)
    table = CharacterTable(group, group.name, e, sizes, _sort_rows(rows), cd.inverse_map)
    if sum(d * d for d in table.degrees) != order:
        raise VerificationError('Degrees of {} do not satisfy sum d^2 = |G|.'.format(group.name))
    if not verify_orthogonality(table):
        raise VerificationError('Character table of {} fails orthogonality.'.format(group.name))
    return table


def verify_orthogonality(table: CharacterTable) -> bool:
    r, n = table.num_classes, table.order
    if table.num_characters != r:
        return False
    conjugates = [[v.conjugate() for v in row] for row in table.rows]
    for a in range(r):
        for b in range(a, r):
            total = Cyclotomic.zero()
            for j in range(r):
                total = total + table.rows[a][j] * conjugates[b][j] * table.class_sizes[j]
            if total != (n if a == b else 0):
                return False
    centralizers = table.centralizer_orders
    for j in range(r):
        for k in range(j, r):
            total = Cyclotomic.zero()
            for chi in range(r):
                total = total + table.rows[chi][j] * conjugates[chi][k]
            if total != (centralizers[j] if j == k else 0):
                return False
    return True


def elementary_abelian_coordinates(group: FiniteGroup) -> Tuple[int, Dict[int, Tuple[int, ...]]]:
    """(q, coordinates) for an elementary abelian q-group, coordinates taken against a greedy basis
    of elements in index order."""
    if group.order == 1:
        return 1, {0: ()}
    q = group.exponent
    if not group.is_abelian() or not sympy.isprime(q):
        raise ArithmeticDomainError('{} is not elementary abelian.'.format(group.name))
    coords = {0: ()}
    for x in range(group.order):
        if x in coords:
            continue
        multiples = [0]
        for _ in range(q - 1):
            multiples.append(group.multiply(multiples[-1], x))
        coords = {group.multiply(s, multiples[c]): cs + (c,) for s, cs in coords.items() for c in range(q)}
    return q, coords


def abelian_dual(group: FiniteGroup) -> CharacterTable:
    q, coords = elementary_abelian_coordinates(group)
    if group.order == 1:
        return CharacterTable(group, group.name, 1, (1,), [[Cyclotomic.one()]], (0,))
    k = max(len(c) for c in coords.values())
    element_coords = [coords[x] for x in range(group.order)]
    labels = [tuple(reversed(digits)) for digits in product(range(q), repeat=k)]
    roots = [Cyclotomic.root_of_unity(q, i) for i in range(q)]
    rows = [[roots[sum(a * v for a, v in zip(label, vec)) % q] for vec in element_coords] for label in labels]
    inverse_map = [group.inverse(x) for x in range(group.order)]
    return CharacterTable(group, group.name, q, (1,) * group.order, rows, inverse_map, labels, element_coords)

