"""
Linear actions of matrix groups on V = GF(q)^n and on its character group.

Vectors and character labels are encoded as integers, code(v) = sum v[i] * q^i.
"""
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd
from typing import NamedTuple, Sequence, List, Optional, Tuple, Iterable, Union

import numpy as np
import sympy

from common import common, Partition, ArithmeticDomainError, BoundExceededError, VerificationError
from config import Config, default_config
from finite_fields import FFMatrix, ff_make
from group_spec import SemidirectSpec, parse_group_spec, parse_matrix_source
from groups import FiniteGroup, MatrixRepresentation, named_construction
from characters import CharacterTable, abelian_dual
from supercharacters import (SuperTheory, TheorySet, make_theory, orbit_theory, enumerate_invariant_scts)

MatrixLike = Union[FFMatrix, Sequence[Sequence[int]]]


def encode_vector(vector: Sequence[int], q: int) -> int:
    return int(sum(int(x) % q * q ** i for i, x in enumerate(vector)))


def decode_vector(code: int, q: int, n: int) -> Tuple[int, ...]:
    digits = []
    for _ in range(n):
        digits.append(code % q)
        code //= q
    return tuple(digits)


def orbit_labels(permutations: Sequence[np.ndarray], size: int) -> np.ndarray:
    """Smallest member of the orbit of every point under the group generated by the permutations."""
    labels = np.arange(size)
    changed = True
    while changed:
        changed = False
        for perm in permutations:
            merged = np.minimum(labels, labels[perm])
            if not np.array_equal(merged, labels):
                labels = merged
                changed = True
    return labels


class OrbitDecomposition(NamedTuple):
    q: int
    n: int
    vector_orbits: Partition
    dual_orbits: Partition

    @property
    def sizes(self) -> List[int]:
        return sorted(len(o) for o in self.vector_orbits)

    @property
    def dual_sizes(self) -> List[int]:
        return sorted(len(o) for o in self.dual_orbits)

    @property
    def num_orbits(self) -> int:
        return len(self.vector_orbits)

    def representatives(self) -> List[Tuple[int, ...]]:
        return [decode_vector(orbit[0], self.q, self.n) for orbit in self.vector_orbits]

    def to_json(self) -> dict:
        return {'orbit_sizes_V': self.sizes, 'orbit_sizes_Irr': self.dual_sizes,
                'orbit_reps': [list(v) for v in self.representatives()]}


class LinearAction:
    """A group of invertible matrices over GF(q), q prime, acting on column vectors."""

    def __init__(self, q: int, generators: Sequence[MatrixLike], name: str = '', config: Optional[Config] = None):
        self.config = config or default_config()
        self.q = q
        self.field = ff_make(q)
        matrices = [g if isinstance(g, FFMatrix) else FFMatrix(self.field, g) for g in generators]
        if not matrices:
            raise ValueError('A linear action needs at least one generator.')
        if len({m.n for m in matrices}) != 1:
            raise ValueError('Generators of {} have different dimensions.'.format(name or 'the action'))
        for m in matrices:
            if not m.is_invertible():
                raise ArithmeticDomainError('Generator {} is singular over GF({}).'.format(m.to_json(), q))
        self.generators: List[FFMatrix] = matrices
        self.n = matrices[0].n
        self.name = name or 'action on GF({})^{}'.format(q, self.n)
        self.size = q ** self.n
        if self.size > self.config.MAX_VECTORS:
            raise BoundExceededError('GF({})^{} has {} vectors, more than the bound {}.'.format(
                q, self.n, self.size, self.config.MAX_VECTORS))

    @classmethod
    def from_text(cls, text: str, base_dir: Optional[str] = None, config: Optional[Config] = None) -> 'LinearAction':
        """Either "q:FILE" or a semidirect(elemab:q^n, FILE) spec."""
        text = text.strip()
        if text.startswith('semidirect'):
            spec = parse_group_spec(text, base_dir)
            if not isinstance(spec, SemidirectSpec):
                raise ValueError('`{}` is not a semidirect product spec.'.format(text))
            q, n = spec.base.params
            matrices = spec.source.load()
            return cls(q, [[list(row) for row in m] for m in matrices], name=text, config=config)
        head, sep, rest = text.partition(':')
        if not sep or not head.strip().isdigit():
            raise ValueError('Expected "q:FILE" or a semidirect spec, got `{}`.'.format(text))
        q = int(head)
        if not sympy.isprime(q):
            raise ArithmeticDomainError('{} is not prime.'.format(q))
        matrices = parse_matrix_source(rest.strip(), base_dir).load()
        return cls(q, [[list(row) for row in m] for m in matrices], name=text, config=config)

    @cached_property
    def vectors(self) -> np.ndarray:
        codes = np.arange(self.size, dtype=np.int64)
        return np.stack([(codes // self.q ** i) % self.q for i in range(self.n)], axis=1)

    @cached_property
    def place_values(self) -> np.ndarray:
        return np.array([self.q ** i for i in range(self.n)], dtype=np.int64)

    def permutation(self, matrix: FFMatrix) -> np.ndarray:
        images = (self.vectors @ matrix.as_array().T) % self.q
        return images @ self.place_values

    @cached_property
    def vector_permutations(self) -> List[np.ndarray]:
        return [self.permutation(g) for g in self.generators]

    @cached_property
    def dual_generators(self) -> List[FFMatrix]:
        # a -> (g^-1)^T a keeps the pairing a.v fixed
        return [g.inverse().transpose() for g in self.generators]

    @cached_property
    def dual_permutations(self) -> List[np.ndarray]:
        return [self.permutation(g) for g in self.dual_generators]

    @cached_property
    def group(self) -> FiniteGroup:
        return FiniteGroup(MatrixRepresentation(self.field, self.n), self.generators, self.name,
                           self.config.ORDER_BOUND)

    @property
    def order(self) -> int:
        return self.group.order

    @cached_property
    def orbit_decomposition(self) -> OrbitDecomposition:
        vector_orbits = common.partition_from_labels(orbit_labels(self.vector_permutations, self.size).tolist())
        dual_orbits = common.partition_from_labels(orbit_labels(self.dual_permutations, self.size).tolist())
        return OrbitDecomposition(self.q, self.n, vector_orbits, dual_orbits)

    def negation(self) -> np.ndarray:
        return ((-self.vectors) % self.q) @ self.place_values

    def __repr__(self):
        return 'LinearAction({})'.format(self.name)


def orbits(action: LinearAction) -> OrbitDecomposition:
    return action.orbit_decomposition


def brauer_permutation_check(action: LinearAction) -> bool:
    if gcd(action.order, action.q) != 1:
        raise ArithmeticDomainError('{} has order {} divisible by q = {}.'.format(
            action.name, action.order, action.q))
    decomposition = action.orbit_decomposition
    return decomposition.sizes == decomposition.dual_sizes


def conjugation_fusion(action: LinearAction) -> bool:
    """True iff every orbit on the characters is closed under complex conjugation."""
    negation = action.negation()
    return all(set(negation[list(orbit)].tolist()) == set(orbit)
               for orbit in action.orbit_decomposition.dual_orbits)


class VectorSpaceTable(NamedTuple):
    """elemab:q^n realized, its character dual, and the translation between vector codes and class
    indices. Character row i carries the label with code i."""
    q: int
    n: int
    group: FiniteGroup
    table: CharacterTable
    class_of_code: Tuple[int, ...]

    def class_partition(self, code_blocks: Iterable[Iterable[int]]) -> Partition:
        return common.canonical_partition([self.class_of_code[c] for c in block] for block in code_blocks)


@lru_cache(maxsize=16)
def vector_space_table(q: int, n: int) -> VectorSpaceTable:
    group = named_construction('elemab', (q, n))
    table = abelian_dual(group)
    class_of_code = tuple(group.index[decode_vector(code, q, n)] for code in range(q ** n))
    return VectorSpaceTable(q, n, group, table, class_of_code)


def action_table(action: LinearAction) -> VectorSpaceTable:
    return vector_space_table(action.q, action.n)


def action_orbit_theory(action: LinearAction) -> SuperTheory:
    space = action_table(action)
    decomposition = action.orbit_decomposition
    return orbit_theory(space.table, decomposition.dual_orbits, space.class_partition(decomposition.vector_orbits))


def invariant_theories(action: LinearAction) -> TheorySet:
    space = action_table(action)
    decomposition = action.orbit_decomposition
    return enumerate_invariant_scts(space.table, space.class_partition(decomposition.vector_orbits),
                                    decomposition.dual_orbits, action.config)


class SemilinearGroup(NamedTuple):
    q: int
    n: int
    multiplier: FFMatrix
    frobenius: FFMatrix
    multiplier_order: int
    action: LinearAction

    @property
    def order(self) -> int:
        return self.action.order

    def word(self, i: int, j: int) -> FFMatrix:
        return (self.multiplier ** i) * (self.frobenius ** j)


def _column_matrix(field, columns: Sequence[Sequence[int]]) -> FFMatrix:
    n = len(columns)
    return FFMatrix(field, [[columns[j][i] for j in range(n)] for i in range(n)])


def semilinear_generators(q: int, n: int) -> Tuple[FFMatrix, FFMatrix]:
    """Multiplication by the primitive element of GF(q^n) and the Frobenius map x -> x^q,
    in the basis 1, x, ..., x^(n-1)."""
    big = ff_make(q, n)
    small = ff_make(q)
    basis = [q ** j for j in range(n)]
    multiplier = _column_matrix(small, [big.coordinates(big.mul(big.primitive_element, b)) for b in basis])
    frobenius = _column_matrix(small, [big.coordinates(big.pow(b, q)) for b in basis])
    return multiplier, frobenius


def semilinear_group(q: int, n: int, config: Optional[Config] = None) -> SemilinearGroup:
    config = config or default_config()
    if q ** n > config.MAX_VECTORS:
        raise BoundExceededError('GF({}^{}) has more than {} elements.'.format(q, n, config.MAX_VECTORS))
    multiplier, frobenius = semilinear_generators(q, n)
    action = LinearAction(q, [multiplier, frobenius], name='Gamma(GF({}^{}))'.format(q, n), config=config)
    multiplier_order = multiplier.multiplicative_order()
    if multiplier_order != q ** n - 1:
        raise VerificationError('Multiplier of GF({}^{}) has order {}.'.format(q, n, multiplier_order))
    if action.order != n * (q ** n - 1):
        raise VerificationError('Gamma(GF({}^{})) has order {}, expected {}.'.format(
            q, n, action.order, n * (q ** n - 1)))
    return SemilinearGroup(q, n, multiplier, frobenius, multiplier_order, action)


def semilinear_subgroup(q: int, n: int, words: Sequence[Sequence[int]], name: str = '',
                        config: Optional[Config] = None) -> LinearAction:
    """Subgroup of Gamma(GF(q^n)) generated by the words f^i s^j given as [i, j] pairs."""
    multiplier, frobenius = semilinear_generators(q, n)
    generators = [(multiplier ** int(w[0])) * (frobenius ** int(w[1] if len(w) > 1 else 0)) for w in words]
    label = name or 'subgroup of Gamma(GF({}^{})) on {}'.format(q, n, [list(w) for w in words])
    return LinearAction(q, generators, name=label, config=config)


def block_permutation_matrix(field, block_dim: int, blocks: int) -> FFMatrix:
    size = block_dim * blocks
    entries = [[0] * size for _ in range(size)]
    for b in range(blocks):
        for r in range(block_dim):
            entries[((b + 1) % blocks) * block_dim + r][b * block_dim + r] = 1
    return FFMatrix(field, entries)


def block_diagonal(field, blocks: Sequence[Sequence[Sequence[int]]]) -> FFMatrix:
    size = sum(len(b) for b in blocks)
    entries = [[0] * size for _ in range(size)]
    offset = 0
    for block in blocks:
        for i, row in enumerate(block):
            for j, value in enumerate(row):
                entries[offset + i][offset + j] = value
        offset += len(block)
    return FFMatrix(field, entries)


def wreath_matrix_generators(q: int, block_generators: Sequence[Sequence[Sequence[int]]],
                             blocks: int) -> List[FFMatrix]:
    """Generators of H wr Z_b on GF(q)^(b*m): each generator of H on the first block, and the cyclic
    block shift W_i -> W_(i+1)."""
    field = ff_make(q)
    m = len(block_generators[0])
    identity = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    generators = [block_diagonal(field, [g] + [identity] * (blocks - 1)) for g in block_generators]
    generators.append(block_permutation_matrix(field, m, blocks))
    return generators


class DirectSumDecomposition(NamedTuple):
    """V = W_1 + ... + W_s with every W_i = GF(q)^m, coordinates of W_i consecutive."""
    q: int
    m: int
    summands: int

    @property
    def dimension(self) -> int:
        return self.m * self.summands

    @property
    def summand_size(self) -> int:
        return self.q ** self.m

    def support(self, vector: Sequence[int]) -> Tuple[int, ...]:
        return tuple(i for i in range(self.summands) if any(vector[i * self.m:(i + 1) * self.m]))

    def weight(self, vector: Sequence[int]) -> int:
        return len(self.support(vector))


def rho_star_value(subset: Iterable[int], support: Iterable[int], summand_size: int) -> int:
    subset = set(subset)
    hits = len(subset & set(support))
    return (-1) ** hits * (summand_size - 1) ** (len(subset) - hits)


def weight_sigma_value(d: DirectSumDecomposition, weight: int, support: Sequence[int]) -> int:
    """sigma_i(v): sum of rho*_S(v) over the subsets S of size i."""
    return sum(rho_star_value(subset, support, d.summand_size)
               for subset in combinations(range(d.summands), weight))


def weight_partitions(d: DirectSumDecomposition) -> Tuple[VectorSpaceTable, Partition, Partition]:
    space = vector_space_table(d.q, d.dimension)
    table = space.table
    class_blocks = common.partition_from_labels([d.weight(v) for v in table.coordinates])
    char_blocks = common.partition_from_labels([d.weight(a) for a in table.labels])
    return space, char_blocks, class_blocks


def weight_theory(d: DirectSumDecomposition) -> SuperTheory:
    if not sympy.isprime(d.summands):
        raise ValueError('The number of summands must be prime (got {}).'.format(d.summands))
    space, char_blocks, class_blocks = weight_partitions(d)
    table = space.table
    theory = make_theory(table, char_blocks, class_blocks)
    for x, X in enumerate(theory.char_blocks):
        i = d.weight(table.labels[X[0]])
        for k, K in enumerate(theory.class_blocks):
            expected = weight_sigma_value(d, i, d.support(table.coordinates[K[0]]))
            if theory.values[x][k] != expected:
                raise VerificationError('sigma_{} on weight {} is {}, expected {}.'.format(
                    i, d.weight(table.coordinates[K[0]]), theory.values[x][k], expected))
    return theory


def three_invariant_case(action: LinearAction) -> str:
    """Which family of actions with two invariant theories an action belongs to, or 'none'."""
    q, n, order = action.q, action.n, action.order
    size = q ** n
    factors = sympy.factorint(order)
    if len(factors) != 1:
        return 'none'
    p = int(next(iter(factors)))
    if p == q:
        return 'none'
    fermat = sympy.isprime(q) and common.is_power_of(q - 1, 2)
    if p == 2:
        if n == 1 and fermat and order == (q - 1) // 2:
            return 'fermat_line_index_two'
        if q == 3 and n == 2 and order in (4, 8):
            return 'ternary_plane'
        if q == 3 and n == 4:
            return 'ternary_four_space'
        if q >= 5 and fermat and n == 2 and order in ((q - 1) ** 2 * 2, (q - 1) ** 2):
            return 'fermat_plane'
        if q == 7 and n == 2 and order in (16, 32):
            return 'septenary_plane'
    if n == 1 and (q - 1) % order == 0:
        rest = (q - 1) // order
        if sympy.isprime(rest) and common.p_part(q - 1, p) == order:
            return 'prime_line_sylow'
    if p not in (2, 3) and q == 3 and size - 1 == 2 * order and max(action.group.element_orders) == order:
        return 'ternary_cyclic'
    return 'none'
