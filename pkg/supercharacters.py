from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from typing import NamedTuple, Tuple, List, Optional, Dict, Iterator, Sequence, Iterable

import numpy as np

from common import common, Partition, ArithmeticDomainError, BoundExceededError, VerificationError
from config import Config, default_config
from cyclotomics import Cyclotomic
from characters import CharacterTable
from groups import class_structure_constants

PARALLEL_MIN_ITEMS = 10
AUDIT_MAX_CLASSES = 8


class SuperTheory(NamedTuple):
    """A supercharacter theory. `class_blocks` partitions class indices of the table (for abelian
    groups, elements), `char_blocks` partitions its rows; values[X][K] = sigma_X on block K."""
    group_name: str
    class_blocks: Partition
    char_blocks: Partition
    values: Tuple[Tuple[Cyclotomic, ...], ...]

    @property
    def key(self) -> Tuple[Partition, Partition]:
        return self.class_blocks, self.char_blocks

    @property
    def num_blocks(self) -> int:
        return len(self.class_blocks)

    def to_json(self) -> dict:
        return {'class_blocks': [list(b) for b in self.class_blocks],
                'char_blocks': [list(b) for b in self.char_blocks],
                'values': [[v.to_json() for v in row] for row in self.values]}


class TheorySet:
    def __init__(self, group_name: str, theories: Iterable[SuperTheory]):
        unique = {t.key: t for t in theories}
        self.group_name = group_name
        self.theories: List[SuperTheory] = [unique[key] for key in sorted(unique)]

    def __len__(self):
        return len(self.theories)

    def __iter__(self):
        return iter(self.theories)

    def __contains__(self, item):
        key = item.key if isinstance(item, SuperTheory) else item
        return key in self.keys()

    def keys(self) -> set:
        return {t.key for t in self.theories}

    def to_json(self) -> list:
        return [t.to_json() for t in self.theories]


class _SearchState(NamedTuple):
    blocks: Tuple[Tuple[int, ...], ...]
    unassigned: Tuple[int, ...]
    signatures: Tuple[Tuple[int, ...], ...]


class SchurPartitionSearch:
    """Partitions of items 0..n-1, with {0} a block, whose block sums span a subalgebra.

    constants[i, j, k] is the coefficient of a fixed member of item k in the product of the sums of
    items i and j. Blocks are built one at a time around the smallest unassigned item; an item may
    join only if it agrees with that item on every product of completed blocks computed so far.
    """

    def __init__(self, constants: np.ndarray, inverse_map: Sequence[int], inverse_closed: bool = True):
        self.constants = np.asarray(constants, dtype=np.int64)
        self.n = self.constants.shape[0]
        self.inverse_map = tuple(inverse_map)
        self.inverse_closed = inverse_closed

    def _product(self, first: Sequence[int], second: Sequence[int]) -> np.ndarray:
        return self.constants[list(first)].sum(axis=0)[list(second)].sum(axis=0)

    def initial_state(self) -> _SearchState:
        return _SearchState(((0,),), tuple(range(1, self.n)), ((),) * self.n)

    def children(self, state: _SearchState) -> Iterator[_SearchState]:
        if not state.unassigned:
            return
        sig = state.signatures
        u = state.unassigned[0]
        candidates = [k for k in state.unassigned[1:] if sig[k] == sig[u]]
        for chosen in common.subsets_containing(u, candidates):
            new_blocks = [chosen]
            if self.inverse_closed:
                inverse = tuple(sorted({self.inverse_map[k] for k in chosen}))
                if inverse != chosen:
                    if set(inverse) & set(chosen):
                        continue
                    if len({sig[k] for k in inverse}) != 1:
                        continue
                    new_blocks.append(inverse)
            blocks = state.blocks + tuple(new_blocks)
            products = [self._product(b, other) for b in new_blocks for other in blocks]
            if any(len({int(P[k]) for k in block}) != 1 for P in products for block in blocks):
                continue
            taken = set().union(*new_blocks)
            remaining = tuple(k for k in state.unassigned if k not in taken)
            signatures = list(sig)
            for k in remaining:
                signatures[k] = sig[k] + tuple(int(P[k]) for P in products)
            yield _SearchState(blocks, remaining, tuple(signatures))

    def complete(self, state: _SearchState) -> Iterator[Partition]:
        if not state.unassigned:
            yield common.canonical_partition(state.blocks)
            return
        for child in self.children(state):
            yield from self.complete(child)

    def run(self, config: Optional[Config] = None) -> List[Partition]:
        config = config or default_config()
        root = self.initial_state()
        if self.n == 1:
            return [((0,),)]
        branches = list(self.children(root))
        if config.NUM_WORKERS > 1 and len(branches) > 1 and self.n >= PARALLEL_MIN_ITEMS:
            with ProcessPoolExecutor(max_workers=config.NUM_WORKERS) as executor:
                found = [p for chunk in executor.map(_complete_branch, repeat(self), branches) for p in chunk]
        else:
            found = [p for branch in branches for p in self.complete(branch)]
        return sorted(set(found))


def _complete_branch(search: SchurPartitionSearch, state: _SearchState) -> List[Partition]:
    return list(search.complete(state))


def is_schur_partition(constants: np.ndarray, inverse_map: Sequence[int], blocks: Partition,
                       inverse_closed: bool = True) -> bool:
    if (0,) not in blocks:
        return False
    block_of = common.block_index_map(blocks)
    if inverse_closed:
        for block in blocks:
            if len({block_of[inverse_map[k]] for k in block}) != 1:
                return False
    search = SchurPartitionSearch(constants, inverse_map, inverse_closed)
    for a, first in enumerate(blocks):
        for second in blocks[a:]:
            P = search._product(first, second)
            if any(len({int(P[k]) for k in block}) != 1 for block in blocks):
                return False
    return True


def _check_partitions(table: CharacterTable, char_blocks: Partition, class_blocks: Partition):
    try:
        common.check_partition(class_blocks, table.num_classes)
        common.check_partition(char_blocks, table.num_characters)
    except ValueError as e:
        raise ValueError('Malformed partition pair for {}: {}'.format(table.name, e))


def sigma_values(table: CharacterTable, char_block: Sequence[int]) -> List[Cyclotomic]:
    """sigma_X = sum of chi(1) chi over chi in X, on every class."""
    if table.labels is not None:
        # linear characters of an elementary abelian group: count exponents a.v mod q
        q = table.conductor
        labels = np.array([table.labels[i] for i in char_block], dtype=np.int64).reshape(len(char_block), -1)
        coords = np.array(table.coordinates, dtype=np.int64).reshape(table.num_classes, -1)
        exponents = (labels @ coords.T) % q
        return [Cyclotomic.from_exponent_counts(q, np.bincount(exponents[:, j], minlength=q).tolist())
                for j in range(table.num_classes)]
    values = []
    degrees = table.degrees
    for j in range(table.num_classes):
        total = Cyclotomic.zero(table.conductor)
        for chi in char_block:
            total = total + table.rows[chi][j] * degrees[chi]
        values.append(total)
    return values


def supercharacter_values(table: CharacterTable, char_blocks: Partition, class_blocks: Partition,
                          cache: Optional[Dict] = None) -> Optional[Tuple[Tuple[Cyclotomic, ...], ...]]:
    """The sigma value matrix, or None when some sigma_X is not constant on some block."""
    matrix = []
    for block in char_blocks:
        if cache is not None and block in cache:
            values = cache[block]
        else:
            values = sigma_values(table, block)
            if cache is not None:
                cache[block] = values
        row = []
        for K in class_blocks:
            if any(values[j] != values[K[0]] for j in K[1:]):
                return None
            row.append(values[K[0]])
        matrix.append(tuple(row))
    return tuple(matrix)


def verify_sct(table: CharacterTable, char_blocks: Partition, class_blocks: Partition,
               cache: Optional[Dict] = None) -> bool:
    char_blocks = common.canonical_partition(char_blocks)
    class_blocks = common.canonical_partition(class_blocks)
    _check_partitions(table, char_blocks, class_blocks)
    if len(char_blocks) != len(class_blocks):
        return False
    if (0,) not in class_blocks:
        return False
    return supercharacter_values(table, char_blocks, class_blocks, cache) is not None


def make_theory(table: CharacterTable, char_blocks: Partition, class_blocks: Partition) -> SuperTheory:
    char_blocks = common.canonical_partition(char_blocks)
    class_blocks = common.canonical_partition(class_blocks)
    if not verify_sct(table, char_blocks, class_blocks):
        raise VerificationError('({}, {}) is not a supercharacter theory of {}.'.format(
            char_blocks, class_blocks, table.name))
    return SuperTheory(table.name, class_blocks, char_blocks,
                       supercharacter_values(table, char_blocks, class_blocks))


def finest_theory(table: CharacterTable) -> SuperTheory:
    return make_theory(table, tuple((i,) for i in range(table.num_characters)),
                       tuple((j,) for j in range(table.num_classes)))


def coarsest_theory(table: CharacterTable) -> SuperTheory:
    if table.num_classes == 1:
        return finest_theory(table)
    return make_theory(table, ((0,), tuple(range(1, table.num_characters))),
                       ((0,), tuple(range(1, table.num_classes))))


def _table_constants(table: CharacterTable) -> np.ndarray:
    if table.group is None:
        raise ValueError('Character table {} carries no group.'.format(table.name))
    return class_structure_constants(table.group)


def char_partition_from_class_partition(table: CharacterTable, class_blocks: Partition) -> Partition:
    class_blocks = common.canonical_partition(class_blocks)
    common.check_partition(class_blocks, table.num_classes)
    if table.group is not None and not is_schur_partition(_table_constants(table), table.inverse_map,
                                                          class_blocks, inverse_closed=False):
        raise VerificationError('Block sums of {} do not span a subalgebra of the class algebra of {}.'.format(
            class_blocks, table.name))
    sizes = table.class_sizes
    degrees = table.degrees
    labels = []
    if table.labels is not None:
        # central characters of linear characters are the block sums themselves
        for chi in range(table.num_characters):
            sums = sigma_values(table, (chi,))
            labels.append(tuple(sum((sums[j] for j in K[1:]), sums[K[0]]) for K in class_blocks))
        return common.partition_from_labels(labels)
    for chi, row in enumerate(table.rows):
        central = []
        for K in class_blocks:
            total = Cyclotomic.zero(table.conductor)
            for j in K:
                total = total + row[j] * sizes[j]
            central.append(total / degrees[chi])
        labels.append(tuple(central))
    return common.partition_from_labels(labels)


def theory_from_class_partition(table: CharacterTable, class_blocks: Partition) -> SuperTheory:
    char_blocks = char_partition_from_class_partition(table, class_blocks)
    if len(char_blocks) != len(class_blocks):
        raise VerificationError('{} blocks of classes but {} blocks of characters for {}.'.format(
            len(class_blocks), len(char_blocks), table.name))
    return make_theory(table, char_blocks, class_blocks)


def inverse_closure_discrepancies(table: CharacterTable, config: Optional[Config] = None) -> List[Partition]:
    """Class partitions that span a subalgebra and satisfy the theory axioms but are not closed
    under inversion."""
    config = config or default_config()
    constants = _table_constants(table)
    closed = set(SchurPartitionSearch(constants, table.inverse_map).run(config))
    found = []
    for blocks in SchurPartitionSearch(constants, table.inverse_map, inverse_closed=False).run(config):
        if blocks in closed:
            continue
        chars = char_partition_from_class_partition(table, blocks)
        if len(chars) == len(blocks) and verify_sct(table, chars, blocks):
            config.warn('{}: class partition {} is a theory but not inverse-closed.'.format(table.name, blocks))
            found.append(blocks)
    return found


def enumerate_scts(table: CharacterTable, config: Optional[Config] = None) -> TheorySet:
    config = config or default_config()
    r = table.num_classes
    if r > config.MAX_SCT_CLASSES:
        raise BoundExceededError('{} has {} classes, more than the search bound {}.'.format(
            table.name, r, config.MAX_SCT_CLASSES))
    partitions = SchurPartitionSearch(_table_constants(table), table.inverse_map).run(config)
    config.get_logger().debug('{}: {} class partitions span subalgebras'.format(table.name, len(partitions)))
    theories = [theory_from_class_partition(table, blocks) for blocks in partitions]
    if r <= AUDIT_MAX_CLASSES:
        inverse_closure_discrepancies(table, config)
    return TheorySet(table.name, theories)


def naive_scts(table: CharacterTable) -> TheorySet:
    """Every partition pair tested directly against the axioms."""
    r = table.num_classes
    cache = {}
    class_options = [((0,),) + rest for rest in common.set_partitions(list(range(1, r)))]
    by_size: Dict[int, List[Partition]] = {}
    for chars in common.set_partitions(list(range(table.num_characters))):
        by_size.setdefault(len(chars), []).append(chars)
    theories = []
    for classes in class_options:
        classes = common.canonical_partition(classes)
        for chars in by_size.get(len(classes), []):
            values = supercharacter_values(table, chars, classes, cache)
            if values is not None:
                theories.append(SuperTheory(table.name, classes, chars, values))
    return TheorySet(table.name, theories)


def orbit_theory(table: CharacterTable, char_orbits: Partition, class_orbits: Partition) -> SuperTheory:
    return make_theory(table, char_orbits, class_orbits)


def conj_theory(table: CharacterTable) -> SuperTheory:
    if any(size != 1 for size in table.class_sizes):
        raise ArithmeticDomainError('The conjugation theory is only built for abelian groups ({}).'.format(
            table.name))
    row_index = {row: i for i, row in enumerate(table.rows)}
    conjugate_of = [row_index[tuple(v.conjugate() for v in row)] for row in table.rows]
    char_blocks = common.partition_from_labels([min(i, conjugate_of[i]) for i in range(table.num_characters)])
    class_blocks = common.partition_from_labels([min(j, table.inverse_map[j]) for j in range(table.num_classes)])
    return make_theory(table, char_blocks, class_blocks)


def join_theories(table: CharacterTable, first: SuperTheory, second: SuperTheory) -> SuperTheory:
    if first.group_name != second.group_name:
        raise ValueError('Cannot join theories of {} and {}.'.format(first.group_name, second.group_name))
    class_blocks = common.join_partitions(first.class_blocks, second.class_blocks)
    char_blocks = common.join_partitions(first.char_blocks, second.char_blocks)
    if not verify_sct(table, char_blocks, class_blocks):
        raise VerificationError('The join of two theories of {} is not a supercharacter theory.'.format(
            table.name))
    return SuperTheory(table.name, class_blocks, char_blocks,
                       supercharacter_values(table, char_blocks, class_blocks))


def is_invariant(theory: SuperTheory, class_orbits: Partition, char_orbits: Partition) -> bool:
    return (common.is_union_refinement(common.canonical_partition(class_orbits), theory.class_blocks) and
            common.is_union_refinement(common.canonical_partition(char_orbits), theory.char_blocks))


def orbit_structure_constants(constants: np.ndarray, orbits: Partition) -> np.ndarray:
    """Structure constants of the orbit sums: entry [a, b, c] is the coefficient of the first member
    of orbit c in (sum of orbit a) * (sum of orbit b)."""
    indicator = np.zeros((len(orbits), constants.shape[0]), dtype=np.int64)
    for a, orbit in enumerate(orbits):
        indicator[a, list(orbit)] = 1
    firsts = [orbit[0] for orbit in orbits]
    return np.einsum('ai,bj,ijc->abc', indicator, indicator, constants[:, :, firsts])


def enumerate_invariant_scts(table: CharacterTable, class_orbits: Partition, char_orbits: Partition,
                             config: Optional[Config] = None) -> TheorySet:
    config = config or default_config()
    class_orbits = common.canonical_partition(class_orbits)
    char_orbits = common.canonical_partition(char_orbits)
    if class_orbits[0] != (0,):
        raise ValueError('The identity must be an orbit by itself.')
    if len(class_orbits) - 1 > config.MAX_INVARIANT_ORBITS:
        raise BoundExceededError('{} nonidentity orbits on {}, more than the bound {}.'.format(
            len(class_orbits) - 1, table.name, config.MAX_INVARIANT_ORBITS))
    orbit_of = common.block_index_map(class_orbits)
    reduced = orbit_structure_constants(_table_constants(table), class_orbits)
    inverse = [orbit_of[table.inverse_map[orbit[0]]] for orbit in class_orbits]
    theories = []
    for orbit_blocks in SchurPartitionSearch(reduced, inverse).run(config):
        class_blocks = common.canonical_partition(
            [k for a in block for k in class_orbits[a]] for block in orbit_blocks)
        theory = theory_from_class_partition(table, class_blocks)
        if not is_invariant(theory, class_orbits, char_orbits):
            raise VerificationError('Theory {} of {} is not a union of character orbits.'.format(
                theory.key, table.name))
        theories.append(theory)
    config.get_logger().debug('{}: {} invariant theories'.format(table.name, len(theories)))
    return TheorySet(table.name, theories)
