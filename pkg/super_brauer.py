"""
Super-Brauer character theories.

Brauer characters are only computed where they are determined by ordinary characters of a
normal subgroup: when G is a p-group (IBr(G) = {1}) and when G has a normal p-complement N.
In the second case IBr(G) is in bijection with the orbits of a Sylow p-subgroup P on Irr(N),
the Brauer character over an orbit restricting to N as the orbit sum.
"""
from typing import NamedTuple, Tuple, List, Optional, Iterable, FrozenSet

import numpy as np
import sympy

from common import (common, Partition, BoundExceededError, HypothesisError, UnsupportedModeError,
                    VerificationError)
from config import Config, default_config
from cyclotomics import Cyclotomic
from characters import CharacterTable, ClassFunction, character_table, abelian_dual
from groups import (FiniteGroup, NormalStructure, normal_structure, p_regular_classes, sylow_subgroup,
                    small_generating_set, is_solvable)
from module_actions import orbit_labels
from supercharacters import SuperTheory, enumerate_scts, enumerate_invariant_scts

P_GROUP = 'p_group'
NORMAL_P_COMPLEMENT = 'normal_p_complement'
UNSUPPORTED = 'unsupported'

ONE_THEORY_ROWS = {
    'trivial': '1',
    'order_two': 'Z_2, p odd',
    'e9_by_two_group': 'E_{3^2} x| P with P one of Z_8, Q_8, SD_16, p = 2',
    'fermat_frobenius': 'Z_q x| Z_{2^n}, q = 2^n + 1 a Fermat prime, p = 2',
    'mersenne': 'E_{2^n} x| Z_p, p = 2^n - 1 a Mersenne prime',
    'unmatched': 'no row matched',
}


class BrauerContext(NamedTuple):
    group: FiniteGroup
    p: int
    p_regular: Tuple[int, ...]
    mode: str
    structure: Optional[NormalStructure]
    complement: Optional[FiniteGroup]
    sylow: Tuple[int, ...]
    sylow_generators: Tuple[int, ...]

    @property
    def num_p_regular(self) -> int:
        return len(self.p_regular)

    @property
    def sylow_order(self) -> int:
        return len(self.sylow)

    def require_supported(self):
        if self.mode == UNSUPPORTED:
            raise UnsupportedModeError('{} at p = {} is neither a p-group nor has a normal p-complement.'.format(
                self.group.name, self.p))


def brauer_context(group: FiniteGroup, p: int, reverse: bool = False) -> BrauerContext:
    if not sympy.isprime(p):
        raise ValueError('{} is not a prime.'.format(p))
    cd = group.conjugacy
    regular = tuple(sorted(p_regular_classes(cd, p)))
    if common.is_power_of(group.order, p):
        return BrauerContext(group, p, regular, P_GROUP, None, None, tuple(range(group.order)),
                             tuple(group.generator_indices))
    structure = normal_structure(group, p)
    sylow, sylow_gens = sylow_subgroup(group, p, reverse=reverse)
    if structure.normal_p_complement is None:
        return BrauerContext(group, p, regular, UNSUPPORTED, structure, None, tuple(sylow), tuple(sylow_gens))
    members = structure.elements_of(structure.normal_p_complement, cd)
    complement = group.subgroup(small_generating_set(group, members),
                                name='O_{}\'({})'.format(p, group.name))
    return BrauerContext(group, p, regular, NORMAL_P_COMPLEMENT, structure, complement, tuple(sylow),
                         tuple(sylow_gens))


class IBrFamily(NamedTuple):
    """IBr(G) in normal-p-complement mode. Brauer character i lies over the P-orbit orbits[i] of
    Irr(N) (rows of `table`); values[i][c] is its value on the p-regular class ctx.p_regular[c]."""
    group_name: str
    p: int
    table: CharacterTable
    orbits: Partition
    class_orbits: Partition
    g_class_of_orbit: Tuple[int, ...]
    values: Tuple[Tuple[Cyclotomic, ...], ...]

    @property
    def num_characters(self) -> int:
        return len(self.orbits)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(int(row[0].to_rational()) for row in self.values)

    @property
    def constituent_degrees(self) -> Tuple[int, ...]:
        """theta(1) for the members of each orbit."""
        return tuple(self.table.degrees[orbit[0]] for orbit in self.orbits)

    def to_json(self) -> dict:
        return {'orbits': [list(o) for o in self.orbits], 'degrees': list(self.degrees),
                'values': [[v.to_json() for v in row] for row in self.values]}


def _complement_table(complement: FiniteGroup, config: Config) -> CharacterTable:
    if complement.order == 1 or (complement.is_abelian() and sympy.isprime(complement.exponent)):
        return abelian_dual(complement)
    return character_table(complement, config)


def _complement_class_of(ctx: BrauerContext, g: int) -> int:
    n = ctx.complement.index[ctx.group.elements[g]]
    return ctx.complement.conjugacy.class_of[n]


def green_ibr(ctx: BrauerContext, config: Optional[Config] = None) -> IBrFamily:
    config = config or default_config()
    if ctx.mode != NORMAL_P_COMPLEMENT:
        raise UnsupportedModeError('Green orbits need a normal p-complement; {} is in {} mode.'.format(
            ctx.group.name, ctx.mode))
    group, complement = ctx.group, ctx.complement
    table = _complement_table(complement, config)
    ncd = complement.conjugacy
    in_group = [group.index[x] for x in complement.elements]
    class_perms = []
    for x in ctx.sylow_generators:
        images = [_complement_class_of(ctx, group.conjugate(in_group[rep], x)) for rep in ncd.representatives]
        class_perms.append(np.array(images, dtype=np.int64))
    row_index = {row: i for i, row in enumerate(table.rows)}
    char_perms = []
    for perm in class_perms:
        try:
            images = [row_index[tuple(row[k] for k in perm)] for row in table.rows]
        except KeyError:
            raise VerificationError('Conjugating an irreducible character of {} did not give a row of its '
                                    'table.'.format(complement.name))
        char_perms.append(np.array(images, dtype=np.int64))
    class_orbits = common.partition_from_labels(orbit_labels(class_perms, ncd.num_classes).tolist())
    orbits = common.partition_from_labels(orbit_labels(char_perms, table.num_characters).tolist())
    if not len(orbits) == len(class_orbits) == ctx.num_p_regular:
        raise VerificationError('{}: {} character orbits, {} class orbits and {} p-regular classes.'.format(
            group.name, len(orbits), len(class_orbits), ctx.num_p_regular))

    orbit_of_class = common.block_index_map(class_orbits)
    cd = group.conjugacy
    g_class_of_orbit = [0] * len(class_orbits)
    for c in ctx.p_regular:
        g_class_of_orbit[orbit_of_class[_complement_class_of(ctx, cd.representatives[c])]] = c
    if sorted(g_class_of_orbit) != list(ctx.p_regular):
        raise VerificationError('{}: p-regular classes do not meet the complement in single orbits.'.format(
            group.name))
    values = []
    for orbit in orbits:
        row = []
        for c in ctx.p_regular:
            k = _complement_class_of(ctx, cd.representatives[c])
            row.append(sum((table.rows[theta][k] for theta in orbit[1:]), table.rows[orbit[0]][k]))
        values.append(tuple(row))
    config.get_logger().debug('{}: |IBr| = {} at p = {}'.format(group.name, len(orbits), ctx.p))
    return IBrFamily(group.name, ctx.p, table, orbits, class_orbits, tuple(g_class_of_orbit), tuple(values))


class SuperBrauerTheory(NamedTuple):
    """class_blocks partition the p-regular class indices of G; brauer_blocks partition IBr(G)
    (indices into the IBr family); values[X][K] is the witness character of X on K."""
    group_name: str
    p: int
    class_blocks: Partition
    brauer_blocks: Partition
    values: Tuple[Tuple[Cyclotomic, ...], ...]
    complement_class_blocks: Optional[Partition] = None

    @property
    def key(self) -> Tuple[Partition, Partition]:
        return self.class_blocks, self.brauer_blocks

    @property
    def num_blocks(self) -> int:
        return len(self.class_blocks)

    def to_json(self) -> dict:
        return {'class_blocks': [list(b) for b in self.class_blocks],
                'brauer_blocks': [list(b) for b in self.brauer_blocks],
                'values': [[v.to_json() for v in row] for row in self.values]}


def _check_blocks(ctx: BrauerContext, num_brauer: int, brauer_blocks: Partition, class_blocks: Partition):
    covered = sorted(c for block in class_blocks for c in block)
    if covered != list(ctx.p_regular):
        raise ValueError('{} does not partition the p-regular classes {} of {}.'.format(
            class_blocks, list(ctx.p_regular), ctx.group.name))
    try:
        common.check_partition(brauer_blocks, num_brauer)
    except ValueError as e:
        raise ValueError('Malformed partition of IBr({}): {}'.format(ctx.group.name, e))


def _witness_values(ctx: BrauerContext, family: IBrFamily, brauer_blocks: Partition,
                    class_blocks: Partition) -> Optional[Tuple[Tuple[Cyclotomic, ...], ...]]:
    """theta_X = sum of theta(1) phi over phi in X, theta(1) the degree of the constituents of phi on N.
    None when some theta_X is not constant on some block."""
    position = {c: i for i, c in enumerate(ctx.p_regular)}
    weights = family.constituent_degrees
    matrix = []
    for X in brauer_blocks:
        witness = []
        for i in range(ctx.num_p_regular):
            terms = [family.values[phi][i] * weights[phi] for phi in X]
            witness.append(sum(terms[1:], terms[0]))
        row = []
        for K in class_blocks:
            first = witness[position[K[0]]]
            if any(witness[position[c]] != first for c in K[1:]):
                return None
            row.append(first)
        matrix.append(tuple(row))
    return tuple(matrix)


def verify_super_brauer(ctx: BrauerContext, brauer_blocks: Iterable[Iterable[int]],
                        class_blocks: Iterable[Iterable[int]], family: Optional[IBrFamily] = None,
                        config: Optional[Config] = None) -> bool:
    ctx.require_supported()
    brauer_blocks = common.canonical_partition(brauer_blocks)
    class_blocks = common.canonical_partition(class_blocks)
    if ctx.mode == P_GROUP:
        _check_blocks(ctx, 1, brauer_blocks, class_blocks)
        return True
    family = family or green_ibr(ctx, config)
    _check_blocks(ctx, family.num_characters, brauer_blocks, class_blocks)
    if len(brauer_blocks) != len(class_blocks):
        return False
    if (0,) not in class_blocks:
        return False
    return _witness_values(ctx, family, brauer_blocks, class_blocks) is not None


def make_super_brauer_theory(ctx: BrauerContext, brauer_blocks: Iterable[Iterable[int]],
                             class_blocks: Iterable[Iterable[int]], family: Optional[IBrFamily] = None,
                             config: Optional[Config] = None) -> SuperBrauerTheory:
    brauer_blocks = common.canonical_partition(brauer_blocks)
    class_blocks = common.canonical_partition(class_blocks)
    if ctx.mode == NORMAL_P_COMPLEMENT:
        family = family or green_ibr(ctx, config)
    if not verify_super_brauer(ctx, brauer_blocks, class_blocks, family, config):
        raise VerificationError('({}, {}) is not a super-Brauer character theory of {} at p = {}.'.format(
            brauer_blocks, class_blocks, ctx.group.name, ctx.p))
    if ctx.mode == P_GROUP:
        values = ((Cyclotomic.one(),),)
    else:
        values = _witness_values(ctx, family, brauer_blocks, class_blocks)
    return SuperBrauerTheory(ctx.group.name, ctx.p, class_blocks, brauer_blocks, values)


def finest_brauer_theory(ctx: BrauerContext, family: Optional[IBrFamily] = None,
                         config: Optional[Config] = None) -> SuperBrauerTheory:
    """m(G°): singleton blocks."""
    return make_super_brauer_theory(ctx, [(i,) for i in range(ctx.num_p_regular)],
                                    [(c,) for c in ctx.p_regular], family, config)


def coarsest_brauer_theory(ctx: BrauerContext, family: Optional[IBrFamily] = None,
                           config: Optional[Config] = None) -> SuperBrauerTheory:
    """M(G°): {1} against everything else."""
    if ctx.num_p_regular == 1:
        return finest_brauer_theory(ctx, family, config)
    return make_super_brauer_theory(ctx, [(0,), range(1, ctx.num_p_regular)],
                                    [(0,), ctx.p_regular[1:]], family, config)


def phi_one_degree(ctx: BrauerContext) -> int:
    """Degree of the projective indecomposable character of the trivial Brauer character."""
    if ctx.mode == P_GROUP:
        return ctx.group.order
    if ctx.mode == NORMAL_P_COMPLEMENT:
        return ctx.sylow_order
    raise UnsupportedModeError('Phi_1(1) is only known for p-groups and groups with a normal p-complement '
                               '({} at p = {}).'.format(ctx.group.name, ctx.p))


def _brauer_class_function(ctx: BrauerContext, values: Iterable) -> ClassFunction:
    return ClassFunction(ctx.group.name, ctx.p_regular, tuple(Cyclotomic.from_rational(v) for v in values))


def regular_brauer_character(ctx: BrauerContext) -> ClassFunction:
    """The regular character restricted to G°."""
    return _brauer_class_function(ctx, [ctx.group.order] + [0] * (ctx.num_p_regular - 1))


def regular_quotient_character(ctx: BrauerContext, m_classes: Iterable[int]) -> ClassFunction:
    """The regular character of G/M inflated to G and restricted to G°."""
    m_classes = set(m_classes) | {0}
    m_order = sum(ctx.group.conjugacy.sizes[c] for c in m_classes)
    index = ctx.group.order // m_order
    return _brauer_class_function(ctx, [index if c in m_classes else 0 for c in ctx.p_regular])


def coarsest_supercharacters(ctx: BrauerContext) -> Tuple[ClassFunction, ClassFunction]:
    """Phi_1(1) 1 and rho_G° - Phi_1(1) 1."""
    phi_one = phi_one_degree(ctx)
    constant = _brauer_class_function(ctx, [phi_one] * ctx.num_p_regular)
    return constant, regular_brauer_character(ctx) - constant


class SuperBrauerCount(NamedTuple):
    group_name: str
    p: int
    mode: str
    p_regular_classes: int
    theories: Tuple[SuperBrauerTheory, ...]

    @property
    def count(self) -> int:
        return len(self.theories)

    def to_json(self) -> dict:
        return {'group': self.group_name, 'p': self.p, 'mode': self.mode,
                'p_regular_classes': self.p_regular_classes, 'super_brauer_count': self.count,
                'theories': [t.to_json() for t in self.theories]}


def transport_theory(ctx: BrauerContext, family: IBrFamily, theory: SuperTheory) -> SuperBrauerTheory:
    """Carry a P-invariant supercharacter theory of N to a super-Brauer theory of G: class blocks are
    read as unions of G-classes of N, character blocks through the orbit of each Brauer character."""
    orbit_of_class = common.block_index_map(family.class_orbits)
    orbit_of_char = common.block_index_map(family.orbits)
    class_blocks = [sorted({family.g_class_of_orbit[orbit_of_class[k]] for k in K}) for K in theory.class_blocks]
    brauer_blocks = [sorted({orbit_of_char[theta] for theta in X}) for X in theory.char_blocks]
    result = make_super_brauer_theory(ctx, brauer_blocks, class_blocks, family)
    return result._replace(complement_class_blocks=theory.class_blocks)


def transported_partitions_agree(family: IBrFamily, theories: Iterable[SuperBrauerTheory]) -> bool:
    """Every transported theory's complement class blocks are unions of P-orbits and map onto its
    G-class blocks."""
    orbit_of_class = common.block_index_map(family.class_orbits)
    for theory in theories:
        if theory.complement_class_blocks is None:
            continue
        for K in theory.complement_class_blocks:
            if any(not set(family.class_orbits[orbit_of_class[k]]) <= set(K) for k in K):
                return False
        image = common.canonical_partition({family.g_class_of_orbit[orbit_of_class[k]] for k in K}
                                           for K in theory.complement_class_blocks)
        if image != theory.class_blocks:
            return False
    return True


def count_super_brauer(ctx: BrauerContext, family: Optional[IBrFamily] = None,
                       config: Optional[Config] = None) -> SuperBrauerCount:
    config = config or default_config()
    ctx.require_supported()
    if ctx.mode == P_GROUP:
        theories = [finest_brauer_theory(ctx, config=config)]
    else:
        family = family or green_ibr(ctx, config)
        if ctx.sylow_order == 1:
            # p does not divide |G|: G° = G and IBr(G) = Irr(G)
            complement_theories = enumerate_scts(family.table, config)
        else:
            complement_theories = enumerate_invariant_scts(family.table, family.class_orbits, family.orbits, config)
        theories = [transport_theory(ctx, family, t) for t in complement_theories]
        theories.sort(key=lambda t: t.key)
    config.get_logger().debug('{} at p = {}: {} super-Brauer theories'.format(ctx.group.name, ctx.p, len(theories)))
    return SuperBrauerCount(ctx.group.name, ctx.p, ctx.mode, ctx.num_p_regular, tuple(theories))


def minimal_normal_in_p_regular(ctx: BrauerContext) -> List[FrozenSet[int]]:
    """Minimal normal subgroups M (as class sets) with M < G°."""
    if ctx.structure is None:
        return []
    regular = set(ctx.p_regular)
    return [m for m in ctx.structure.minimal_normal if m <= regular and m != regular]


def _quotient_kernel(ctx: BrauerContext, family: IBrFamily, m_classes: FrozenSet[int]) -> List[int]:
    """IBr(G/M) inflated to G: the Brauer characters constant on M."""
    positions = [i for i, c in enumerate(ctx.p_regular) if c in m_classes]
    return [phi for phi in range(family.num_characters)
            if all(family.values[phi][i] == family.values[phi][0] for i in positions)]


def _three_block_witnesses(ctx: BrauerContext, m_classes: FrozenSet[int]) -> Tuple[ClassFunction, ...]:
    constant, _ = coarsest_supercharacters(ctx)
    quotient = regular_quotient_character(ctx, m_classes)
    return constant, quotient - constant, regular_brauer_character(ctx) - quotient


def _check_m_classes(ctx: BrauerContext, m_classes: Iterable[int]) -> FrozenSet[int]:
    if ctx.mode != NORMAL_P_COMPLEMENT:
        raise UnsupportedModeError('The three-block theory needs a normal p-complement ({} at p = {}).'.format(
            ctx.group.name, ctx.p))
    m_classes = frozenset(m_classes) | {0}
    if m_classes not in ctx.structure.minimal_normal:
        raise ValueError('Classes {} of {} do not form a minimal normal subgroup.'.format(
            sorted(m_classes), ctx.group.name))
    regular = set(ctx.p_regular)
    if not m_classes <= regular or m_classes == regular:
        raise ValueError('M must be a proper subgroup of the p-regular elements of {}.'.format(ctx.group.name))
    return m_classes


def three_block_theory(ctx: BrauerContext, m_classes: Iterable[int], family: Optional[IBrFamily] = None,
                       config: Optional[Config] = None) -> SuperBrauerTheory:
    """The theory with class blocks {1}, M - {1}, G° - M and Brauer blocks {1}, IBr(G/M) - {1},
    IBr(G) - IBr(G/M). Values are those of the witnesses Phi_1(1) 1, rho_{G/M}° - Phi_1(1) 1 and
    rho_G° - rho_{G/M}°, read off the class functions and checked constant on every class block."""
    m_classes = _check_m_classes(ctx, m_classes)
    family = family or green_ibr(ctx, config)
    kernel = _quotient_kernel(ctx, family, m_classes)
    regular = set(ctx.p_regular)
    class_blocks = [(0,), sorted(m_classes - {0}), sorted(regular - m_classes)]
    brauer_blocks = [(0,), [phi for phi in kernel if phi != 0],
                     [phi for phi in range(family.num_characters) if phi not in kernel]]
    theory = make_super_brauer_theory(ctx, brauer_blocks, class_blocks, family, config)

    witness_of = {tuple(sorted(block)): witness
                  for block, witness in zip(brauer_blocks, _three_block_witnesses(ctx, m_classes))}
    values = []
    for block in theory.brauer_blocks:
        witness = witness_of[block]
        for class_block in theory.class_blocks:
            if not witness.is_constant_on(class_block):
                raise VerificationError('The witness of {} is not constant on the classes {} of {}.'.format(
                    list(block), list(class_block), ctx.group.name))
        values.append(tuple(witness.value_at(class_block[0]) for class_block in theory.class_blocks))
    return theory._replace(values=tuple(values))


def three_block_rows(ctx: BrauerContext, theory: SuperBrauerTheory, m_classes: Iterable[int],
                     family: Optional[IBrFamily] = None,
                     config: Optional[Config] = None) -> Tuple[Tuple[Cyclotomic, ...], ...]:
    """Values of a three-block theory with rows {1}, IBr(G/M) - {1}, IBr(G) - IBr(G/M) and columns
    {1}, M - {1}, G° - M."""
    m_classes = _check_m_classes(ctx, m_classes)
    family = family or green_ibr(ctx, config)
    kernel = set(_quotient_kernel(ctx, family, m_classes))
    non_trivial = min(m_classes - {0})
    outside = min(set(ctx.p_regular) - m_classes)
    block_of = common.block_index_map(theory.class_blocks)
    columns = [block_of[c] for c in (0, non_trivial, outside)]
    row_of = {}
    for x, block in enumerate(theory.brauer_blocks):
        if block == (0,):
            row_of[0] = x
        elif set(block) <= kernel:
            row_of[1] = x
        else:
            row_of[2] = x
    return tuple(tuple(theory.values[row_of[r]][k] for k in columns) for r in range(3))


class OneTheoryResult(NamedTuple):
    holds: bool
    row: str
    p_regular_classes: int

    def to_json(self) -> dict:
        return {'holds': self.holds, 'row': self.row, 'description': ONE_THEORY_ROWS.get(self.row, ''),
                'p_regular_classes': self.p_regular_classes}


def _one_theory_row(p: int, quotient_order: int, regular_element_order: int) -> str:
    """Match G/O_p(G) = V x| P against the families with a single super-Brauer theory. |V| is the
    p'-part of the quotient order and every nonidentity p-regular element has regular_element_order."""
    if quotient_order == 1:
        return 'trivial'
    p_order = common.p_part(quotient_order, p)
    v_order = quotient_order // p_order
    r = regular_element_order
    if not sympy.isprime(r) or not common.is_power_of(v_order, r):
        return 'unmatched'
    if p != 2 and v_order == 2 and p_order == 1:
        return 'order_two'
    if p == 2 and v_order == 9 and p_order in (8, 16):
        return 'e9_by_two_group'
    if p == 2 and v_order == r and p_order == r - 1:
        return 'fermat_frobenius'
    if r == 2 and p_order == p and p == v_order - 1:
        return 'mersenne'
    return 'unmatched'


def _o_p_order(group: FiniteGroup, structure: Optional[NormalStructure]) -> int:
    if structure is None:
        return group.order
    return structure.order_of(structure.o_p, group.conjugacy)


def classify_one(group: FiniteGroup, p: int, config: Optional[Config] = None) -> OneTheoryResult:
    """At most two p-regular classes, and the matching family of G/O_p(G)."""
    ctx = brauer_context(group, p)
    if ctx.num_p_regular > 2:
        return OneTheoryResult(False, 'none', ctx.num_p_regular)
    quotient_order = group.order // _o_p_order(group, ctx.structure)
    element_order = group.conjugacy.element_orders[ctx.p_regular[-1]]
    row = _one_theory_row(p, quotient_order, element_order)
    if row == 'unmatched':
        (config or default_config()).warn('{} has {} p-regular classes at p = {} but G/O_p(G) of order {} '
                                          'matches no family.'.format(group.name, ctx.num_p_regular, p,
                                                                      quotient_order))
    return OneTheoryResult(True, row, ctx.num_p_regular)


class TwoTheoryResult(NamedTuple):
    holds: bool
    reason: str
    p_regular_classes: int
    invariant_theories: Optional[int]

    def to_json(self) -> dict:
        return {'holds': self.holds, 'reason': self.reason, 'p_regular_classes': self.p_regular_classes,
                'invariant_theories': self.invariant_theories}


def classify_two(group: FiniteGroup, p: int, config: Optional[Config] = None) -> TwoTheoryResult:
    """Exactly two super-Brauer theories for p-solvable G with O_p(G) = 1: three p-regular classes, or a
    normal p-complement that is minimal normal with two P-invariant theories."""
    config = config or default_config()
    if group.order % p == 0 and not is_solvable(group):
        raise HypothesisError('{} is not certified p-solvable for p = {}.'.format(group.name, p))
    ctx = brauer_context(group, p)
    if ctx.mode == P_GROUP:
        if group.order > 1:
            raise HypothesisError('O_{}({}) is the whole group.'.format(p, group.name))
    elif ctx.structure.o_p != frozenset([0]):
        raise HypothesisError('O_{}({}) is nontrivial.'.format(p, group.name))

    count = None
    if ctx.mode != UNSUPPORTED:
        try:
            count = count_super_brauer(ctx, config=config).count
        except BoundExceededError as e:
            config.warn('{}: no cross-check of the two-theory classification ({})'.format(group.name, e))

    if ctx.num_p_regular == 3:
        result = TwoTheoryResult(True, 'three_p_regular_classes', 3, count)
    elif ctx.mode != NORMAL_P_COMPLEMENT:
        result = TwoTheoryResult(False, 'no_normal_p_complement', ctx.num_p_regular, count)
    elif count is None:
        raise BoundExceededError('Cannot count the invariant theories of the normal {}-complement of {}.'.format(
            p, group.name))
    elif count != 2:
        result = TwoTheoryResult(False, 'invariant_theories', ctx.num_p_regular, count)
    elif ctx.structure.normal_p_complement in ctx.structure.minimal_normal:
        result = TwoTheoryResult(True, 'minimal_normal_complement', ctx.num_p_regular, count)
    else:
        config.warn('{}: the normal {}-complement has two invariant theories but is not minimal normal.'.format(
            group.name, p))
        result = TwoTheoryResult(False, 'complement_not_minimal', ctx.num_p_regular, count)

    if count is not None and result.reason != 'complement_not_minimal' and (count == 2) != result.holds:
        raise VerificationError('{} at p = {}: classification says {} but there are {} super-Brauer '
                                'theories.'.format(group.name, p, result.holds, count))
    return result
