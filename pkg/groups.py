import abc
from collections import Counter, deque
from functools import cached_property, reduce
from math import gcd
from typing import NamedTuple, Optional, List, Dict, Tuple, Iterable, Sequence, Hashable, FrozenSet

import numpy as np
import sympy

from common import common, BoundExceededError, GroupSpecError
from config import Config, default_config
from finite_fields import FiniteField, FFMatrix, ff_make
from group_spec import (NamedSpec, MatGroupSpec, SemidirectSpec, DirectSpec, WreathSpec,
                        parse_group_spec, spec_to_text, validate_named)

Element = Hashable


class ElementRepresentation(abc.ABC):
    """How the elements of a group are stored and multiplied."""

    @abc.abstractmethod
    def identity(self) -> Element:
        ...

    @abc.abstractmethod
    def multiply(self, a: Element, b: Element) -> Element:
        ...

    # can be overridden by the implementation representation class.
    def inverse(self, a: Element) -> Element:
        previous, power = self.identity(), a
        while power != self.identity():
            previous, power = power, self.multiply(power, a)
        return previous

    @abc.abstractmethod
    def describe(self) -> str:
        ...


class PermutationRepresentation(ElementRepresentation):
    """Permutations of 0..degree-1 as image tuples; (a*b)(i) = a(b(i))."""

    def __init__(self, degree: int):
        self.degree = degree

    def identity(self):
        return tuple(range(self.degree))

    def multiply(self, a, b):
        return tuple(a[i] for i in b)

    def inverse(self, a):
        result = [0] * self.degree
        for i, image in enumerate(a):
            result[image] = i
        return tuple(result)

    def describe(self):
        return 'permutations of {} points'.format(self.degree)


class MatrixRepresentation(ElementRepresentation):
    def __init__(self, field: FiniteField, n: int):
        self.field = field
        self.n = n
        self._identity = FFMatrix.identity(field, n)

    def identity(self):
        return self._identity

    def multiply(self, a, b):
        return a * b

    def inverse(self, a):
        return a.inverse()

    def describe(self):
        return '{}x{} matrices over {}'.format(self.n, self.n, self.field)


class VectorRepresentation(ElementRepresentation):
    """The additive group GF(q)^n, q prime."""

    def __init__(self, q: int, n: int):
        self.q = q
        self.n = n

    def identity(self):
        return (0,) * self.n

    def multiply(self, a, b):
        return tuple((x + y) % self.q for x, y in zip(a, b))

    def inverse(self, a):
        return tuple((-x) % self.q for x in a)

    def describe(self):
        return 'vectors of GF({})^{}'.format(self.q, self.n)


class MetacyclicRepresentation(ElementRepresentation):
    """Normal forms x^a y^b of <x, y | x^m, y^k = x^t, y x y^-1 = x^r>."""

    def __init__(self, m: int, k: int, r: int, t: int):
        self.m, self.k, self.r, self.t = m, k, r % m if m > 1 else 0, t % m if m > 1 else 0

    def identity(self):
        return (0, 0)

    def multiply(self, a, b):
        a1, b1 = a
        a2, b2 = b
        # y^b1 x^a2 = x^(a2 r^b1) y^b1
        exponent = a1 + a2 * pow(self.r, b1, self.m) if self.m > 1 else 0
        b = b1 + b2
        if b >= self.k:
            b -= self.k
            exponent += self.t
        return (exponent % self.m if self.m > 1 else 0, b)

    def describe(self):
        return 'metacyclic normal forms (m={}, k={}, r={}, t={})'.format(self.m, self.k, self.r, self.t)


class SemidirectRepresentation(ElementRepresentation):
    """Pairs (v, x) with (v, x)(w, y) = (v + x.w, xy)."""

    def __init__(self, q: int, n: int):
        self.q = q
        self.n = n
        self.field = ff_make(q)
        self._identity = ((0,) * n, FFMatrix.identity(self.field, n))

    def identity(self):
        return self._identity

    def multiply(self, a, b):
        v, x = a
        w, y = b
        xw = x.apply(w)
        return tuple((s + t) % self.q for s, t in zip(v, xw)), x * y

    def inverse(self, a):
        v, x = a
        x_inv = x.inverse()
        return tuple((-s) % self.q for s in x_inv.apply(v)), x_inv

    def describe(self):
        return 'GF({})^{} semidirect matrix pairs'.format(self.q, self.n)


class DirectRepresentation(ElementRepresentation):
    def __init__(self, left: ElementRepresentation, right: ElementRepresentation):
        self.left = left
        self.right = right

    def identity(self):
        return self.left.identity(), self.right.identity()

    def multiply(self, a, b):
        return self.left.multiply(a[0], b[0]), self.right.multiply(a[1], b[1])

    def inverse(self, a):
        return self.left.inverse(a[0]), self.right.inverse(a[1])

    def describe(self):
        return 'pairs ({}) x ({})'.format(self.left.describe(), self.right.describe())


class FiniteGroup:
    """A fully enumerated group. Element 0 is the identity; indices follow breadth-first
    closure from the generators in declared order."""

    def __init__(self, representation: ElementRepresentation, generators: Sequence[Element],
                 name: str = '', order_bound: Optional[int] = None):
        self.representation = representation
        self.name = name
        identity = representation.identity()
        self.elements: List[Element] = [identity]
        self.index: Dict[Element, int] = {identity: 0}
        gens = common.get_unique_list(g for g in generators if g != identity)
        self.generators: List[Element] = gens
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = representation.multiply(x, g)
                if y not in self.index:
                    self.index[y] = len(self.elements)
                    self.elements.append(y)
                    queue.append(y)
                    if order_bound is not None and len(self.elements) > order_bound:
                        raise BoundExceededError('Group `{}` exceeds the order bound {}.'.format(
                            name or representation.describe(), order_bound))
        self.order = len(self.elements)
        self.generator_indices: List[int] = [self.index[g] for g in gens]

    def multiply(self, i: int, j: int) -> int:
        return self.index[self.representation.multiply(self.elements[i], self.elements[j])]

    @cached_property
    def inverses(self) -> List[int]:
        result = [0] * self.order
        for i, x in enumerate(self.elements):
            if i == 0 or result[i]:
                continue
            j = self.index[self.representation.inverse(x)]
            result[i], result[j] = j, i
        return result

    def inverse(self, i: int) -> int:
        return self.inverses[i]

    def conjugate(self, i: int, by: int) -> int:
        """by^-1 * i * by"""
        return self.multiply(self.multiply(self.inverse(by), i), by)

    def power(self, i: int, e: int) -> int:
        if e < 0:
            i, e = self.inverse(i), -e
        result, base = 0, i
        while e:
            if e & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            e >>= 1
        return result

    def element_order(self, i: int) -> int:
        order, power = 1, i
        while power != 0:
            power = self.multiply(power, i)
            order += 1
        return order

    @cached_property
    def element_orders(self) -> List[int]:
        orders = [0] * self.order
        orders[0] = 1
        for i in range(1, self.order):
            if orders[i]:
                continue
            # walk the cyclic subgroup once and label every power
            powers = [i]
            while powers[-1] != 0:
                powers.append(self.multiply(powers[-1], i))
            n = len(powers)
            for e, x in enumerate(powers, start=1):
                if not orders[x]:
                    orders[x] = n // gcd(e, n)
        return orders

    @cached_property
    def exponent(self) -> int:
        return reduce(common.lcm, self.element_orders, 1)

    def is_abelian(self) -> bool:
        return all(self.multiply(a, b) == self.multiply(b, a)
                   for a in self.generator_indices for b in self.generator_indices)

    def closure_indices(self, generator_indices: Iterable[int], limit: Optional[int] = None) -> Optional[List[int]]:
        """Elements of the subgroup generated by the given elements, in BFS order.
        Returns None as soon as the subgroup is seen to exceed `limit` elements."""
        gens = [g for g in common.get_unique_list(generator_indices) if g != 0]
        members = [0]
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.multiply(x, g)
                if y not in seen:
                    seen.add(y)
                    members.append(y)
                    queue.append(y)
                    if limit is not None and len(members) > limit:
                        return None
        return members

    def subgroup(self, generator_indices: Iterable[int], name: str = '') -> 'FiniteGroup':
        gens = [self.elements[i] for i in generator_indices]
        return FiniteGroup(self.representation, gens, name=name or 'subgroup of {}'.format(self.name))

    def fingerprint(self) -> Tuple[int, Tuple[int, ...], Tuple[Tuple[int, int], ...]]:
        return (self.order, tuple(sorted(conjugacy_data(self).sizes)),
                tuple(sorted(Counter(self.element_orders).items())))

    @cached_property
    def conjugacy(self) -> 'ConjugacyData':
        return _compute_conjugacy_data(self)

    @cached_property
    def structure_constants(self) -> np.ndarray:
        return _compute_structure_constants(self, self.conjugacy)

    def __repr__(self):
        return 'FiniteGroup({}, order={})'.format(self.name or self.representation.describe(), self.order)


class ConjugacyData(NamedTuple):
    classes: Tuple[Tuple[int, ...], ...]
    representatives: Tuple[int, ...]
    sizes: Tuple[int, ...]
    centralizer_orders: Tuple[int, ...]
    element_orders: Tuple[int, ...]
    power_map: Dict[int, Tuple[int, ...]]
    inverse_map: Tuple[int, ...]
    class_of: Tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return len(self.classes)


def _compute_conjugacy_data(group: FiniteGroup) -> ConjugacyData:
    gens = group.generator_indices
    gen_inverses = [group.inverse(g) for g in gens]
    label = [-1] * group.order
    orbits = []
    for start in range(group.order):
        if label[start] >= 0:
            continue
        label[start] = len(orbits)
        orbit = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for g, g_inv in zip(gens, gen_inverses):
                y = group.multiply(group.multiply(g_inv, x), g)
                if label[y] < 0:
                    label[y] = label[start]
                    orbit.append(y)
                    queue.append(y)
        orbits.append(tuple(sorted(orbit)))
    orbits.sort(key=lambda cls: (len(cls), cls[0]))
    class_of = [0] * group.order
    for idx, cls in enumerate(orbits):
        for x in cls:
            class_of[x] = idx
    representatives = tuple(cls[0] for cls in orbits)
    sizes = tuple(len(cls) for cls in orbits)
    orders = tuple(group.element_orders[r] for r in representatives)
    exponent = reduce(common.lcm, orders, 1)
    primes = sympy.primefactors(exponent)
    power_map = {r: tuple(class_of[group.power(rep, r)] for rep in representatives) for r in primes}
    inverse_map = tuple(class_of[group.inverse(rep)] for rep in representatives)
    return ConjugacyData(
        classes=tuple(orbits), representatives=representatives, sizes=sizes,
        centralizer_orders=tuple(group.order // s for s in sizes), element_orders=orders,
        power_map=power_map, inverse_map=inverse_map, class_of=tuple(class_of))


def _compute_structure_constants(group: FiniteGroup, cd: ConjugacyData) -> np.ndarray:
    """c[j, k, l] = #{x in C_j : x^-1 z_l in C_k} for a fixed z_l in C_l, so C_j C_k = sum_l c[j,k,l] C_l."""
    r = cd.num_classes
    constants = np.zeros((r, r, r), dtype=np.int64)
    class_of = np.asarray(cd.class_of, dtype=np.int64)
    inverses = group.inverses
    for l, z in enumerate(cd.representatives):
        partner = np.fromiter((group.multiply(inverses[x], z) for x in range(group.order)),
                              dtype=np.int64, count=group.order)
        np.add.at(constants, (class_of, class_of[partner], l), 1)
    return constants


def conjugacy_data(group: FiniteGroup) -> ConjugacyData:
    return group.conjugacy


def class_structure_constants(group: FiniteGroup) -> np.ndarray:
    return group.structure_constants


def p_regular_classes(cd: ConjugacyData, p: int) -> FrozenSet[int]:
    return frozenset(i for i, order in enumerate(cd.element_orders) if order % p != 0)


class NormalStructure(NamedTuple):
    p: int
    normal_subgroups: Tuple[FrozenSet[int], ...]
    orders: Tuple[int, ...]
    o_p: FrozenSet[int]
    minimal_normal: Tuple[FrozenSet[int], ...]
    normal_p_complement: Optional[FrozenSet[int]]

    def order_of(self, class_set: FrozenSet[int], cd: ConjugacyData) -> int:
        return sum(cd.sizes[i] for i in class_set)

    def elements_of(self, class_set: FrozenSet[int], cd: ConjugacyData) -> List[int]:
        return sorted(x for i in class_set for x in cd.classes[i])


def _class_closure(constants: np.ndarray, seed: Iterable[int]) -> FrozenSet[int]:
    """Classes of the subgroup generated by a union of classes."""
    members = set(seed) | {0}
    while True:
        idx = sorted(members)
        products = constants[np.ix_(idx, idx)].sum(axis=(0, 1))
        grown = members | set(int(l) for l in np.nonzero(products)[0])
        if grown == members:
            return frozenset(members)
        members = grown


def normal_structure(group: FiniteGroup, p: int) -> NormalStructure:
    cd = conjugacy_data(group)
    constants = class_structure_constants(group)
    found = {_class_closure(constants, [i]) for i in range(cd.num_classes)}
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(found):
                joined = _class_closure(constants, a | b)
                if joined not in found and joined not in new:
                    new.add(joined)
        found |= new
        frontier = new

    def order(cs):
        return sum(cd.sizes[i] for i in cs)

    normals = tuple(sorted(found, key=lambda cs: (order(cs), sorted(cs))))
    p_subgroups = [cs for cs in normals if common.is_power_of(order(cs), p)]
    o_p = _class_closure(constants, set().union(*p_subgroups))
    trivial = frozenset([0])
    minimal = tuple(cs for cs in normals if cs != trivial
                    and not any(other != trivial and other != cs and other < cs for other in normals))
    complement_order = group.order // common.p_part(group.order, p)
    complement = next((cs for cs in normals if order(cs) == complement_order), None)
    return NormalStructure(p=p, normal_subgroups=normals, orders=tuple(order(cs) for cs in normals), o_p=o_p,
                           minimal_normal=minimal, normal_p_complement=complement)


def sylow_subgroup(group: FiniteGroup, p: int, reverse: bool = False) -> Tuple[List[int], List[int]]:
    """Greedy Sylow p-subgroup: scan p-elements in index order (or reversed) and keep each one
    whose adjunction still generates a p-group. Returns (element indices, generator indices)."""
    target = common.p_part(group.order, p)
    members = {0}
    gens: List[int] = []
    scan = range(group.order - 1, 0, -1) if reverse else range(1, group.order)
    for x in scan:
        if len(members) == target:
            break
        if x in members or not common.is_power_of(group.element_orders[x], p):
            continue
        candidate = group.closure_indices(gens + [x], limit=target)
        if candidate is not None and common.is_power_of(len(candidate), p):
            gens.append(x)
            members = set(candidate)
    return sorted(members), gens


def derived_subgroup_indices(group: FiniteGroup, member_gens: Sequence[int]) -> List[int]:
    """Commutator subgroup of the subgroup generated by `member_gens`."""
    commutators = []
    for a in member_gens:
        for b in member_gens:
            ab = group.multiply(a, b)
            ba = group.multiply(b, a)
            commutators.append(group.multiply(group.inverse(ba), ab))
    members = set(group.closure_indices(commutators))
    while True:
        conjugates = {group.conjugate(x, g) for x in members for g in member_gens}
        if conjugates <= members:
            return sorted(members)
        members = set(group.closure_indices(list(members | conjugates)))


def derived_series(group: FiniteGroup) -> List[int]:
    """Orders of G, G', G'', ... until the series stabilises."""
    orders = [group.order]
    gens = list(group.generator_indices)
    while True:
        members = derived_subgroup_indices(group, gens)
        if len(members) == orders[-1]:
            return orders
        orders.append(len(members))
        if len(members) == 1:
            return orders
        gens = small_generating_set(group, members)


def small_generating_set(group: FiniteGroup, members: Sequence[int]) -> List[int]:
    gens: List[int] = []
    span = {0}
    for x in sorted(members):
        if x not in span:
            gens.append(x)
            span = set(group.closure_indices(gens))
            if len(span) == len(members):
                break
    return gens


def is_solvable(group: FiniteGroup) -> bool:
    return derived_series(group)[-1] == 1


def _as_permutation_group(group: FiniteGroup) -> Tuple[int, List[Tuple[int, ...]]]:
    if isinstance(group.representation, PermutationRepresentation):
        return group.representation.degree, list(group.generators)
    # left regular representation
    perms = [tuple(group.multiply(g, x) for x in range(group.order)) for g in group.generator_indices]
    return group.order, perms


def _cycle(degree: int, points: Sequence[int]) -> Tuple[int, ...]:
    images = list(range(degree))
    for a, b in zip(points, list(points[1:]) + [points[0]]):
        images[a] = b
    return tuple(images)


def named_construction(kind: str, params: Sequence[int], config: Optional[Config] = None) -> FiniteGroup:
    config = config or default_config()
    spec = validate_named(kind, tuple(params))
    name = spec_to_text(spec)
    bound = config.ORDER_BOUND
    if kind == 'cyclic':
        n = params[0]
        return FiniteGroup(PermutationRepresentation(n), [_cycle(n, range(n))] if n > 1 else [], name, bound)
    if kind == 'elemab':
        q, k = params
        rep = VectorRepresentation(q, k)
        gens = [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
        return FiniteGroup(rep, gens, name, bound)
    if kind == 'sym':
        n = params[0]
        gens = []
        if n > 1:
            gens.append(_cycle(n, range(n)))
        if n > 2:
            gens.append(_cycle(n, [0, 1]))
        return FiniteGroup(PermutationRepresentation(n), gens, name, bound)
    if kind == 'extraspecial':
        field = ff_make(3)
        gens = [FFMatrix(field, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
                FFMatrix(field, [[1, 0, 0], [0, 1, 1], [0, 0, 1]])]
        return FiniteGroup(MatrixRepresentation(field, 3), gens, name, bound)
    if kind == 'dihedral':
        n = params[0] // 2
        return _metacyclic(n, 2, -1, 0, name, bound)
    if kind == 'quaternion':
        m = params[0] // 2
        return _metacyclic(m, 2, -1, m // 2, name, bound)
    if kind == 'semidihedral':
        m = params[0] // 2
        return _metacyclic(m, 2, m // 2 - 1, 0, name, bound)
    if kind == 'metacyclic':
        return _metacyclic(*params, name=name, bound=bound)
    raise GroupSpecError('Unknown construction `{}`.'.format(kind))


def _metacyclic(m: int, k: int, r: int, t: int, name: str, bound: int) -> FiniteGroup:
    rep = MetacyclicRepresentation(m, k, r, t)
    gens = []
    if m > 1:
        gens.append((1, 0))
    if k > 1:
        gens.append((0, 1))
    return FiniteGroup(rep, gens, name, bound)


def _matrices_over(field: FiniteField, matrices, n: int, where: str) -> List[FFMatrix]:
    result = []
    for m in matrices:
        if len(m) != n:
            raise GroupSpecError('{}: expected {}x{} generator matrices, got {}x{}.'.format(
                where, n, n, len(m), len(m)))
        matrix = FFMatrix(field, m)
        if not matrix.is_invertible():
            raise GroupSpecError('{}: generator {} is singular over {}.'.format(where, m, field))
        result.append(matrix)
    return result


def realize_group(spec, config: Optional[Config] = None) -> FiniteGroup:
    config = config or default_config()
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    name = spec_to_text(spec)
    bound = config.ORDER_BOUND
    if isinstance(spec, NamedSpec):
        return named_construction(spec.kind, spec.params, config)
    if isinstance(spec, MatGroupSpec):
        field = ff_make(spec.p)
        gens = _matrices_over(field, spec.source.load(), spec.n, name)
        return FiniteGroup(MatrixRepresentation(field, spec.n), gens, name, bound)
    if isinstance(spec, SemidirectSpec):
        q, n = spec.base.params
        field = ff_make(q)
        action = _matrices_over(field, spec.source.load(), n, name)
        rep = SemidirectRepresentation(q, n)
        identity_matrix = FFMatrix.identity(field, n)
        base_gens = [(tuple(1 if i == j else 0 for j in range(n)), identity_matrix) for i in range(n)]
        top_gens = [((0,) * n, a) for a in action]
        return FiniteGroup(rep, base_gens + top_gens, name, bound)
    if isinstance(spec, DirectSpec):
        left = realize_group(spec.left, config)
        right = realize_group(spec.right, config)
        rep = DirectRepresentation(left.representation, right.representation)
        gens = [(g, right.elements[0]) for g in left.generators] + [(left.elements[0], h) for h in right.generators]
        return FiniteGroup(rep, gens, name, bound)
    if isinstance(spec, WreathSpec):
        base = realize_group(spec.left, config)
        top = realize_group(spec.right, config)
        a, base_perms = _as_permutation_group(base)
        b, top_perms = _as_permutation_group(top)
        degree = a * b
        gens = []
        for perm in base_perms:
            # act on the first block only
            gens.append(tuple(perm[i] if i < a else i for i in range(degree)))
        for perm in top_perms:
            gens.append(tuple(perm[i // a] * a + i % a for i in range(degree)))
        return FiniteGroup(PermutationRepresentation(degree), gens, name, bound)
    raise TypeError('Not a group spec: {!r}'.format(spec))
