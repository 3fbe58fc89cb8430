import pytest

from common import BoundExceededError, GroupSpecError
from groups import (realize_group, named_construction, normal_structure, sylow_subgroup, derived_series,
                    is_solvable, p_regular_classes, small_generating_set)


def group(text, config=None):
    return realize_group(text, config)


@pytest.mark.unit
@pytest.mark.parametrize("text, order, classes", [
    ('cyclic:1', 1, 1),
    ('cyclic:6', 6, 6),
    ('sym:3', 6, 3),
    ('sym:4', 24, 5),
    ('dihedral:8', 8, 5),
    ('quaternion:8', 8, 5),
    ('semidihedral:16', 16, 7),
    ('extraspecial:27+', 27, 11),
    ('elemab:3^2', 9, 9),
    ('metacyclic:15,2,-1,0', 30, 9),
    ('direct(cyclic:2,cyclic:3)', 6, 6),
    ('wreath(cyclic:2,cyclic:2)', 8, 5),
    ('semidirect(elemab:3^2,[[[0,2],[1,0]]])', 36, 6),
    ('matgroup(3,2,[[[0,2],[1,0]],[[1,1],[0,1]]])', 24, 7),
])
def test_orders_and_class_counts(text, order, classes):
    g = group(text)
    assert g.order == order
    assert g.conjugacy.num_classes == classes
    assert sum(g.conjugacy.sizes) == order


@pytest.mark.unit
def test_quaternion_and_dihedral_are_told_apart():
    q8, d8 = group('quaternion:8'), group('dihedral:8')
    assert q8.fingerprint() != d8.fingerprint()
    assert q8.element_orders.count(2) == 1
    assert d8.element_orders.count(2) == 5


@pytest.mark.unit
def test_exponents():
    assert group('extraspecial:27+').exponent == 3
    assert group('semidihedral:16').exponent == 8
    assert group('sym:4').exponent == 12


@pytest.mark.unit
def test_structure_constants_count_class_members():
    g = group('sym:4')
    cd = g.conjugacy
    constants = g.structure_constants
    for j in range(cd.num_classes):
        for l in range(cd.num_classes):
            assert constants[j, :, l].sum() == cd.sizes[j]


@pytest.mark.unit
def test_inverse_and_power_maps():
    g = group('cyclic:5')
    cd = g.conjugacy
    assert cd.inverse_map[0] == 0
    assert all(cd.power_map[5][c] == 0 for c in range(cd.num_classes))
    assert sorted(cd.inverse_map) == list(range(5))


@pytest.mark.unit
@pytest.mark.parametrize("text, primes", [
    ('cyclic:1', []),
    ('cyclic:5', [5]),
    ('sym:4', [2, 3]),
    ('semidihedral:16', [2]),
    ('metacyclic:15,2,-1,0', [2, 3, 5]),
])
def test_power_maps_cover_the_primes_of_the_exponent(text, primes):
    assert sorted(group(text).conjugacy.power_map) == primes


@pytest.mark.unit
@pytest.mark.parametrize("text, r", [('metacyclic:5,4,2,0', 2), ('metacyclic:7,3,2,0', 2)])
def test_metacyclic_generator_conjugates_x_to_its_rth_power(text, r):
    g = group(text)
    x, y = g.index[(1, 0)], g.index[(0, 1)]
    y_inv = g.inverse(y)
    assert g.multiply(g.multiply(y, x), y_inv) == g.power(x, r)
    assert g.multiply(g.multiply(y_inv, x), y) != g.power(x, r)


@pytest.mark.unit
def test_order_bound(config):
    config.ORDER_BOUND = 10
    with pytest.raises(BoundExceededError):
        named_construction('sym', (4,), config)


@pytest.mark.unit
def test_singular_generators_are_rejected():
    with pytest.raises(GroupSpecError):
        group('matgroup(3,2,[[[1,1],[1,1]]])')


@pytest.mark.unit
def test_normal_structure_of_sym3():
    g = group('sym:3')
    at_three = normal_structure(g, 3)
    assert at_three.normal_p_complement is None
    assert at_three.order_of(at_three.o_p, g.conjugacy) == 3
    at_two = normal_structure(g, 2)
    assert at_two.order_of(at_two.normal_p_complement, g.conjugacy) == 3
    assert at_two.o_p == frozenset([0])
    assert len(at_two.minimal_normal) == 1


@pytest.mark.unit
@pytest.mark.parametrize("reverse", [False, True])
def test_sylow_subgroups_of_sym4(reverse):
    g = group('sym:4')
    members, gens = sylow_subgroup(g, 2, reverse=reverse)
    assert len(members) == 8
    assert len(g.closure_indices(gens)) == 8
    assert len(sylow_subgroup(g, 3, reverse=reverse)[0]) == 3


@pytest.mark.unit
def test_small_generating_set_spans():
    g = group('sym:4')
    members = sylow_subgroup(g, 2)[0]
    gens = small_generating_set(g, members)
    assert sorted(g.closure_indices(gens)) == members


@pytest.mark.unit
def test_p_regular_classes():
    cd = group('sym:4').conjugacy
    assert len(p_regular_classes(cd, 2)) == 2
    assert len(p_regular_classes(cd, 3)) == 4


@pytest.mark.slow
def test_solvability():
    assert derived_series(group('sym:4')) == [24, 12, 4, 1]
    assert is_solvable(group('matgroup(3,2,[[[0,2],[1,0]],[[1,1],[0,1]]])'))
    assert not is_solvable(group('sym:5'))
