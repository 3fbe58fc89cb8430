import numpy as np
import pytest

from common import ArithmeticDomainError, BoundExceededError
from finite_fields import ff_make
from module_actions import (encode_vector, decode_vector, orbit_labels, LinearAction, brauer_permutation_check,
                            conjugation_fusion, action_orbit_theory, invariant_theories, semilinear_group,
                            semilinear_subgroup, block_permutation_matrix, block_diagonal,
                            wreath_matrix_generators, DirectSumDecomposition, weight_theory,
                            weight_partitions, weight_sigma_value, rho_star_value, three_invariant_case)

Z4_ON_F9 = [[[0, 2], [1, 0]]]


@pytest.mark.unit
def test_vector_codes():
    assert encode_vector((1, 2), 3) == 7
    assert decode_vector(7, 3, 2) == (1, 2)
    assert encode_vector((-1, 0), 5) == 4


@pytest.mark.unit
def test_orbit_labels_of_a_cycle():
    cycle = np.array([1, 2, 0, 3], dtype=np.int64)
    labels = orbit_labels([cycle], 4)
    assert labels[0] == labels[1] == labels[2]
    assert labels[3] != labels[0]


@pytest.mark.unit
def test_fixed_point_free_action_of_order_four(config):
    action = LinearAction(3, Z4_ON_F9, config=config)
    assert action.order == 4
    assert action.orbit_decomposition.sizes == [1, 4, 4]
    assert action.orbit_decomposition.dual_sizes == [1, 4, 4]
    assert brauer_permutation_check(action)
    assert conjugation_fusion(action)
    assert action_orbit_theory(action).num_blocks == 3
    assert len(invariant_theories(action)) == 2
    assert three_invariant_case(action) == 'ternary_plane'


@pytest.mark.unit
def test_conjugation_fusion_fails_without_minus_one(config):
    action = LinearAction(7, [[[2]]], config=config)
    assert action.orbit_decomposition.sizes == [1, 3, 3]
    assert not conjugation_fusion(action)
    assert len(invariant_theories(action)) == 2
    assert three_invariant_case(action) == 'prime_line_sylow'


@pytest.mark.unit
def test_brauer_check_needs_coprime_order(config):
    action = LinearAction(3, [[[1, 1], [0, 1]]], config=config)
    with pytest.raises(ArithmeticDomainError):
        brauer_permutation_check(action)


@pytest.mark.unit
def test_invalid_actions(config):
    with pytest.raises(ArithmeticDomainError):
        LinearAction(3, [[[1, 1], [1, 1]]], config=config)
    with pytest.raises(ValueError):
        LinearAction(3, [], config=config)
    config.MAX_VECTORS = 100
    with pytest.raises(BoundExceededError):
        LinearAction(3, [[[1] + [0] * 4, [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]],
                     config=config)


@pytest.mark.unit
@pytest.mark.parametrize("text", ['3:[[[0,2],[1,0]]]', 'semidirect(elemab:3^2,[[[0,2],[1,0]]])'])
def test_actions_from_text(text, config):
    action = LinearAction.from_text(text, config=config)
    assert (action.q, action.n, action.order) == (3, 2, 4)


@pytest.mark.unit
def test_semilinear_group(config):
    gamma = semilinear_group(3, 2, config)
    assert gamma.order == 16
    assert gamma.multiplier_order == 8
    assert gamma.action.orbit_decomposition.sizes == [1, 8]
    assert gamma.word(8, 0) == gamma.word(0, 2)


@pytest.mark.unit
@pytest.mark.parametrize("words, order", [([[3, 0]], 16), ([[6, 0], [3, 1]], 16), ([[3, 0], [0, 1]], 32)])
def test_two_groups_in_the_semilinear_group_of_49(words, order, config):
    action = semilinear_subgroup(7, 2, words, config=config)
    assert action.order == order
    assert action.orbit_decomposition.sizes == [1, 16, 16, 16]
    assert brauer_permutation_check(action)
    assert three_invariant_case(action) == 'septenary_plane'


@pytest.mark.unit
def test_block_matrices():
    field = ff_make(2)
    shift = block_permutation_matrix(field, 2, 3)
    assert shift.multiplicative_order() == 3
    diagonal = block_diagonal(field, [[[0, 1], [1, 1]], [[1]]])
    assert diagonal.to_json() == [[0, 1, 0], [1, 1, 0], [0, 0, 1]]


@pytest.mark.unit
def test_wreath_product_on_sixty_four_vectors(config):
    action = LinearAction(2, wreath_matrix_generators(2, [[[0, 1], [1, 1]]], 3), config=config)
    assert action.order == 81
    assert action.orbit_decomposition.sizes == [1, 9, 27, 27]


@pytest.mark.unit
@pytest.mark.parametrize("q, m, summands", [(3, 1, 2), (5, 1, 2), (2, 2, 3)])
def test_weight_theory(q, m, summands):
    d = DirectSumDecomposition(q, m, summands)
    theory = weight_theory(d)
    assert theory.num_blocks == summands + 1


@pytest.mark.unit
@pytest.mark.parametrize("q, m, summands", [(3, 1, 2), (5, 1, 2), (2, 2, 3), (3, 1, 3)])
def test_weight_supercharacters_match_the_subset_sums(q, m, summands):
    d = DirectSumDecomposition(q, m, summands)
    space, char_blocks, class_blocks = weight_partitions(d)
    table = space.table
    assert weight_theory(d).key == (class_blocks, char_blocks)
    for X in char_blocks:
        i = d.weight(table.labels[X[0]])
        assert all(d.weight(table.labels[chi]) == i for chi in X)
        sigma = [sum((table.rows[chi][c] for chi in X[1:]), table.rows[X[0]][c]) for c in range(table.num_classes)]
        for c, vector in enumerate(table.coordinates):
            assert sigma[c] == weight_sigma_value(d, i, d.support(vector))
        for K in class_blocks:
            assert len({sigma[c] for c in K}) == 1
            assert len({d.weight(table.coordinates[c]) for c in K}) == 1


@pytest.mark.unit
def test_weight_sigma_values():
    d = DirectSumDecomposition(2, 2, 3)
    # sigma_1 on a weight-one vector: (-1) + 3 + 3
    assert weight_sigma_value(d, 1, (0,)) == 5
    assert weight_sigma_value(d, 3, ()) == 27
    with pytest.raises(ValueError):
        weight_theory(DirectSumDecomposition(2, 1, 4))


@pytest.mark.unit
def test_rho_star_values():
    assert rho_star_value([0, 1], [], 4) == 9
    assert rho_star_value([0, 1], [1], 4) == -3
    assert rho_star_value([0, 1], [0, 1, 2], 4) == 1
