import pytest

from common import HypothesisError, UnsupportedModeError
from group_spec import semidirect_spec
from groups import realize_group
from module_actions import semilinear_subgroup
from table_data import load_instances
from super_brauer import (P_GROUP, NORMAL_P_COMPLEMENT, UNSUPPORTED, brauer_context, green_ibr,
                          count_super_brauer, verify_super_brauer, finest_brauer_theory, coarsest_brauer_theory,
                          phi_one_degree, regular_brauer_character, regular_quotient_character, coarsest_supercharacters,
                          minimal_normal_in_p_regular, three_block_theory, three_block_rows, classify_one, classify_two,
                          transported_partitions_agree, _one_theory_row)


def group(text, config):
    g = realize_group(text, config)
    g.name = text
    return g


def semilinear_semidirect(q, n, words, config):
    action = semilinear_subgroup(q, n, words, config=config)
    return realize_group(semidirect_spec(q, n, [g.to_json() for g in action.generators]), config)


@pytest.mark.unit
def test_p_group_mode(config):
    ctx = brauer_context(group('dihedral:8', config), 2)
    assert ctx.mode == P_GROUP
    assert ctx.num_p_regular == 1
    assert phi_one_degree(ctx) == 8
    assert count_super_brauer(ctx, config=config).count == 1


@pytest.mark.unit
def test_modes_of_sym3(config):
    g = group('sym:3', config)
    assert brauer_context(g, 2).mode == NORMAL_P_COMPLEMENT
    at_three = brauer_context(g, 3)
    assert at_three.mode == UNSUPPORTED
    assert at_three.num_p_regular == 2
    with pytest.raises(UnsupportedModeError):
        count_super_brauer(at_three, config=config)
    with pytest.raises(UnsupportedModeError):
        phi_one_degree(at_three)


@pytest.mark.unit
def test_prime_is_checked(config):
    with pytest.raises(ValueError):
        brauer_context(group('sym:3', config), 4)


@pytest.mark.unit
def test_green_orbits_of_sym3(config):
    ctx = brauer_context(group('sym:3', config), 2)
    family = green_ibr(ctx, config)
    assert family.num_characters == 2
    assert sorted(family.degrees) == [1, 2]
    assert phi_one_degree(ctx) == 2
    assert count_super_brauer(ctx, family, config).count == 1


@pytest.mark.unit
@pytest.mark.parametrize("text, p, regular, count", [
    ('cyclic:2', 3, 2, 1),
    ('cyclic:3', 2, 3, 2),
    ('sym:3', 5, 3, 2),
    ('metacyclic:5,2,-1,0', 2, 3, 2),
    ('dihedral:14', 2, 4, 2),
    ('metacyclic:11,2,-1,0', 2, 6, 2),
    ('metacyclic:13,4,5,0', 2, 4, 2),
    ('metacyclic:13,3,3,0', 3, 5, 3),
    ('metacyclic:5,4,2,0', 2, 2, 1),
])
def test_counts(text, p, regular, count, config):
    g = group(text, config)
    ctx = brauer_context(g, p)
    result = count_super_brauer(ctx, config=config)
    assert result.p_regular_classes == regular
    assert result.count == count
    assert (regular <= 2) == (count == 1)
    reversed_ctx = brauer_context(g, p, reverse=True)
    assert count_super_brauer(reversed_ctx, config=config).count == count
    if ctx.mode == NORMAL_P_COMPLEMENT:
        assert transported_partitions_agree(green_ibr(ctx, config), result.theories)


@pytest.mark.unit
def test_json_document(config):
    result = count_super_brauer(brauer_context(group('dihedral:14', config), 2), config=config)
    document = result.to_json()
    assert document['group'] == 'dihedral:14'
    assert document['super_brauer_count'] == 2
    assert document['p_regular_classes'] == 4
    assert len(document['theories']) == 2


@pytest.mark.unit
def test_finest_and_coarsest_theories(config):
    ctx = brauer_context(group('dihedral:14', config), 2)
    finest, coarsest = finest_brauer_theory(ctx, config=config), coarsest_brauer_theory(ctx, config=config)
    assert finest.num_blocks == 4
    assert coarsest.num_blocks == 2
    theories = count_super_brauer(ctx, config=config).theories
    assert {t.key for t in theories} == {finest.key, coarsest.key}


@pytest.mark.unit
def test_identity_must_be_a_block(config):
    ctx = brauer_context(group('dihedral:14', config), 2)
    regular = list(ctx.p_regular)
    assert not verify_super_brauer(ctx, [(0, 1), (2, 3)], [regular[:2], regular[2:]], config=config)


@pytest.mark.unit
def test_coarsest_supercharacters_are_constant(config):
    ctx = brauer_context(group('metacyclic:13,4,5,0', config), 2)
    rho = regular_brauer_character(ctx)
    assert rho.values[0] == 52
    constant, rest = coarsest_supercharacters(ctx)
    assert all(v == 4 for v in constant.values)
    assert rest.values[0] == 48
    assert all(v == -4 for v in rest.values[1:])


@pytest.mark.unit
def test_three_block_theory(config):
    ctx = brauer_context(group('metacyclic:15,2,-1,0', config), 2)
    cd = ctx.group.conjugacy
    by_order = {sum(cd.sizes[c] for c in m): m for m in minimal_normal_in_p_regular(ctx)}
    assert sorted(by_order) == [3, 5]
    expected = {3: (20, -10, 0), 5: (24, -6, 0)}
    for order, m in by_order.items():
        theory = three_block_theory(ctx, m, config=config)
        assert theory.num_blocks == 3
        rows = three_block_rows(ctx, theory, m, config=config)
        assert rows[0] == (2, 2, 2)
        assert rows[1] == (30 // order - 2, 30 // order - 2, -2)
        assert rows[2] == expected[order]
        quotient = regular_quotient_character(ctx, m)
        assert quotient.is_constant_on(m)
        assert quotient.value_at(0) == 30 // order
        assert sum(1 for v in quotient.values if v == 0) == ctx.num_p_regular - len(m)
    assert count_super_brauer(ctx, config=config).count >= 3
    with pytest.raises(ValueError):
        three_block_theory(ctx, ctx.structure.normal_p_complement, config=config)


@pytest.mark.unit
def test_three_block_values_follow_the_witness_characters(config):
    record = next(r for r in load_instances(config) if r.family == 'three_block')
    ctx = brauer_context(realize_group(record.group['spec'], config), record.p)
    family = green_ibr(ctx, config)
    cd = ctx.group.conjugacy
    by_order = {sum(cd.sizes[c] for c in m): m for m in minimal_normal_in_p_regular(ctx)}
    constant, _ = coarsest_supercharacters(ctx)
    for item in record.expected['minimal_normal']:
        m = by_order[item['order']]
        theory = three_block_theory(ctx, m, family, config)
        quotient = regular_quotient_character(ctx, m)
        witnesses = [constant, quotient - constant, regular_brauer_character(ctx) - quotient]
        rows = three_block_rows(ctx, theory, m, family, config)
        assert list(rows[2]) == item['values']
        assert quotient.value_at(0) == item['index']
        outside = min(set(ctx.p_regular) - m)
        for witness, row in zip(witnesses, rows):
            for block in theory.class_blocks:
                assert witness.is_constant_on(block)
            assert row == (witness.value_at(0), witness.value_at(min(m - {0})), witness.value_at(outside))


@pytest.mark.unit
@pytest.mark.parametrize("text, p, row", [
    ('cyclic:2', 3, 'order_two'),
    ('cyclic:2', 5, 'order_two'),
    ('sym:3', 2, 'fermat_frobenius'),
    ('sym:3', 3, 'order_two'),
    ('metacyclic:5,4,2,0', 2, 'fermat_frobenius'),
    ('semidirect(elemab:3^2,[[[0,2],[1,0]],[[1,1],[1,2]]])', 2, 'e9_by_two_group'),
])
def test_classify_one(text, p, row, config):
    result = classify_one(group(text, config), p, config)
    assert result.holds
    assert result.row == row


@pytest.mark.unit
def test_classify_one_negative(config):
    result = classify_one(group('sym:3', config), 5, config)
    assert not result.holds
    assert result.p_regular_classes == 3


@pytest.mark.unit
def test_mersenne_row(config):
    g = semilinear_semidirect(2, 3, [[1, 0]], config)
    result = classify_one(g, 7, config)
    assert result.holds
    assert result.row == 'mersenne'


@pytest.mark.unit
@pytest.mark.parametrize("p, quotient_order, element_order, row", [
    (2, 72, 3, 'e9_by_two_group'),
    (2, 144, 3, 'e9_by_two_group'),
    (2, 72, 9, 'unmatched'),
    (3, 72, 2, 'unmatched'),
    (2, 6, 3, 'fermat_frobenius'),
    (2, 18, 3, 'unmatched'),
    (2, 272, 17, 'fermat_frobenius'),
    (7, 56, 2, 'mersenne'),
    (7, 56, 7, 'unmatched'),
    (3, 2, 2, 'order_two'),
    (2, 2, 2, 'unmatched'),
    (5, 1, 1, 'trivial'),
])
def test_one_theory_row_uses_p_and_the_element_order(p, quotient_order, element_order, row):
    assert _one_theory_row(p, quotient_order, element_order) == row


@pytest.mark.unit
@pytest.mark.parametrize("text, p, holds, reason", [
    ('dihedral:14', 2, True, 'minimal_normal_complement'),
    ('cyclic:3', 2, True, 'three_p_regular_classes'),
    ('metacyclic:5,2,-1,0', 2, True, 'three_p_regular_classes'),
    ('metacyclic:13,3,3,0', 3, False, 'invariant_theories'),
])
def test_classify_two(text, p, holds, reason, config):
    result = classify_two(group(text, config), p, config)
    assert result.holds == holds
    assert result.reason == reason


@pytest.mark.unit
def test_classify_two_hypotheses(config):
    with pytest.raises(HypothesisError):
        classify_two(group('sym:3', config), 3, config)
    with pytest.raises(HypothesisError):
        classify_two(group('dihedral:8', config), 2, config)


@pytest.mark.slow
def test_classify_two_needs_p_solvability(config):
    with pytest.raises(HypothesisError):
        classify_two(group('sym:5', config), 2, config)


@pytest.mark.slow
@pytest.mark.parametrize("words", [[[3, 0]], [[6, 0], [3, 1]], [[3, 0], [0, 1]]])
def test_septenary_plane_groups_have_two_theories(words, config):
    g = semilinear_semidirect(7, 2, words, config)
    ctx = brauer_context(g, 2)
    assert ctx.mode == NORMAL_P_COMPLEMENT
    result = count_super_brauer(ctx, config=config)
    assert result.p_regular_classes == 4
    assert result.count == 2
    assert classify_two(g, 2, config).reason == 'minimal_normal_complement'
