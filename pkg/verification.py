"""
Verification harness: re-derives the embedded classification data and the instance corpus and
collects one CheckRecord per claim. Failing claims never raise; they become records with status
`fail` (or `error` when the computation itself raised).
"""
import copy
import xml.etree.ElementTree as ET
from concurrent.futures import ProcessPoolExecutor
from functools import reduce
from itertools import permutations, repeat
from math import gcd
from typing import NamedTuple, Any, List, Optional, Sequence, Tuple, Callable

import pandas as pd
import sympy

from common import common, ScEngineError
from config import Config, default_config
from cyclotomics import Cyclotomic
from characters import character_table, verify_orthogonality
from finite_fields import ff_make
from group_spec import semidirect_spec, parse_group_spec
from groups import FiniteGroup, realize_group
from module_actions import (LinearAction, action_table, semilinear_subgroup, wreath_matrix_generators,
                            block_diagonal, block_permutation_matrix, action_orbit_theory, invariant_theories,
                            brauer_permutation_check, conjugation_fusion, three_invariant_case)
from supercharacters import make_theory
from super_brauer import (NORMAL_P_COMPLEMENT, UNSUPPORTED, brauer_context, green_ibr, count_super_brauer,
                          classify_one, classify_two, finest_brauer_theory, coarsest_brauer_theory,
                          coarsest_supercharacters, minimal_normal_in_p_regular, three_block_theory, three_block_rows,
                          transported_partitions_agree)
from table_data import (InstanceRecord, load_gl4_3_subgroups, load_wreath_64, load_order_49_planes,
                        load_instances)

PASS, FAIL, ERROR, SKIPPED = 'pass', 'fail', 'error', 'skipped'
FROM_TABLE, FROM_FORMULA, DERIVED = 'table', 'formula', 'derived'
ORTHOGONALITY_MAX_ORDER = 512


class CheckRecord(NamedTuple):
    check_id: str
    inputs: Any
    expected: Any
    computed: Any
    status: str
    notes: str = ''
    provenance: str = DERIVED

    @property
    def section(self) -> str:
        return self.check_id.split('/', 1)[0]

    def to_json(self) -> dict:
        return {'id': self.check_id, 'inputs': common.to_jsonable(self.inputs),
                'expected': {'value': common.to_jsonable(self.expected), 'provenance': self.provenance},
                'computed': common.to_jsonable(self.computed), 'status': self.status, 'notes': self.notes}


def check(check_id: str, expected, computed, provenance: str = DERIVED, inputs=None, notes: str = '',
          status: Optional[str] = None) -> CheckRecord:
    if status is None:
        status = PASS if expected == computed else FAIL
    return CheckRecord(check_id, inputs or {}, expected, computed, status, notes, provenance)


def error_record(check_id: str, e: Exception, inputs=None) -> CheckRecord:
    return CheckRecord(check_id, inputs or {}, None, None, ERROR, '{}: {}'.format(type(e).__name__, e))


class ReportDocument:
    def __init__(self, records: Sequence[CheckRecord]):
        self.records: List[CheckRecord] = sorted(records, key=lambda r: r.check_id)

    @property
    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if r.status in (FAIL, ERROR)]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([{'section': r.section, 'status': r.status} for r in self.records],
                             columns=['section', 'status'])
        return pd.crosstab(frame['section'], frame['status'])

    def summary(self) -> dict:
        counts = {status: 0 for status in (PASS, FAIL, ERROR, SKIPPED)}
        for r in self.records:
            counts[r.status] += 1
        frame = self.summary_frame()
        sections = {section: {status: int(n) for status, n in row.items()} for section, row in frame.iterrows()}
        return {'total': len(self.records), 'counts': counts, 'sections': sections}

    def to_json(self) -> dict:
        return {'records': [r.to_json() for r in self.records], 'summary': self.summary()}

    def write_junit(self, path: str):
        suite = ET.Element('testsuite', name='scengine', tests=str(len(self.records)),
                           failures=str(sum(r.status == FAIL for r in self.records)),
                           errors=str(sum(r.status == ERROR for r in self.records)),
                           skipped=str(sum(r.status == SKIPPED for r in self.records)))
        for r in self.records:
            case = ET.SubElement(suite, 'testcase', classname=r.section, name=r.check_id)
            if r.status == FAIL:
                ET.SubElement(case, 'failure', message='expected {} got {}'.format(
                    common.to_jsonable(r.expected), common.to_jsonable(r.computed))).text = r.notes
            elif r.status == ERROR:
                ET.SubElement(case, 'error', message=r.notes)
            elif r.status == SKIPPED:
                ET.SubElement(case, 'skipped', message=r.notes)
        ET.ElementTree(suite).write(path, encoding='utf-8', xml_declaration=True)


def gl_order(q: int, n: int) -> int:
    return reduce(lambda acc, i: acc * (q ** n - q ** i), range(n), 1)


def match_value_matrix(computed, expected, galois_exponents: Sequence[int] = (1,)) \
        -> Optional[Tuple[int, Tuple[int, ...], Tuple[int, ...]]]:
    """(k, rows, cols) with computed[rows[i]][cols[j]].galois(k) == expected[i][j], the trivial row and
    column held fixed, or None. Orbit labels are not canonical, so every relabelling is tried."""
    n = len(expected)
    if len(computed) != n or any(len(row) != n for row in computed):
        return None
    for k in galois_exponents:
        image = [[v.galois(k) for v in row] for row in computed]
        for rest_rows in permutations(range(1, n)):
            rows = (0,) + rest_rows
            for rest_cols in permutations(range(1, n)):
                cols = (0,) + rest_cols
                if all(image[rows[i]][cols[j]] == expected[i][j] for i in range(n) for j in range(n)):
                    return k, rows, cols
    return None


def _as_cyclotomic(rows) -> List[List[Cyclotomic]]:
    return [[v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(v) for v in row] for row in rows]


def verify_gl4_3_subgroups(config: Optional[Config] = None) -> List[CheckRecord]:
    config = config or default_config()
    data = load_gl4_3_subgroups(config)
    q, n = data.field, data.dimension
    records = []
    sylow_order = common.p_part(gl_order(q, n), 2)
    actions = {}
    for entry in data.entries:
        prefix = 'gl4_3_subgroups/entry_{:02d}'.format(entry.id)
        inputs = {'entry': entry.id, 'generators': [[list(r) for r in m] for m in entry.generators]}
        try:
            action = LinearAction(q, [[list(r) for r in m] for m in entry.generators],
                                  name='entry {}'.format(entry.id), config=config)
            actions[entry.id] = action
            records.append(check(prefix + '/order', entry.order, action.order, FROM_TABLE, inputs))
            decomposition = action.orbit_decomposition
            records.append(check(prefix + '/orbit_sizes', list(data.expected_orbit_sizes), decomposition.sizes,
                                 FROM_FORMULA, inputs, notes='weight orbits of GF(9) + GF(9)'))
            records.append(check(prefix + '/brauer_permutation', True, brauer_permutation_check(action),
                                 FROM_FORMULA, inputs))
            records.append(check(prefix + '/invariant_theories', data.expected_invariant_theories,
                                 len(invariant_theories(action)), FROM_TABLE, inputs))
            records.append(check(prefix + '/case', 'ternary_four_space', three_invariant_case(action),
                                 DERIVED, inputs))
        except ScEngineError as e:
            records.append(error_record(prefix, e, inputs))
        config.log('checked GL_4(3) entry {}'.format(entry.id))

    last = data.entries[-1]
    if last.id in actions:
        records.append(check('gl4_3_subgroups/sylow_order', sylow_order, actions[last.id].order, FROM_FORMULA,
                             {'entry': last.id}, notes='2-part of |GL_4(3)| = {}'.format(gl_order(q, n))))
        sylow_orbits = actions[last.id].orbit_decomposition.vector_orbits
        for entry_id, action in sorted(actions.items()):
            if entry_id == last.id:
                continue
            records.append(check('gl4_3_subgroups/entry_{:02d}/same_orbits_as_sylow'.format(entry_id), True,
                                 action.orbit_decomposition.vector_orbits == sylow_orbits, DERIVED,
                                 {'entry': entry_id}))
    return records


def verify_wreath_64(config: Optional[Config] = None) -> List[CheckRecord]:
    config = config or default_config()
    data = load_wreath_64(config)
    records = []
    prefix = 'wreath_64'
    inputs = {'field': data.field, 'blocks': data.blocks}
    try:
        generators = wreath_matrix_generators(data.field, [[list(r) for r in m] for m in data.block_generators],
                                              data.blocks)
        action = LinearAction(data.field, generators, name='Z_3 wr Z_3', config=config)
        records.append(check(prefix + '/order', data.expected_order, action.order, FROM_FORMULA, inputs))
        parent_sizes = action.orbit_decomposition.sizes
        records.append(check(prefix + '/orbit_sizes', list(data.expected_orbit_sizes), parent_sizes,
                             FROM_FORMULA, inputs))

        theory = action_orbit_theory(action)
        expected = _as_cyclotomic(data.values)
        matching = match_value_matrix(theory.values, expected)
        records.append(check(prefix + '/value_matrix', data.values, theory.values, FROM_TABLE, inputs,
                             status=PASS if matching else FAIL,
                             notes='rows {} columns {}'.format(*matching[1:]) if matching else 'no relabelling'))

        # the one supercharacter with equal values on two orbits, and the merge of the other two
        r = len(theory.values)
        repeats = [(x, a, b) for x in range(1, r) for a in range(1, r) for b in range(a + 1, r)
                   if theory.values[x][a] == theory.values[x][b]]
        records.append(check(prefix + '/equal_values', [data.equal_value],
                             [theory.values[x][a] for x, a, _ in repeats], FROM_TABLE, inputs))
        if len(repeats) == 1:
            x, a, b = repeats[0]
            others = [y for y in range(1, r) if y != x]
            char_blocks = [theory.char_blocks[0], theory.char_blocks[x],
                           sum((theory.char_blocks[y] for y in others), ())]
            rest = [c for c in range(1, r) if c not in (a, b)]
            class_blocks = [theory.class_blocks[0], theory.class_blocks[a] + theory.class_blocks[b]] + \
                           [theory.class_blocks[c] for c in rest]
            merged = make_theory(action_table(action).table, char_blocks, class_blocks)
            merged_index = [i for i, X in enumerate(merged.char_blocks) if theory.char_blocks[others[0]][0] in X][0]
            block_index = [k for k, K in enumerate(merged.class_blocks) if theory.class_blocks[a][0] in K][0]
            records.append(check(prefix + '/merged_value', data.merged_value,
                                 merged.values[merged_index][block_index], FROM_TABLE, inputs))

        count = len(invariant_theories(action))
        records.append(check(prefix + '/invariant_theories', {'at_least': data.minimum_invariant_theories}, count,
                             FROM_TABLE, inputs, status=PASS if count >= data.minimum_invariant_theories else FAIL,
                             notes='negative control: more than two invariant theories'))

        field = ff_make(data.field)
        m = len(data.subgroup_blocks[0])
        subgroup = LinearAction(data.field, [block_diagonal(field, [[list(row) for row in b]
                                                                    for b in data.subgroup_blocks]),
                                             block_permutation_matrix(field, m, data.blocks)],
                                name='exponent 3 subgroup of Z_3 wr Z_3', config=config)
        records.append(check(prefix + '/exponent_three/order', data.subgroup_order, subgroup.order, DERIVED,
                             inputs))
        records.append(check(prefix + '/exponent_three/exponent', 3, subgroup.group.exponent, DERIVED, inputs))
        sizes = subgroup.orbit_decomposition.sizes
        records.append(check(prefix + '/exponent_three/orbits_differ', True, sizes != parent_sizes, FROM_TABLE,
                             inputs, notes='subgroup orbit sizes {}'.format(sizes)))
    except ScEngineError as e:
        records.append(error_record(prefix, e, inputs))
    return records


def verify_order_49_planes(config: Optional[Config] = None) -> List[CheckRecord]:
    config = config or default_config()
    data = load_order_49_planes(config)
    records = []
    symbols = data.symbols
    names = sorted(symbols)
    total = reduce(lambda acc, s: acc + symbols[s], names[1:], symbols[names[0]])
    records.append(check('order_49_planes/values/sum', Cyclotomic.from_rational(-1), total, FROM_FORMULA,
                         {'symbols': names}))
    for name in names:
        records.append(check('order_49_planes/values/{}_real'.format(name), True,
                             symbols[name].conjugate() == symbols[name], FROM_FORMULA, {'symbol': name}))
    expected = data.expected_matrix()
    for group in data.groups:
        prefix = 'order_49_planes/{}'.format(group.name)
        inputs = {'q': data.field, 'n': data.dimension, 'words': [list(w) for w in group.words]}
        try:
            action = semilinear_subgroup(data.field, data.dimension, group.words, name=group.name, config=config)
            records.append(check(prefix + '/order', group.order, action.order, FROM_TABLE, inputs))
            decomposition = action.orbit_decomposition
            records.append(check(prefix + '/orbit_sizes', list(data.expected_orbit_sizes), decomposition.sizes,
                                 FROM_TABLE, inputs))
            records.append(check(prefix + '/dual_orbit_sizes', list(data.expected_orbit_sizes),
                                 decomposition.dual_sizes, FROM_TABLE, inputs))
            theory = action_orbit_theory(action)
            matching = match_value_matrix(theory.values, expected, galois_exponents=range(1, 7))
            records.append(check(prefix + '/value_matrix', [list(row) for row in data.pattern], theory.values,
                                 FROM_TABLE, inputs, status=PASS if matching else FAIL,
                                 notes='zeta -> zeta^{} rows {} columns {}'.format(*matching) if matching
                                 else 'no relabelling'))
            distinct = all(len(set(row[1:])) == len(row) - 1 for row in theory.values[1:])
            records.append(check(prefix + '/distinct_values', True, distinct, FROM_TABLE, inputs))
            records.append(check(prefix + '/invariant_theories', data.expected_invariant_theories,
                                 len(invariant_theories(action)), FROM_TABLE, inputs))
            records.append(check(prefix + '/case', 'septenary_plane', three_invariant_case(action), DERIVED, inputs))
        except ScEngineError as e:
            records.append(error_record(prefix, e, inputs))
    return records


def instance_action(record: InstanceRecord, config: Config) -> Optional[LinearAction]:
    """The linear action of an instance given as V x| P, or None for a plain spec."""
    group = record.group
    if 'semilinear' in group:
        g = group['semilinear']
        return semilinear_subgroup(g['q'], g['n'], g['words'], name=record.id, config=config)
    if 'matrices' in group:
        g = group['matrices']
        return LinearAction(g['q'], g['generators'], name=record.id, config=config)
    return None


def instance_group(record: InstanceRecord, config: Config, action: Optional[LinearAction] = None) -> FiniteGroup:
    action = action if action is not None else instance_action(record, config)
    if action is None:
        spec = parse_group_spec(record.group['spec'], base_dir=config.DATA_DIR)
    else:
        spec = semidirect_spec(action.q, action.n, [g.to_json() for g in action.generators])
    group = realize_group(spec, config)
    group.name = record.id
    return group


def _action_checks(record: InstanceRecord, action: LinearAction, prefix: str, inputs: dict) -> List[CheckRecord]:
    expected = record.expected
    records = []
    decomposition = action.orbit_decomposition
    if gcd(action.order, action.q) == 1:
        records.append(check(prefix + '/brauer_permutation', True, brauer_permutation_check(action), FROM_FORMULA,
                             inputs))
    if 'orbit_sizes' in expected:
        records.append(check(prefix + '/orbit_sizes', expected['orbit_sizes'], decomposition.sizes, FROM_TABLE,
                             inputs))
    if 'case' in expected:
        records.append(check(prefix + '/case', expected['case'], three_invariant_case(action), DERIVED, inputs))
    if 'invariant_theories' in expected and common.is_power_of(action.order, record.p):
        count = len(invariant_theories(action))
        records.append(check(prefix + '/invariant_theories', expected['invariant_theories'], count, FROM_TABLE,
                             inputs))
        if count == 2:
            holds = decomposition.num_orbits == 3 or action.q == 2 or record.p == 2
            records.append(check(prefix + '/conjugation_closure', True, holds, FROM_FORMULA, inputs,
                                 notes='dual orbits closed under conjugation: {}'.format(conjugation_fusion(action))))
        if decomposition.num_orbits == 3:
            records.append(check(prefix + '/three_orbits_two_theories', 2, count, FROM_FORMULA, inputs))
    return records


def _brauer_checks(record: InstanceRecord, group: FiniteGroup, prefix: str, inputs: dict,
                   config: Config) -> List[CheckRecord]:
    records = []
    ctx = brauer_context(group, record.p)
    r = ctx.num_p_regular
    if 'p_regular_classes' in record.expected:
        records.append(check(prefix + '/p_regular_classes', record.expected['p_regular_classes'], r, FROM_TABLE,
                             inputs))
    if r <= 2:
        primes = sorted(sympy.factorint(group.order))
        records.append(check(prefix + '/two_primes', True, len(primes) <= 2, FROM_FORMULA, inputs,
                             notes='primes dividing |G|: {}'.format(primes)))
    if ctx.mode == UNSUPPORTED:
        records.append(check(prefix + '/mode', 'supported', ctx.mode, DERIVED, inputs, status=SKIPPED,
                             notes='no normal p-complement: super-Brauer counts not computed'))
        return records

    family = green_ibr(ctx, config) if ctx.mode == NORMAL_P_COMPLEMENT else None
    result = count_super_brauer(ctx, family, config)
    if 'super_brauer_count' in record.expected:
        records.append(check(prefix + '/super_brauer_count', record.expected['super_brauer_count'], result.count,
                             FROM_TABLE, inputs))
    records.append(check(prefix + '/one_theory_iff_two_classes', r <= 2, result.count == 1, FROM_FORMULA, inputs,
                         notes='{} p-regular classes, {} theories'.format(r, result.count)))
    if family is not None:
        records.append(check(prefix + '/green_orbits', r, family.num_characters, FROM_FORMULA, inputs))
        records.append(check(prefix + '/transported_partitions', True,
                             transported_partitions_agree(family, result.theories), FROM_FORMULA, inputs))
        reversed_count = count_super_brauer(brauer_context(group, record.p, reverse=True), config=config).count
        records.append(check(prefix + '/sylow_choice', result.count, reversed_count, DERIVED, inputs))
    finest = finest_brauer_theory(ctx, family, config)
    coarsest = coarsest_brauer_theory(ctx, family, config)
    records.append(check(prefix + '/trivial_theories_coincide', r <= 2, finest.key == coarsest.key, FROM_FORMULA,
                         inputs))
    constant, rest = coarsest_supercharacters(ctx)
    records.append(check(prefix + '/coarsest_supercharacter_constant', True,
                         len(set(rest.values[1:])) <= 1 and len(set(constant.values)) == 1, FROM_FORMULA, inputs))
    return records


def _instance_checks(record: InstanceRecord, config: Config) -> List[CheckRecord]:
    prefix = 'instances/{}'.format(record.id)
    if record.is_skipped:
        return [check(prefix, None, None, FROM_TABLE, {'description': record.description}, status=SKIPPED,
                      notes='skipped: {}'.format(record.skip_reason))]
    inputs = {'group': record.group, 'p': record.p}
    records = []
    try:
        action = instance_action(record, config)
        group = instance_group(record, config, action)
        expected = record.expected
        if action is not None:
            records.extend(_action_checks(record, action, prefix, inputs))

        if record.family in ('one_theory', 'one_theory_negative'):
            result = classify_one(group, record.p, config)
            records.append(check(prefix + '/classify_one', expected.get('holds', True), result.holds, FROM_TABLE,
                                 inputs))
            if 'row' in expected:
                records.append(check(prefix + '/row', expected['row'], result.row, FROM_TABLE, inputs))
        elif record.family == 'two_theories':
            result = classify_two(group, record.p, config)
            records.append(check(prefix + '/classify_two', expected['reason'], result.reason, FROM_TABLE, inputs,
                                 notes='holds: {}'.format(result.holds)))
        elif record.family == 'three_block':
            records.extend(_three_block_checks(record, group, prefix, inputs, config))

        records.extend(_brauer_checks(record, group, prefix, inputs, config))

        if group.order <= ORTHOGONALITY_MAX_ORDER and group.conjugacy.num_classes <= config.MAX_TABLE_CLASSES:
            records.append(check(prefix + '/orthogonality', True,
                                 verify_orthogonality(character_table(group, config)), FROM_FORMULA, inputs))
    except ScEngineError as e:
        records.append(error_record(prefix, e, inputs))
    return records


def _three_block_checks(record: InstanceRecord, group: FiniteGroup, prefix: str, inputs: dict,
                        config: Config) -> List[CheckRecord]:
    records = []
    ctx = brauer_context(group, record.p)
    family = green_ibr(ctx, config)
    cd = group.conjugacy
    candidates = {sum(cd.sizes[c] for c in m): m for m in minimal_normal_in_p_regular(ctx)}
    count = count_super_brauer(ctx, family, config).count
    for item in record.expected['minimal_normal']:
        check_id = '{}/three_block/order_{}'.format(prefix, item['order'])
        m = candidates.get(item['order'])
        if m is None:
            records.append(check(check_id, item['order'], sorted(candidates), FROM_FORMULA, inputs, status=FAIL,
                                 notes='no minimal normal subgroup of this order inside G°'))
            continue
        theory = three_block_theory(ctx, m, family, config)
        rows = three_block_rows(ctx, theory, m, family, config)
        records.append(check(check_id + '/values', item['values'], list(rows[2]), FROM_FORMULA, inputs,
                             notes='|G:M| = {}'.format(item['index'])))
        single = all(len(block) == 1 for block in theory.class_blocks[1:])
        records.append(check(check_id + '/count_at_least_three', True, single or count >= 3, FROM_FORMULA, inputs,
                             notes='{} super-Brauer theories'.format(count)))
    return records


def verify_instances(config: Optional[Config] = None) -> List[CheckRecord]:
    config = config or default_config()
    records = []
    for record in load_instances(config):
        config.log('checking instance {}'.format(record.id))
        records.extend(_instance_checks(record, config))
    return records


SECTIONS = {
    'gl4_3_subgroups': verify_gl4_3_subgroups,
    'wreath_64': verify_wreath_64,
    'order_49_planes': verify_order_49_planes,
    'instances': verify_instances,
}


def _run_section(section: str, config: Config) -> List[CheckRecord]:
    runner: Callable[[Config], List[CheckRecord]] = SECTIONS[section]
    return runner(config)


def run_verification(config: Optional[Config] = None, sections: Optional[Sequence[str]] = None) -> ReportDocument:
    config = config or default_config()
    sections = list(sections or config.SECTIONS)
    unknown = [s for s in sections if s not in SECTIONS]
    if unknown:
        raise ValueError('Unknown verification sections: {}.'.format(unknown))
    records: List[CheckRecord] = []
    if config.NUM_WORKERS > 1 and len(sections) > 1:
        # sections run in worker processes, each of which searches serially
        section_config = copy.copy(config)
        section_config.NUM_WORKERS = 1
        with ProcessPoolExecutor(max_workers=min(config.NUM_WORKERS, len(sections))) as executor:
            for section_records in executor.map(_run_section, sections, repeat(section_config)):
                records.extend(section_records)
    else:
        for section in sections:
            records.extend(_run_section(section, config))
    report = ReportDocument(records)
    config.log('verification finished: {}'.format(report.summary()['counts']))
    return report
