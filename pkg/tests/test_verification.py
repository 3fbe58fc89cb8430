import json
import xml.etree.ElementTree as ET

import pytest

from cyclotomics import Cyclotomic
from table_data import INSTANCES_FILE
from verification import (PASS, FAIL, ERROR, SKIPPED, FROM_TABLE, check, error_record, ReportDocument, gl_order,
                          match_value_matrix, verify_instances, verify_wreath_64, verify_order_49_planes,
                          verify_gl4_3_subgroups, run_verification)


def cyclotomic_rows(rows):
    return [[Cyclotomic.from_rational(v) for v in row] for row in rows]


def sample_report():
    return ReportDocument([
        check('a/y', 1, 2, FROM_TABLE),
        check('a/x', 1, 1),
        check('b/z', None, None, status=SKIPPED, notes='no generators'),
        error_record('b/w', ValueError('boom')),
    ])


@pytest.mark.unit
def test_gl_order():
    assert gl_order(3, 4) == 24261120
    assert gl_order(2, 2) == 6


@pytest.mark.unit
def test_match_value_matrix():
    expected = [[1, 1, 1], [2, -1, 0], [3, 0, -1]]
    computed = cyclotomic_rows([[1, 1, 1], [3, 0, -1], [2, -1, 0]])
    assert match_value_matrix(computed, expected) == (1, (0, 2, 1), (0, 1, 2))
    assert match_value_matrix(computed, [[1, 1, 1], [2, -1, 0], [5, 0, -1]]) is None
    assert match_value_matrix(computed[:2], expected) is None


@pytest.mark.unit
def test_match_value_matrix_up_to_galois():
    z = Cyclotomic.root_of_unity(3)
    computed = [[Cyclotomic.one(), Cyclotomic.one()], [z, z * z]]
    expected = [[1, 1], [z * z, z]]
    assert match_value_matrix(computed, expected) is None
    k, rows, cols = match_value_matrix(computed, expected, galois_exponents=(1, 2))
    assert k == 2


@pytest.mark.unit
def test_report_summary():
    report = sample_report()
    assert [r.check_id for r in report.records] == ['a/x', 'a/y', 'b/w', 'b/z']
    assert not report.passed
    assert [r.check_id for r in report.failures] == ['a/y', 'b/w']
    summary = report.summary()
    assert summary['total'] == 4
    assert summary['counts'] == {PASS: 1, FAIL: 1, ERROR: 1, SKIPPED: 1}
    assert summary['sections']['a'] == {ERROR: 0, FAIL: 1, PASS: 1, SKIPPED: 0}


@pytest.mark.unit
def test_report_json():
    document = sample_report().to_json()
    first = document['records'][0]
    assert first['id'] == 'a/x'
    assert first['expected'] == {'value': 1, 'provenance': 'derived'}
    assert document['records'][1]['expected']['provenance'] == 'table'
    assert document['records'][2]['notes'] == 'ValueError: boom'


@pytest.mark.unit
def test_junit_report(tmp_path):
    path = str(tmp_path / 'report.xml')
    sample_report().write_junit(path)
    suite = ET.parse(path).getroot()
    assert suite.tag == 'testsuite'
    assert (suite.get('tests'), suite.get('failures'), suite.get('errors'), suite.get('skipped')) == \
        ('4', '1', '1', '1')
    cases = {case.get('name'): case for case in suite.iter('testcase')}
    assert cases['a/y'].find('failure') is not None
    assert cases['b/w'].find('error') is not None
    assert cases['b/z'].find('skipped').get('message') == 'no generators'
    assert len(list(cases['a/x'])) == 0


@pytest.mark.unit
def test_small_instance_corpus(config, tmp_path):
    corpus = {'version': 1, 'instances': [
        {'id': 'one/z2_p3', 'family': 'one_theory', 'description': 'Z_2 at p = 3',
         'group': {'spec': 'cyclic:2'}, 'p': 3,
         'expected': {'super_brauer_count': 1, 'p_regular_classes': 2, 'row': 'order_two'}},
        {'id': 'two/z7_z2', 'family': 'two_theories', 'description': 'Z_7 x| Z_2 at p = 2',
         'group': {'semilinear': {'q': 7, 'n': 1, 'words': [[3, 0]]}}, 'p': 2,
         'expected': {'super_brauer_count': 2, 'p_regular_classes': 4, 'reason': 'minimal_normal_complement',
                      'invariant_theories': 2, 'case': 'prime_line_sylow'}},
        {'id': 'skipped/none', 'family': 'skipped', 'description': 'no generators', 'reason': 'not available'},
    ]}
    (tmp_path / INSTANCES_FILE).write_text(json.dumps(corpus))
    config.DATA_DIR = str(tmp_path)
    report = ReportDocument(verify_instances(config))
    assert report.passed, [r.to_json() for r in report.failures]
    ids = {r.check_id for r in report.records}
    assert 'instances/two/z7_z2/classify_two' in ids
    assert 'instances/two/z7_z2/sylow_choice' in ids
    assert 'instances/one/z2_p3/row' in ids
    assert report.summary()['counts'][SKIPPED] == 1


@pytest.mark.unit
def test_unknown_section(config):
    with pytest.raises(ValueError):
        run_verification(config, ['tables'])


@pytest.mark.slow
@pytest.mark.parametrize("section", [verify_wreath_64, verify_order_49_planes, verify_gl4_3_subgroups])
def test_table_sections(section, config):
    report = ReportDocument(section(config))
    assert report.records
    assert report.passed, [r.to_json() for r in report.failures]


@pytest.mark.slow
def test_instance_corpus(config):
    report = run_verification(config, ['instances'])
    assert report.passed, [r.to_json() for r in report.failures]
    assert report.summary()['counts'][SKIPPED] >= 4
