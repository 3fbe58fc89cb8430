import os
import sys
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

from common import common, ScEngineError, GroupSpecError
from config import Config
from characters import character_table
from group_spec import NamedSpec, parse_group_spec, parse_matrix_source
from groups import FiniteGroup, realize_group
from module_actions import (LinearAction, brauer_permutation_check, conjugation_fusion, invariant_theories,
                            three_invariant_case)
from supercharacters import enumerate_scts
from super_brauer import brauer_context, count_super_brauer
from verification import run_verification

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2

CommandResult = Tuple[dict, str, bool]


def load_group(config: Config) -> FiniteGroup:
    spec = parse_group_spec(config.GROUP_SPEC, base_dir=os.getcwd())
    return realize_group(spec, config)


def run_sct(config: Config) -> CommandResult:
    group = load_group(config)
    theories = enumerate_scts(character_table(group, config), config)
    payload = {'group': group.name, 'order': group.order, 'classes': group.conjugacy.num_classes,
               'sct_count': len(theories), 'theories': theories.to_json()}
    return payload, '{}: {} supercharacter theories'.format(group.name, len(theories)), True


def run_sbt(config: Config) -> CommandResult:
    group = load_group(config)
    result = count_super_brauer(brauer_context(group, config.PRIME), config=config)
    text = '{} at p = {}: {} p-regular classes, {} super-Brauer character theories ({})'.format(
        group.name, result.p, result.p_regular_classes, result.count, result.mode)
    return result.to_json(), text, True


def _orbit_payload(action: LinearAction) -> dict:
    payload = {'action': action.name, 'q': action.q, 'n': action.n, 'order': action.order}
    payload.update(action.orbit_decomposition.to_json())
    if gcd(action.order, action.q) == 1:
        payload['brauer_permutation'] = brauer_permutation_check(action)
    payload['conjugation_closed'] = conjugation_fusion(action)
    payload['case'] = three_invariant_case(action)
    return payload


def run_orbits(config: Config) -> CommandResult:
    action = LinearAction.from_text(config.ACTION, base_dir=os.getcwd(), config=config)
    payload = _orbit_payload(action)
    text = '{} (order {}): orbit sizes {} on vectors, {} on characters'.format(
        action.name, payload['order'], payload['orbit_sizes_V'], payload['orbit_sizes_Irr'])
    return payload, text, True


def run_chartab(config: Config) -> CommandResult:
    table = character_table(load_group(config), config)
    lines = ['{}: {} classes, degrees {}'.format(table.name, table.num_classes, list(table.degrees))]
    lines += ['  ' + '  '.join(str(v) for v in row) for row in table.rows]
    return table.to_json(), '\n'.join(lines), True


def run_invariant(config: Config) -> CommandResult:
    spec = parse_group_spec(config.GROUP_SPEC, base_dir=os.getcwd())
    if not isinstance(spec, NamedSpec) or spec.kind != 'elemab':
        raise GroupSpecError('`invariant` needs an elementary abelian spec such as elemab:3^2, got `{}`.'.format(
            config.GROUP_SPEC))
    q, n = spec.params
    source_text = config.ACTION.strip()
    # FILE may also be an inline JSON matrix list
    if not source_text.startswith('['):
        source_text = '@' + source_text
    matrices = parse_matrix_source(source_text, base_dir=os.getcwd()).load()
    action = LinearAction(q, [[list(row) for row in m] for m in matrices], name=config.ACTION, config=config)
    if action.n != n:
        raise GroupSpecError('Generators act on GF({})^{} but the spec is elemab:{}^{}.'.format(q, action.n, q, n))
    theories = invariant_theories(action)
    payload = _orbit_payload(action)
    payload.update({'group': 'elemab:{}^{}'.format(q, n), 'invariant_count': len(theories),
                    'theories': theories.to_json()})
    text = '{} under {}: {} invariant supercharacter theories ({} orbits)'.format(
        payload['group'], action.name, len(theories), action.orbit_decomposition.num_orbits)
    return payload, text, True


def run_verify(config: Config) -> CommandResult:
    report = run_verification(config, config.SECTIONS)
    if config.JUNIT_PATH:
        report.write_junit(config.JUNIT_PATH)
        config.log('JUnit report written to: {}'.format(config.JUNIT_PATH))
    lines = [report.summary_frame().to_string()]
    lines += ['FAILED {} ({}): {}'.format(r.check_id, r.status, r.notes) for r in report.failures]
    return report.to_json(), '\n'.join(lines), report.passed


COMMANDS: Dict[str, Callable[[Config], CommandResult]] = {
    'sct': run_sct,
    'sbt': run_sbt,
    'orbits': run_orbits,
    'chartab': run_chartab,
    'invariant': run_invariant,
    'verify': run_verify,
}


def cli_main(argv: Optional[List[str]] = None) -> int:
    try:
        config = Config(set_defaults=True, load_from_args=True, verify=True, argv=argv)
    except SystemExit as e:
        # argparse has already printed its diagnostics
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except ValueError as e:
        print('scengine: error: {}'.format(e), file=sys.stderr)
        return EXIT_USAGE

    try:
        payload, text, ok = COMMANDS[config.COMMAND](config)
    except GroupSpecError as e:
        config.get_logger().error('Invalid group specification: {}'.format(e))
        return EXIT_USAGE
    except OSError as e:
        config.get_logger().error('Cannot read input: {}'.format(e))
        return EXIT_USAGE
    except ScEngineError as e:
        config.get_logger().error('{}: {}'.format(type(e).__name__, e))
        return EXIT_CHECK_FAILED
    except ValueError as e:
        config.get_logger().error(str(e))
        return EXIT_USAGE

    if config.JSON_OUTPUT:
        print(common.dump_json(common.to_jsonable(payload)))
    else:
        print(text)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


if __name__ == '__main__':
    sys.exit(cli_main())
