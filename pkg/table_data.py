"""
Loaders for the embedded classification data under `data/`.

Every loader validates what it reads and raises ValueError naming the file and the offending entry,
so a damaged data file is reported before any verification starts.
"""
import os
from typing import NamedTuple, Tuple, Optional, Dict, List

from common import common
from config import Config, default_config
from cyclotomics import Cyclotomic, zeta_polynomial

GL4_3_FILE = 'gl4_3_subgroups.json'
WREATH_64_FILE = 'wreath_64.json'
ORDER_49_FILE = 'order_49_planes.json'
INSTANCES_FILE = 'instances.json'

Matrix = Tuple[Tuple[int, ...], ...]


class GL43Entry(NamedTuple):
    id: int
    order: int
    generators: Tuple[Matrix, ...]


class GL43Data(NamedTuple):
    field: int
    dimension: int
    expected_orbit_sizes: Tuple[int, ...]
    expected_invariant_theories: int
    entries: Tuple[GL43Entry, ...]


class WreathData(NamedTuple):
    field: int
    block_generators: Tuple[Matrix, ...]
    blocks: int
    expected_order: int
    expected_orbit_sizes: Tuple[int, ...]
    values: Tuple[Tuple[int, ...], ...]
    equal_value: int
    merged_value: int
    minimum_invariant_theories: int
    subgroup_blocks: Tuple[Matrix, ...]
    subgroup_order: int


class PlaneGroup(NamedTuple):
    name: str
    words: Tuple[Tuple[int, int], ...]
    order: int


class PlaneData(NamedTuple):
    field: int
    dimension: int
    symbols: Dict[str, Cyclotomic]
    pattern: Tuple[Tuple[str, ...], ...]
    expected_orbit_sizes: Tuple[int, ...]
    expected_invariant_theories: int
    groups: Tuple[PlaneGroup, ...]

    def value(self, symbol: str) -> Cyclotomic:
        if symbol in self.symbols:
            return self.symbols[symbol]
        return Cyclotomic.from_rational(int(symbol))

    def expected_matrix(self) -> Tuple[Tuple[Cyclotomic, ...], ...]:
        return tuple(tuple(self.value(s) for s in row) for row in self.pattern)


class InstanceRecord(NamedTuple):
    id: str
    family: str
    description: str
    group: Optional[dict]
    p: Optional[int]
    expected: dict
    skip_reason: Optional[str] = None

    @property
    def is_skipped(self) -> bool:
        return self.skip_reason is not None


class TableData(NamedTuple):
    gl4_3: GL43Data
    wreath: WreathData
    planes: PlaneData
    instances: Tuple[InstanceRecord, ...]


def _load(config: Config, file_name: str) -> dict:
    path = config.data_path(file_name)
    if not os.path.isfile(path):
        raise ValueError('Data file {} does not exist.'.format(path))
    try:
        return common.load_json_file(path)
    except ValueError as e:
        raise ValueError('Data file {} is not valid JSON: {}'.format(path, e))


def _matrix(data, q: int, where: str, size: Optional[int] = None) -> Matrix:
    if not isinstance(data, list) or not data or any(not isinstance(row, list) or len(row) != len(data)
                                                     for row in data):
        raise ValueError('{}: {} is not a square matrix.'.format(where, data))
    if size is not None and len(data) != size:
        raise ValueError('{}: expected a {}x{} matrix.'.format(where, size, size))
    if any(not isinstance(x, int) or not 0 <= x < q for row in data for x in row):
        raise ValueError('{}: entries must lie in 0..{}.'.format(where, q - 1))
    return tuple(tuple(row) for row in data)


def _power_of_two(text: str, where: str) -> int:
    base, sep, exponent = str(text).partition('^')
    if base.strip() != '2' or not sep or not exponent.strip().isdigit():
        raise ValueError('{}: order `{}` is not of the form 2^k.'.format(where, text))
    return 2 ** int(exponent)


def load_gl4_3_subgroups(config: Optional[Config] = None) -> GL43Data:
    config = config or default_config()
    data = _load(config, GL4_3_FILE)
    q, n = data['field'], data['dimension']
    entries = []
    for raw in data['entries']:
        where = '{} entry {}'.format(GL4_3_FILE, raw.get('id'))
        names = [name for name in ('A', 'B', 'C') if raw.get(name) is not None]
        if len(names) not in (2, 3):
            raise ValueError('{}: expected two or three generators, got {}.'.format(where, len(names)))
        generators = tuple(_matrix(raw[name], q, '{} {}'.format(where, name), n) for name in names)
        entries.append(GL43Entry(int(raw['id']), _power_of_two(raw['order'], where), generators))
    if len(entries) != 16:
        raise ValueError('{} lists {} entries instead of sixteen.'.format(GL4_3_FILE, len(entries)))
    return GL43Data(q, n, tuple(data['expected_orbit_sizes']), int(data['expected_invariant_theories']),
                    tuple(entries))


def load_wreath_64(config: Optional[Config] = None) -> WreathData:
    config = config or default_config()
    data = _load(config, WREATH_64_FILE)
    q = data['field']
    values = data['values']
    if any(not isinstance(v, int) for row in values for v in row):
        raise ValueError('{}: supercharacter values must be rational integers.'.format(WREATH_64_FILE))
    if len({len(row) for row in values}) != 1 or len(values) != len(values[0]):
        raise ValueError('{}: the value matrix must be square.'.format(WREATH_64_FILE))
    subgroup = data['exponent_three_subgroup']
    return WreathData(
        field=q,
        block_generators=tuple(_matrix(m, q, WREATH_64_FILE) for m in data['block_generators']),
        blocks=int(data['blocks']),
        expected_order=int(data['expected_order']),
        expected_orbit_sizes=tuple(data['expected_orbit_sizes']),
        values=tuple(tuple(row) for row in values),
        equal_value=int(data['equal_value']),
        merged_value=int(data['merged_value']),
        minimum_invariant_theories=int(data['minimum_invariant_theories']),
        subgroup_blocks=tuple(_matrix(m, q, WREATH_64_FILE) for m in subgroup['block_diagonal']),
        subgroup_order=int(subgroup['expected_order']))


def load_order_49_planes(config: Optional[Config] = None) -> PlaneData:
    config = config or default_config()
    data = _load(config, ORDER_49_FILE)
    zeta = int(data['zeta_order'])
    symbols = {}
    for name, coefficients in data['values'].items():
        if len(coefficients) != zeta:
            raise ValueError('{}: {} needs {} coefficients.'.format(ORDER_49_FILE, name, zeta))
        symbols[name] = zeta_polynomial(zeta, coefficients)
    pattern = tuple(tuple(str(s) for s in row) for row in data['pattern'])
    for symbol in {s for row in pattern for s in row}:
        if symbol not in symbols and not symbol.lstrip('-').isdigit():
            raise ValueError('{}: unknown symbol `{}` in the value pattern.'.format(ORDER_49_FILE, symbol))
    groups = tuple(PlaneGroup(g['name'], tuple(tuple(w) for w in g['words']), int(g['order']))
                   for g in data['groups'])
    return PlaneData(int(data['field']), int(data['dimension']), symbols, pattern,
                     tuple(data['expected_orbit_sizes']), int(data['expected_invariant_theories']), groups)


def load_instances(config: Optional[Config] = None) -> Tuple[InstanceRecord, ...]:
    config = config or default_config()
    data = _load(config, INSTANCES_FILE)
    records: List[InstanceRecord] = []
    seen = set()
    for raw in data['instances']:
        record_id = raw['id']
        if record_id in seen:
            raise ValueError('{}: duplicate instance id `{}`.'.format(INSTANCES_FILE, record_id))
        seen.add(record_id)
        if raw['family'] == 'skipped':
            records.append(InstanceRecord(record_id, 'skipped', raw['description'], None, None, {},
                                          raw.get('reason', 'no explicit generators')))
            continue
        group = raw['group']
        if len(group) != 1 or next(iter(group)) not in ('spec', 'semilinear', 'matrices'):
            raise ValueError('{}: instance `{}` has an unknown group description {}.'.format(
                INSTANCES_FILE, record_id, group))
        records.append(InstanceRecord(record_id, raw['family'], raw['description'], group, int(raw['p']),
                                      dict(raw['expected'])))
    return tuple(records)


def load_table_data(config: Optional[Config] = None) -> TableData:
    config = config or default_config()
    return TableData(load_gl4_3_subgroups(config), load_wreath_64(config), load_order_49_planes(config),
                     load_instances(config))
