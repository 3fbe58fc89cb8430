"""
Group-spec mini-language.

    spec := "cyclic:" INT | "elemab:" PRIME "^" INT | "dihedral:" INT | "semidihedral:" INT
          | "quaternion:" INT | "sym:" INT | "extraspecial:27+" | "metacyclic:" INT "," INT "," INT "," INT
          | "matgroup(" PRIME "," INT "," FILE ")"
          | "semidirect(" spec "," FILE ")"
          | "direct(" spec "," spec ")" | "wreath(" spec "," spec ")"
    FILE := "@" path | a JSON array of square integer matrices

dihedral, semidihedral and quaternion take the group order.
"""
import json
import os
from typing import NamedTuple, Tuple, Union, Optional, List

import sympy

from common import common, GroupSpecError

Matrices = Tuple[Tuple[Tuple[int, ...], ...], ...]


class NamedSpec(NamedTuple):
    kind: str
    params: Tuple[int, ...]


class MatrixSource(NamedTuple):
    path: Optional[str]
    matrices: Optional[Matrices] = None

    def load(self) -> Matrices:
        if self.matrices is not None:
            return self.matrices
        try:
            data = common.load_json_file(self.path)
        except OSError as e:
            raise GroupSpecError('Cannot read generator file `{}`: {}'.format(self.path, e))
        except ValueError as e:
            raise GroupSpecError('Generator file `{}` is not valid JSON: {}'.format(self.path, e))
        return _as_matrices(data, where=self.path)


class MatGroupSpec(NamedTuple):
    p: int
    n: int
    source: MatrixSource


class SemidirectSpec(NamedTuple):
    base: 'GroupSpec'
    source: MatrixSource


class DirectSpec(NamedTuple):
    left: 'GroupSpec'
    right: 'GroupSpec'


class WreathSpec(NamedTuple):
    left: 'GroupSpec'
    right: 'GroupSpec'


GroupSpec = Union[NamedSpec, MatGroupSpec, SemidirectSpec, DirectSpec, WreathSpec]

NAMED_KINDS = ('cyclic', 'elemab', 'dihedral', 'semidihedral', 'quaternion', 'sym', 'extraspecial', 'metacyclic')


def _as_matrices(data, where: str = 'inline') -> Matrices:
    if not isinstance(data, list) or not data:
        raise GroupSpecError('Generators in {} must be a nonempty JSON array of matrices.'.format(where))
    result = []
    for matrix in data:
        if not isinstance(matrix, list) or not matrix or any(
                not isinstance(row, list) or len(row) != len(matrix) for row in matrix):
            raise GroupSpecError('Generator {} in {} is not a square matrix.'.format(matrix, where))
        if any(not isinstance(x, int) for row in matrix for x in row):
            raise GroupSpecError('Generator {} in {} has non-integer entries.'.format(matrix, where))
        result.append(tuple(tuple(row) for row in matrix))
    if len({len(m) for m in result}) != 1:
        raise GroupSpecError('Generators in {} have different dimensions.'.format(where))
    return tuple(result)


def inline_source(matrices) -> MatrixSource:
    return MatrixSource(path=None, matrices=_as_matrices([[list(row) for row in m] for m in matrices]))


def validate_named(kind: str, params: Tuple[int, ...], position: Optional[int] = None) -> NamedSpec:
    def fail(msg):
        raise GroupSpecError('{}:{} -- {}'.format(kind, ','.join(map(str, params)), msg), position)

    if kind == 'cyclic':
        if params[0] < 1:
            fail('order must be at least 1')
    elif kind == 'elemab':
        p, k = params
        if not sympy.isprime(p):
            fail('{} is not prime'.format(p))
        if k < 1:
            fail('rank must be at least 1')
    elif kind == 'dihedral':
        if params[0] < 2 or params[0] % 2:
            fail('dihedral groups have even order at least 2')
    elif kind == 'semidihedral':
        if params[0] < 16 or not common.is_power_of(params[0], 2):
            fail('semidihedral groups have order 2^k >= 16')
    elif kind == 'quaternion':
        if params[0] < 8 or not common.is_power_of(params[0], 2):
            fail('generalized quaternion groups have order 2^k >= 8')
    elif kind == 'sym':
        if params[0] < 1:
            fail('degree must be at least 1')
    elif kind == 'extraspecial':
        if params != (27,):
            fail('only extraspecial:27+ (order 27, exponent 3) is available')
    elif kind == 'metacyclic':
        m, k, r, t = params
        if m < 1 or k < 1:
            fail('m and k must be positive')
        if pow(r, k, m) != 1 % m:
            fail('r^k must be 1 modulo m')
        if (t * (r - 1)) % m:
            fail('x^t must be centralized by y')
    else:
        raise GroupSpecError('Unknown construction `{}`.'.format(kind), position)
    return NamedSpec(kind, tuple(params))


class _Parser:
    def __init__(self, text: str, base_dir: Optional[str]):
        self.text = text
        self.pos = 0
        self.base_dir = base_dir

    def error(self, msg: str):
        raise GroupSpecError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.error('expected `{}`'.format(token))
        self.pos += len(token)

    def identifier(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalpha() or self.text[self.pos] == '_'):
            self.pos += 1
        if start == self.pos:
            self.error('expected a construction name')
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == '-':
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos or self.text[start:self.pos] == '-':
            self.error('expected an integer')
        return int(self.text[start:self.pos])

    def matrix_source(self) -> MatrixSource:
        self.skip_ws()
        if self.peek() == '@':
            self.pos += 1
            start = self.pos
            depth = 0
            while self.pos < len(self.text):
                ch = self.text[self.pos]
                if ch == '(':
                    depth += 1
                elif ch == ')':
                    if depth == 0:
                        break
                    depth -= 1
                elif ch == ',' and depth == 0:
                    break
                self.pos += 1
            path = self.text[start:self.pos].strip()
            if not path:
                self.error('expected a file path after `@`')
            if self.base_dir and not os.path.isabs(path):
                path = os.path.join(self.base_dir, path)
            return MatrixSource(path=path)
        if self.peek() == '[':
            start = self.pos
            depth = 0
            while self.pos < len(self.text):
                ch = self.text[self.pos]
                depth += ch == '['
                depth -= ch == ']'
                self.pos += 1
                if depth == 0:
                    break
            try:
                data = json.loads(self.text[start:self.pos])
            except ValueError:
                self.pos = start
                self.error('malformed inline generator list')
            return MatrixSource(path=None, matrices=_as_matrices(data))
        self.error('expected `@path` or an inline matrix list')

    def spec(self) -> GroupSpec:
        start = self.pos
        name = self.identifier()
        if name in ('matgroup', 'semidirect', 'direct', 'wreath'):
            self.expect('(')
            if name == 'matgroup':
                p = self.integer()
                self.expect(',')
                n = self.integer()
                self.expect(',')
                source = self.matrix_source()
                self.expect(')')
                if not sympy.isprime(p):
                    raise GroupSpecError('matgroup field size {} is not prime'.format(p), start)
                if n < 1:
                    raise GroupSpecError('matgroup dimension must be positive', start)
                return MatGroupSpec(p, n, source)
            first = self.spec()
            self.expect(',')
            if name == 'semidirect':
                source = self.matrix_source()
                self.expect(')')
                if not (isinstance(first, NamedSpec) and first.kind == 'elemab'):
                    raise GroupSpecError('semidirect base must be an elemab group', start)
                return SemidirectSpec(first, source)
            second = self.spec()
            self.expect(')')
            return DirectSpec(first, second) if name == 'direct' else WreathSpec(first, second)
        if name not in NAMED_KINDS:
            raise GroupSpecError('Unknown construction `{}`.'.format(name), start)
        self.expect(':')
        if name == 'elemab':
            p = self.integer()
            self.expect('^')
            params = (p, self.integer())
        elif name == 'extraspecial':
            params = (self.integer(),)
            self.expect('+')
        elif name == 'metacyclic':
            params = [self.integer()]
            for _ in range(3):
                self.expect(',')
                params.append(self.integer())
            params = tuple(params)
        else:
            params = (self.integer(),)
        return validate_named(name, params, start)


def parse_group_spec(text: str, base_dir: Optional[str] = None) -> GroupSpec:
    parser = _Parser(text, base_dir)
    result = parser.spec()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error('unexpected trailing text `{}`'.format(text[parser.pos:]))
    return result


def _source_text(source: MatrixSource) -> str:
    if source.path is not None:
        return '@' + source.path
    return json.dumps([[list(row) for row in m] for m in source.matrices], separators=(',', ':'))


def spec_to_text(spec: GroupSpec) -> str:
    if isinstance(spec, NamedSpec):
        if spec.kind == 'elemab':
            return 'elemab:{}^{}'.format(*spec.params)
        if spec.kind == 'extraspecial':
            return 'extraspecial:27+'
        return '{}:{}'.format(spec.kind, ','.join(map(str, spec.params)))
    if isinstance(spec, MatGroupSpec):
        return 'matgroup({},{},{})'.format(spec.p, spec.n, _source_text(spec.source))
    if isinstance(spec, SemidirectSpec):
        return 'semidirect({},{})'.format(spec_to_text(spec.base), _source_text(spec.source))
    if isinstance(spec, DirectSpec):
        return 'direct({},{})'.format(spec_to_text(spec.left), spec_to_text(spec.right))
    if isinstance(spec, WreathSpec):
        return 'wreath({},{})'.format(spec_to_text(spec.left), spec_to_text(spec.right))
    raise TypeError('Not a group spec: {!r}'.format(spec))


def semidirect_spec(q: int, n: int, matrices: List) -> SemidirectSpec:
    return SemidirectSpec(validate_named('elemab', (q, n)), inline_source(matrices))


def parse_matrix_source(text: str, base_dir: Optional[str] = None) -> MatrixSource:
    parser = _Parser(text, base_dir)
    source = parser.matrix_source()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error('unexpected trailing text `{}`'.format(text[parser.pos:]))
    return source
