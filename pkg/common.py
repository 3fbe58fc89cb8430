import json
from math import gcd
from itertools import combinations
from typing import List, Iterable, Sequence, Tuple, Hashable, Dict, Optional, Iterator, Any
from collections import OrderedDict
from fractions import Fraction

import sympy


Partition = Tuple[Tuple[int, ...], ...]


class ScEngineError(Exception):
    pass


class GroupSpecError(ScEngineError, ValueError):
    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = '{} (at position {})'.format(message, position)
        super().__init__(message)
        self.position = position


class BoundExceededError(ScEngineError):
    pass


class ArithmeticDomainError(ScEngineError, ValueError):
    pass


class VerificationError(ScEngineError):
    pass


class UnsupportedModeError(ScEngineError):
    pass


class HypothesisError(ScEngineError):
    pass


class common:

    @staticmethod
    def get_unique_list(lst: Iterable) -> list:
        return list(OrderedDict(((item, 0) for item in lst)).keys())

    @staticmethod
    def load_json_file(path: str):
        with open(path, 'r') as file:
            return json.load(file)

    @staticmethod
    def dump_json(obj, path: Optional[str] = None) -> str:
        text = json.dumps(obj, indent=2, sort_keys=False)
        if path is not None:
            with open(path, 'w') as file:
                file.write(text + '\n')
        return text

    @staticmethod
    def rational_to_str(value: Fraction) -> str:
        value = Fraction(value)
        return '{}/{}'.format(value.numerator, value.denominator)

    @staticmethod
    def rational_from_str(text: str) -> Fraction:
        return Fraction(text)

    # Partitions are tuples of sorted tuples, blocks ordered by minimum member.
    @staticmethod
    def canonical_partition(blocks: Iterable[Iterable[int]]) -> Partition:
        result = [tuple(sorted(block)) for block in blocks]
        if any(len(block) == 0 for block in result):
            raise ValueError('Partition blocks must be nonempty.')
        result.sort(key=lambda block: block[0])
        return tuple(result)

    @staticmethod
    def check_partition(blocks: Partition, universe_size: int) -> None:
        seen = sorted(item for block in blocks for item in block)
        if seen != list(range(universe_size)):
            raise ValueError('Blocks {} do not partition {} items.'.format(blocks, universe_size))

    @staticmethod
    def block_index_map(blocks: Partition) -> Dict[int, int]:
        return {item: block_idx for block_idx, block in enumerate(blocks) for item in block}

    @staticmethod
    def partition_from_labels(labels: Sequence[Hashable]) -> Partition:
        by_label = OrderedDict()
        for item, label in enumerate(labels):
            by_label.setdefault(label, []).append(item)
        return common.canonical_partition(by_label.values())

    @staticmethod
    def join_partitions(first: Partition, second: Partition) -> Partition:
        parent = {item: item for block in first for item in block}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for blocks in (first, second):
            for block in blocks:
                root = find(block[0])
                for item in block[1:]:
                    other = find(item)
                    if other != root:
                        parent[other] = root
        return common.partition_from_labels([find(item) for item in sorted(parent)])

    @staticmethod
    def is_union_refinement(fine: Partition, coarse: Partition) -> bool:
        """True iff every block of `coarse` is a union of blocks of `fine`."""
        coarse_of = common.block_index_map(coarse)
        return all(len({coarse_of[item] for item in block}) == 1 for block in fine)

    @staticmethod
    def set_partitions(items: Sequence[int]) -> Iterator[Partition]:
        """All set partitions of `items` in restricted-growth-string order."""
        n = len(items)
        if n == 0:
            yield ()
            return
        growth = [0] * n
        maxima = [0] * n
        while True:
            blocks: Dict[int, List[int]] = {}
            for item, label in zip(items, growth):
                blocks.setdefault(label, []).append(item)
            yield common.canonical_partition(blocks.values())
            i = n - 1
            while i > 0 and growth[i] == maxima[i - 1] + 1:
                i -= 1
            if i == 0:
                return
            growth[i] += 1
            maxima[i] = max(maxima[i - 1], growth[i])
            for j in range(i + 1, n):
                growth[j] = 0
                maxima[j] = maxima[i]

    @staticmethod
    def subsets_containing(first: int, others: Sequence[int]) -> Iterator[Tuple[int, ...]]:
        for size in range(len(others) + 1):
            for chosen in combinations(others, size):
                yield (first,) + chosen

    @staticmethod
    def prime_power_parts(n: int) -> Tuple[int, int]:
        """Returns (p, k) if n = p^k with k >= 1, otherwise raises ValueError."""
        factors = sympy.factorint(n)
        if len(factors) != 1:
            raise ValueError('{} is not a prime power.'.format(n))
        (p, k), = factors.items()
        return int(p), int(k)

    @staticmethod
    def is_power_of(n: int, p: int) -> bool:
        while n % p == 0 and n > 1:
            n //= p
        return n == 1

    @staticmethod
    def p_part(n: int, p: int) -> int:
        part = 1
        while n % p == 0:
            n //= p
            part *= p
        return part

    @staticmethod
    def lcm(a: int, b: int) -> int:
        return a * b // gcd(a, b)

    @staticmethod
    def to_jsonable(value: Any) -> Any:
        if hasattr(value, 'to_json'):
            return value.to_json()
        if isinstance(value, Fraction):
            return common.rational_to_str(value)
        if isinstance(value, dict):
            return {str(key): common.to_jsonable(val) for key, val in value.items()}
        if isinstance(value, (list, tuple, set, frozenset)):
            items = sorted(value) if isinstance(value, (set, frozenset)) else value
            return [common.to_jsonable(item) for item in items]
        if hasattr(value, 'item') and not isinstance(value, (str, bytes)):
            return value.item()
        return value
