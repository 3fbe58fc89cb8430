from typing import Optional, List
import logging
from argparse import ArgumentParser
import sys
import os
import multiprocessing


class Config:
    ALL_SECTIONS = ('gl4_3_subgroups', 'wreath_64', 'order_49_planes', 'instances')

    @classmethod
    def arguments_parser(cls) -> ArgumentParser:
        parser = ArgumentParser(prog='scengine',
                                description='Supercharacter and super-Brauer character theories of small groups.')
        parser.add_argument('--json', dest='json_output', action='store_true',
                            help='print the result as JSON on standard output')
        parser.add_argument("-v", "--verbose", dest="verbose_mode", type=int, required=False, default=1,
                            help="verbose mode (should be in {0,1,2}).")
        parser.add_argument("-lp", "--logs-path", dest="logs_path", metavar="FILE", required=False,
                            help="path to store logs into. if not given logs are not saved to file.")
        parser.add_argument("-w", "--workers", dest="num_workers", type=int, required=False, default=None,
                            help="number of worker processes (default: cpu count).")
        parser.add_argument("--data-dir", dest="data_dir", metavar="DIR", required=False,
                            help="directory holding the embedded table files.")
        parser.add_argument("--seed", dest="dixon_seed", type=int, required=False, default=None,
                            help="seed for the random eigenspace splitting of the character table computation.")

        subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
        subparsers.required = True

        sct = subparsers.add_parser('sct', help='enumerate the supercharacter theories of a group')
        sct.add_argument('spec', help='group spec, e.g. "sym:3"')

        sbt = subparsers.add_parser('sbt', help='count the super-Brauer character theories of a group')
        sbt.add_argument('spec', help='group spec')
        sbt.add_argument('--p', dest='prime', type=int, required=True, help='the prime p')

        orbits = subparsers.add_parser('orbits', help='orbits of a linear action on vectors and characters')
        orbits.add_argument('action', help='"q:FILE" or a semidirect(...) spec whose FILE holds the generators')

        chartab = subparsers.add_parser('chartab', help='exact character table of a group')
        chartab.add_argument('spec', help='group spec')

        invariant = subparsers.add_parser('invariant', help='invariant supercharacter theories of elemab:q^n')
        invariant.add_argument('spec', help='elementary abelian group spec, e.g. "elemab:3^2"')
        invariant.add_argument('--action', dest='action_path', metavar='FILE', required=True,
                               help='JSON file of generator matrices')

        verify = subparsers.add_parser('verify', help='re-derive the embedded classification tables and instances')
        verify.add_argument('--section', dest='sections', action='append', choices=cls.ALL_SECTIONS,
                            help='restrict to a section (repeatable)')
        verify.add_argument('--junit', dest='junit_path', metavar='FILE', required=False,
                            help='also write a JUnit XML report')
        return parser

    def set_defaults(self):
        self.ORDER_BOUND = int(os.environ.get('SCENGINE_ORDER_BOUND', 20000))
        self.MAX_TABLE_CLASSES = 40
        self.MAX_SCT_CLASSES = 14
        self.MAX_INVARIANT_ORBITS = 12
        self.MAX_VECTORS = 10000
        self.DIXON_SEED = 20240611
        self.NUM_WORKERS = multiprocessing.cpu_count()
        self.DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
        self.VERBOSE_MODE = 0

    def load_from_args(self, argv: Optional[List[str]] = None):
        args = self.arguments_parser().parse_args(argv)
        # Automatically filled, do not edit:
        self.COMMAND = args.command
        self.JSON_OUTPUT = args.json_output
        self.VERBOSE_MODE = args.verbose_mode
        self.LOGS_PATH = args.logs_path
        if args.num_workers is not None:
            self.NUM_WORKERS = args.num_workers
        if args.data_dir:
            self.DATA_DIR = args.data_dir
        if args.dixon_seed is not None:
            self.DIXON_SEED = args.dixon_seed
        self.GROUP_SPEC = getattr(args, 'spec', None)
        self.PRIME = getattr(args, 'prime', None)
        self.ACTION = getattr(args, 'action', None) or getattr(args, 'action_path', None)
        self.SECTIONS = list(getattr(args, 'sections', None) or self.ALL_SECTIONS)
        self.JUNIT_PATH = getattr(args, 'junit_path', None)

    def __init__(self, set_defaults: bool = False, load_from_args: bool = False, verify: bool = False,
                 argv: Optional[List[str]] = None):
        self.ORDER_BOUND: int = 0
        self.MAX_TABLE_CLASSES: int = 0
        self.MAX_SCT_CLASSES: int = 0
        self.MAX_INVARIANT_ORBITS: int = 0
        self.MAX_VECTORS: int = 0
        self.DIXON_SEED: int = 0
        self.NUM_WORKERS: int = 1
        self.DATA_DIR: str = ''

        # Automatically filled by `args`.
        self.COMMAND: Optional[str] = None
        self.GROUP_SPEC: Optional[str] = None
        self.PRIME: Optional[int] = None
        self.ACTION: Optional[str] = None
        self.SECTIONS: List[str] = list(self.ALL_SECTIONS)
        self.JSON_OUTPUT: bool = False
        self.JUNIT_PATH: Optional[str] = None
        self.VERBOSE_MODE: int = 0
        self.LOGS_PATH: Optional[str] = None

        self.__logger: Optional[logging.Logger] = None

        if set_defaults:
            self.set_defaults()
        if load_from_args:
            self.load_from_args(argv)
        if verify:
            self.verify()

    def verify(self):
        for name in ('ORDER_BOUND', 'MAX_TABLE_CLASSES', 'MAX_SCT_CLASSES', 'MAX_INVARIANT_ORBITS', 'MAX_VECTORS'):
            if getattr(self, name) <= 0:
                raise ValueError("config.{name} must be positive (got {value}).".format(
                    name=name, value=getattr(self, name)))
        if self.NUM_WORKERS < 1:
            raise ValueError("config.NUM_WORKERS must be at least 1.")
        unknown = set(self.SECTIONS) - set(Config.ALL_SECTIONS)
        if unknown:
            raise ValueError("Unknown verification sections: {}.".format(sorted(unknown)))
        if self.COMMAND == 'sbt' and (self.PRIME is None or self.PRIME < 2):
            raise ValueError("`sbt` requires a prime --p.")

    def data_path(self, file_name: str) -> str:
        return os.path.join(self.DATA_DIR, file_name)

    def __iter__(self):
        for attr_name in dir(self):
            if attr_name.startswith("_") or not attr_name.isupper():
                continue
            attr_value = getattr(self, attr_name, None)
            if callable(attr_value):
                continue
            yield attr_name, attr_value

    def get_logger(self) -> logging.Logger:
        if self.__logger is None:
            self.__logger = logging.getLogger('scengine')
            self.__logger.setLevel(logging.DEBUG if self.VERBOSE_MODE >= 2 else logging.INFO)
            self.__logger.handlers = []
            self.__logger.propagate = 0

            formatter = logging.Formatter('%(asctime)s %(levelname)-8s %(message)s')

            if self.VERBOSE_MODE >= 1:
                # stdout is reserved for the JSON document when one is requested.
                ch = logging.StreamHandler(sys.stderr if self.JSON_OUTPUT else sys.stdout)
                ch.setLevel(logging.DEBUG if self.VERBOSE_MODE >= 2 else logging.INFO)
                ch.setFormatter(formatter)
                self.__logger.addHandler(ch)

            if self.LOGS_PATH:
                fh = logging.FileHandler(self.LOGS_PATH)
                fh.setLevel(logging.INFO)
                fh.setFormatter(formatter)
                self.__logger.addHandler(fh)

        return self.__logger

    def log(self, msg):
        self.get_logger().info(msg)

    def warn(self, msg):
        self.get_logger().warning(msg)


def default_config() -> Config:
    return Config(set_defaults=True)
