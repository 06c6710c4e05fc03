import argparse
import logging
import os
import random
import re
import sys
import unittest

from attrs import define

from pyq2x.configloader import ConfigLoader
from pyq2x.logging import setup_logging

@define
class TestRunner:

    """ Discovers, selects, shuffles and runs the `test_*.py` suites under
    `test_dir`, after loading the `env` configuration environment (or the
    one named in `$env_env_var`). Logging stays disabled unless
    `--loglevel` is given; run with `--help` for the remaining options.

    Test case classes may set:

    - NONRUNNABLE_BASE_CLASS - never run the class's own tests.
    - TIMING - the tests assert wall-clock ratios and are left out by
      `--skip-timing`, e.g. on loaded machines.

    Exits with 0 when every test passes, 1 on failures and 2 when a suite
    cannot be imported.
    """

    env: str = "test"
    env_env_var: str = "Q2X_ENV"
    test_dir: str = "./tests"

    def run(self):
        args = self._parse_command_line()

        os.environ.setdefault(self.env_env_var, self.env)
        ConfigLoader(envvar=self.env_env_var, overwrite_prefix="Q2X_").load()

        if args.loglevel:
            setup_logging(args.loglevel, args.extra_loglevel)
        else:
            logging.disable()

        self._seed_shuffle(args.random_seed)

        suite = self._discover()
        selected = [t for t in self._flatten(suite) if self._is_selected(t, args)]

        random.shuffle(selected)

        result = unittest.TextTestRunner(verbosity=(2 if args.verbose else 1)).run(
            unittest.TestSuite(selected)
        )

        raise SystemExit(0 if result.wasSuccessful() else 1)

    def _discover(self):
        loader = unittest.defaultTestLoader
        suite = loader.discover(self.test_dir, pattern="test_*.py")

        if loader.errors:
            print(loader.errors[0], file=sys.stderr)

            raise SystemExit(2)

        return suite

    def _flatten(self, suite):
        for item in suite:
            if isinstance(item, unittest.TestSuite):
                yield from self._flatten(item)
            elif isinstance(item, unittest.TestCase):
                yield item
            else:
                raise TypeError(f"Encountered a bad TestSuite member ({type(item).__name__})")

    @staticmethod
    def _is_selected(test_case, args):
        cls = type(test_case)

        if cls.__dict__.get("NONRUNNABLE_BASE_CLASS", False):
            return False
        if args.skip_timing and getattr(cls, "TIMING", False):
            return False

        return not args.filter or re.search(args.filter, test_case.id()) is not None

    def _parse_command_line(self):
        parser = argparse.ArgumentParser(description="Run the pyq2x test suites")

        parser.add_argument(
            "-f", "--filter", type=str,
            help="Only run tests whose fully qualified name matches the given regex"
        )
        parser.add_argument(
            "-l", "--loglevel", type=str, help="Enable logging with the given log level"
        )
        parser.add_argument(
            "--extra-loglevel", type=str, help="Log level for the numba compiler loggers"
        )
        parser.add_argument("-r", "--random-seed", type=int, help="Seed for shuffling test cases")
        parser.add_argument(
            "--skip-timing", action="store_true", help="Leave out tests asserting wall-clock ratios"
        )
        parser.add_argument("-v", "--verbose", action="store_true", help="Increase verbosity")

        return parser.parse_args()

    @staticmethod
    def _seed_shuffle(seed=None):
        if seed is None:
            seed = random.randint(0, 9999)

        random.seed(seed)

        print(f"Using random seed {seed} for shuffling test cases", file=sys.stderr)
