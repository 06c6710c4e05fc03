import logging
import threading
import time
import unittest

from unittest.mock import Mock

from pyq2x import signals
from pyq2x.commands import command_class
from pyq2x.commands.command import Command
from pyq2x.commands.expand import ExpandCommand
from pyq2x.logging import (
    ContextfulLogger,
    MultilineFormatter,
    log_batch_progress,
    make_log_record,
    make_progress_log_string,
)
from pyq2x.q2x import ExpansionKind
from pyq2x.util import make_namespace_importer, parallel_map, stopwatch

class TestNamespaceImporter(unittest.TestCase):
    def test_command_classes(self):
        self.assertIs(command_class("expand"), ExpandCommand)

        for name in ("accuracy", "bench", "check"):
            self.assertTrue(issubclass(command_class(name), Command))

    def test_instantiation(self):
        importer = make_namespace_importer("pyq2x.commands.{code}", Command)
        command = importer("expand", Mock(workers=None))

        self.assertIsInstance(command, ExpandCommand)
        self.assertEqual(command.name, "expand")

    def test_missing(self):
        with self.assertRaises(ModuleNotFoundError):
            command_class("integrate")
        with self.assertRaises(ImportError):
            command_class("command")

class TestParallelMap(unittest.TestCase):
    def test_order_is_kept(self):
        def slow_square(x):
            time.sleep(0.001 * (10 - x))

            return x * x

        self.assertEqual(parallel_map(slow_square, range(10), workers=4), [x * x for x in range(10)])
        self.assertEqual(parallel_map(slow_square, range(10)), [x * x for x in range(10)])

    def test_serial_stays_on_calling_thread(self):
        threads = parallel_map(lambda _: threading.get_ident(), range(3), workers=1)

        self.assertEqual(set(threads), {threading.get_ident()})

    def test_empty(self):
        self.assertEqual(parallel_map(abs, [], workers=3), [])

class TestStopwatch(unittest.TestCase):
    def test_elapsed(self):
        with stopwatch() as elapsed:
            time.sleep(0.002)
            first = elapsed()

        self.assertGreaterEqual(first, 2_000_000)
        self.assertGreaterEqual(elapsed(), first)

class TestLogging(unittest.TestCase):
    def test_contextful_prefix(self):
        logger = Mock()
        contextful = ContextfulLogger("check", logger=logger, seed=3)

        contextful.info("Checking")
        contextful.amend_context(p=10)
        contextful.warning("Slow case %d", 7)

        logger.log.assert_any_call(logging.INFO, "[check, seed=3] Checking")
        logger.log.assert_any_call(logging.WARNING, "[check, seed=3, p=10] Slow case %d", 7)

    def test_bound_context(self):
        logger = Mock()
        parent = ContextfulLogger("check", logger=logger, seed=3)
        child = parent.bind(kind="L")

        child.info("Passed")
        parent.info("Done")

        logger.log.assert_any_call(logging.INFO, "[check, seed=3, kind=L] Passed")
        logger.log.assert_any_call(logging.INFO, "[check, seed=3] Done")

    def test_unknown_level(self):
        with self.assertRaises(AttributeError):
            ContextfulLogger("bench").trace("nothing")

    def test_multiline_records(self):
        formatter = MultilineFormatter("%(levelname)s %(prefix)s%(message)s")
        record = make_log_record("pyq2x.check", logging.ERROR, None, 1, "first\nsecond", (), None)

        self.assertEqual(formatter.format(record), "ERROR [pyq2x.check] first\nERROR [pyq2x.check] second")

    def test_root_records_are_unprefixed(self):
        formatter = MultilineFormatter("%(prefix)s%(message)s")
        record = make_log_record("root", logging.INFO, None, 1, "plain", (), None)

        self.assertEqual(formatter.format(record), "plain")

    def test_stranded_placeholders(self):
        formatter = MultilineFormatter("%(message)s")
        record = make_log_record("pyq2x", logging.INFO, None, 1, "a=%s\nb=%s", ("x", "y"), None)

        self.assertEqual(formatter.format(record), "a=x\nb=y")

class TestProgressLogging(unittest.TestCase):
    def tearDown(self):
        log_batch_progress()

    def test_signals_reach_the_message_factory(self):
        make_log_string = Mock(return_value="")

        log_batch_progress(make_log_string)
        log_batch_progress(make_log_string)
        signals.configuration_measured.send(None, kind=ExpansionKind.N, p=8, method="recursive", ns=1.0)

        make_log_string.assert_called_once_with(kind=ExpansionKind.N, p=8, method="recursive", ns=1.0)

    def test_default_messages(self):
        self.assertEqual(
            make_progress_log_string(ExpansionKind.L, p=16, method="quadrature", ns=1234.4),
            "L p=16 quadrature: 1234 ns",
        )
        self.assertEqual(
            make_progress_log_string(
                ExpansionKind.K, index=4, recursion_error=2.5e-15, series_error=1e-6
            ),
            "K case 4: recursion difference 2.5e-15, series error 1e-06",
        )

if __name__ == "__main__":
    unittest.main()
