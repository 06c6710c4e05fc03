from .command_test_case import CommandResult, CommandTestCase
from .test_runner import TestRunner
