
""" Command-line argument parsing. Provides the options common to every
command and one subparser per command, each populated by the command class
itself.
"""

import argparse
import sys

from attrs import define, field

COMMANDS = ("accuracy", "check", "bench", "expand")

def int_list(value):

    """ Parse a comma-separated list of integers. An empty string yields an
    empty list, left for the command to reject.
    """

    try:
        return [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Not a comma-separated list of integers: {value!r}")

def point(value):
    try:
        coordinates = [float(item) for item in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Not a point x,y,z: {value!r}")

    if len(coordinates) != 3:
        raise argparse.ArgumentTypeError(f"Expected three coordinates, got {len(coordinates)}")

    return coordinates

@define
class Args:
    argv: list = field(factory=lambda: sys.argv[1:])
    parser_args: dict = field(factory=dict)
    _parser: argparse.ArgumentParser = field(init=False, default=None)
    _parsed_args: argparse.Namespace = field(init=False, default=None)

    @property
    def parser(self):
        if not self._parser:
            defaults = dict(
                prog="pyq2x",
                description="Multipole expansion coefficients of layer potentials over simplices",
            )

            self._parser = argparse.ArgumentParser(**(defaults | self.parser_args))
            self._add_commands()

        return self._parser

    @property
    def parsed_args(self):

        """ Parse the command line. Usage errors exit with status 2. """

        if not self._parsed_args:
            self._parsed_args = self.parser.parse_args(self.argv)

        return self._parsed_args

    def add_common_arguments(self, parser):
        parser.add_argument(
            "-l", "--loglevel", type=str, help="Log level, per configuration by default"
        )
        parser.add_argument(
            "--extra-loglevel", type=str, help="Log level for the numba compiler loggers"
        )
        parser.add_argument(
            "-w", "--workers", type=int, help="Worker threads, per configuration by default"
        )
        parser.add_argument(
            "-o", "--out", type=str, help="Output file, standard output by default"
        )

    def _add_commands(self):
        from pyq2x.commands import command_class

        subparsers = self._parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

        for name in COMMANDS:
            cls = command_class(name)
            subparser = subparsers.add_parser(name, help=cls.HELP, description=cls.HELP)

            self.add_common_arguments(subparser)
            cls.add_arguments(subparser)
