import csv
import logging
import sys

from contextlib import contextmanager

import marshmallow

from pyq2x.configloader import config
from pyq2x.exceptions import ValidationError
from pyq2x.logging import ContextfulLogger

class Command:

    """ Base class for CLI commands. Subclasses declare their own arguments
    in `add_arguments` and implement `run`, returning the process exit
    status.
    """

    HELP = None

    def __init__(self, args):
        self.args = args
        self.logger = ContextfulLogger(
            self.name, logger=logging.getLogger(f"pyq2x.commands.{self.name}")
        )

    @property
    def name(self):
        return type(self).__module__.rsplit(".", 1)[-1]

    @classmethod
    def add_arguments(cls, parser):
        pass

    def run(self):
        raise NotImplementedError

    def permit_arguments(self, schema, payload):

        """ Validate parsed arguments against a Marshmallow schema, return
        the loaded result. Cast validation errors to our ValidationError
        subclass.
        """

        try:
            return schema.load(payload)
        except marshmallow.exceptions.ValidationError as e:
            e.__class__ = ValidationError
            raise

    @property
    def workers(self):
        return self.args.workers or config.workers

    @contextmanager
    def output(self):
        path = self.args.out

        if not path or path == "-":
            yield sys.stdout
            sys.stdout.flush()
        else:
            with open(path, "w", encoding="utf-8", newline="") as f:
                yield f

    def write_csv(self, header, rows):

        """ Write a header and rows; floats with `config.csv_digits`
        significant digits.
        """

        with self.output() as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)

            for row in rows:
                writer.writerow([self._format(value) for value in row])

    @staticmethod
    def _format(value):
        if isinstance(value, float):
            return f"{value:.{config.csv_digits}g}"

        return value
