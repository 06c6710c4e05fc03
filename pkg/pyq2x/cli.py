
""" The `pyq2x` command-line entry point. Exit status: 0 on success, 1 on a
tolerance, geometry or kind failure, 2 on usage, configuration or input
parse errors.
"""

import logging
import sys

from pyq2x.args import Args
from pyq2x.commands import command_class
from pyq2x.configloader import ConfigLoader, config
from pyq2x.exceptions import Q2XError, ValidationError
from pyq2x.logging import log_batch_progress, setup_logging

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

logger = logging.getLogger("pyq2x")

def load_config(parsed_args):
    overrides = {}

    if parsed_args.loglevel:
        overrides["loglevel"] = parsed_args.loglevel.lower()
    if parsed_args.extra_loglevel:
        overrides["extra_loglevel"] = parsed_args.extra_loglevel.lower()
    if parsed_args.workers is not None:
        overrides["workers"] = parsed_args.workers

    ConfigLoader(envvar="Q2X_ENV", overwrite_prefix="Q2X_").load(**overrides)

def main(argv=None):
    parsed_args = Args(argv=sys.argv[1:] if argv is None else list(argv)).parsed_args

    try:
        load_config(parsed_args)
    except ValidationError as e:
        print(f"Invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(config.loglevel, config.extra_loglevel)
    log_batch_progress()

    logger.debug("Effective configuration: %s", config.as_dict())

    command = command_class(parsed_args.command)(parsed_args)

    try:
        return command.run()
    except ValidationError as e:
        logger.debug("Input rejected", exc_info=True)
        print(f"Invalid input: {e}", file=sys.stderr)

        return EXIT_USAGE
    except OSError as e:
        print(f"Cannot read input: {e}", file=sys.stderr)

        return EXIT_USAGE
    except Q2XError as e:
        logger.debug("Command failed", exc_info=True)
        print(f"{type(e).__name__}: {e}", file=sys.stderr)

        return EXIT_FAILURE

def run():
    sys.exit(main())
