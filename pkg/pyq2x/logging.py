
""" Logging setup, contextual log prefixes, and progress logging of the batch
drivers through their signals.
"""

import logging

from functools import partial

from pyq2x import signals

LOG_FORMAT = "%(asctime)s %(levelname)7s: %(prefix)s%(message)s"

# The numba compiler logs every IR pass at DEBUG; its level is set apart
NUMBA_LOGGER = "numba"

_progress_receiver = None

class PrefixedLogRecord(logging.LogRecord):

    """ A LogRecord carrying a `prefix` field: the bracketed logger name, or
    nothing for the root logger.
    """

    def __init__(self, name, *args, **kwargs):
        super().__init__(name, *args, **kwargs)
        self.prefix = "" if name == "root" else f"[{name}] "

class MultilineLogRecord(PrefixedLogRecord):

    """ A PrefixedLogRecord also split into one `constituent_cls` record per
    message line, so every line of a multi-line report gets its own
    timestamp and prefix.
    """

    def __init__(self, name, level, fn, lno, msg, *args, constituent_cls=None, **kwargs):
        self.constituents = tuple(
            constituent_cls(name, level, fn, lno, line, *args, **kwargs)
            for line in str(msg).split("\n")
        )

        super().__init__(name, level, fn, lno, msg, *args, **kwargs)

class MultilineFormatter(logging.Formatter):
    def format(self, record):
        if not isinstance(record, MultilineLogRecord):
            return super().format(record)

        try:
            return "\n".join(super(MultilineFormatter, self).format(r) for r in record.constituents)
        except TypeError:

            # A placeholder and its argument ended up on different lines

            return super().format(record)

class ContextfulLogger:

    """ Forwards `critical` .. `debug` calls to the wrapped logger (the root
    logger by default), prepending a bracketed context built from the
    constructor arguments, e.g. `[check, seed=1, kind=L]`.
    """

    LOGGABLE_LEVELS = ("critical", "error", "warning", "info", "debug")

    def __init__(self, *args, logger=None, **kwargs):
        self.ctx_args = [str(arg) for arg in args]
        self.ctx_kwargs = dict(kwargs)
        self.logger = logger or logging.getLogger()

        self._prefix = self._compile_prefix()

    def amend_context(self, *args, **kwargs):
        self.ctx_args.extend(str(arg) for arg in args)
        self.ctx_kwargs |= kwargs

        self._prefix = self._compile_prefix()

    def bind(self, *args, **kwargs):

        """ A new ContextfulLogger extending this one's context, leaving this
        one unchanged.
        """

        return ContextfulLogger(
            *self.ctx_args, *args, logger=self.logger, **(self.ctx_kwargs | kwargs)
        )

    def _log(self, level, msg, *args, **kwargs):
        self.logger.log(level, f"{self._prefix} {msg}", *args, **kwargs)

    def _compile_prefix(self):
        parts = self.ctx_args + [f"{k}={v}" for k, v in self.ctx_kwargs.items()]

        return f"[{', '.join(parts)}]"

    def __getattr__(self, name):
        if name in self.LOGGABLE_LEVELS:
            return partial(self._log, getattr(logging, name.upper()))

        raise AttributeError(f"Cannot forward `{name}` to the `logging` module")

def setup_logging(level_str, extra_level_str=None, custom_extra_loggers=()):

    """ Install the multi-line record factory and formatter on the root
    logger. The numba loggers, plus any `custom_extra_loggers`, get
    `extra_level_str` (WARNING by default) instead of `level_str`.
    """

    root_logger = logging.getLogger()
    extra_level = getattr(logging, extra_level_str.upper()) if extra_level_str else logging.WARNING

    logging.setLogRecordFactory(make_log_record)

    if not root_logger.handlers:
        logging.basicConfig()

    root_logger.setLevel(getattr(logging, level_str.upper()))
    root_logger.handlers[0].setFormatter(MultilineFormatter(LOG_FORMAT))

    for name in (NUMBA_LOGGER, *custom_extra_loggers):
        logging.getLogger(name).setLevel(extra_level)

def make_log_record(name, level, fn, lno, msg, args, exc_info, func=None, sinfo=None, **kwargs):
    return MultilineLogRecord(
        name, level, None, lno, msg, args, exc_info, func, sinfo, constituent_cls=PrefixedLogRecord
    )

def log_batch_progress(make_log_string=None):

    """ Log every checked case and every timed configuration at DEBUG on the
    `pyq2x.progress` logger. Pass `make_log_string(**signal_kwargs)` to
    replace the default message. Calling again replaces the previous
    receiver.
    """

    global _progress_receiver

    make_log_string = make_log_string or make_progress_log_string
    logger = logging.getLogger("pyq2x.progress")

    def log_progress(sender, **kwargs):
        logger.debug(make_log_string(**kwargs))

    for signal in (signals.case_checked, signals.configuration_measured):
        if _progress_receiver is not None:
            signal.disconnect(_progress_receiver)

        signal.connect(log_progress, weak=False)

    _progress_receiver = log_progress

    return log_progress

def make_progress_log_string(kind, **kwargs):
    if "method" in kwargs:
        return f"{kind.value} p={kwargs['p']} {kwargs['method']}: {kwargs['ns']:.0f} ns"

    return (
        f"{kind.value} case {kwargs['index']}: recursion difference "
        f"{kwargs['recursion_error']:.3g}, series error {kwargs['series_error']:.3g}"
    )
