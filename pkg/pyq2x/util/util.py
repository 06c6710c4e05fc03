import importlib
import inspect
import time

from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

def make_namespace_importer(module_template, subclass_of, return_class=False):

    """ Make a factory resolving a short code, e.g. a command name, to a class.

    The factory imports `module_template.format(code=code)` and picks the
    first class defined in that module which strictly subclasses
    `subclass_of`. It returns an instance built from its remaining arguments,
    or the class itself with `return_class`.

    A missing module surfaces as ModuleNotFoundError, a module without such
    a class as ImportError.
    """

    def import_by_code(code, *args, **kwargs):
        module_name = module_template.format(code=code)
        module = importlib.import_module(module_name)

        def cls_filter(m):
            return inspect.isclass(m) \
                and issubclass(m, subclass_of) \
                and m is not subclass_of \
                and m.__module__ == module_name

        try:
            cls = inspect.getmembers(module, cls_filter)[0][1]
        except IndexError:
            raise ImportError(f"Cannot find a {subclass_of.__name__} subclass in {module_name}")

        if return_class:
            return cls

        return cls(*args, **kwargs)

    return import_by_code

@contextmanager
def stopwatch():

    """ A context manager for measuring elapsed wall-clock time. Yields a
    function returning the nanoseconds elapsed since entering the context.
    """

    started_at = time.perf_counter_ns()

    def measure():
        return time.perf_counter_ns() - started_at

    yield measure

def parallel_map(fn, items, workers=1):

    """ `map` over `items`, on a thread pool of `workers` threads when there
    is more than one. Results are returned in input order.
    """

    if workers <= 1:
        return [fn(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
