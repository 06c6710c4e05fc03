
""" Drivers for the accuracy sweep, the recursion self-check and the timing
benchmark, independent of any output format.

Accuracy experiments expand a small simplex, with vertices on a sphere of
radius rt about r_c = (sqrt(3)/2, 0, 0), about the origin and evaluate the
series at d (sqrt(3)/2, 0, 1/2).
"""

import math
import statistics

import numpy as np

from attrs import frozen

from pyq2x import kernels, signals
from pyq2x.configloader import config
from pyq2x.exceptions import GeometryError, ToleranceError
from pyq2x.geometry import (
    ElementKind,
    SimplexElement,
    centroid,
    frame_from_vertices,
    jacobian,
    unit_normal,
)
from pyq2x.oracles import exact_potential
from pyq2x.q2x import ExpansionKind, ExpansionRequest, chain_coefficients, expand
from pyq2x.quadrature import expand_by_quadrature
from pyq2x.series import error_bound, evaluate_expansion, relative_error
from pyq2x.util import parallel_map, stopwatch

SOURCE_CENTER = np.array([math.sqrt(3) / 2, 0.0, 0.0])
SOURCE_DISTANCE = math.sqrt(3) / 2
ORIGIN = np.zeros(3)

# Shape quality below which random elements are redrawn
RANDOM_SHAPE_QUALITY = 1e-3

# Evaluation distance of the series check, in units of the source radius
SERIES_CHECK_RATIO = 3.0

# Truncation numbers compared by `cost_scaling`
SCALING_P = (20, 40)

KINDS = tuple(ExpansionKind)

@frozen
class AccuracySample:
    kind: ExpansionKind
    p: int
    d: float
    error: float
    bound: float

@frozen
class CaseResult:
    kind: ExpansionKind
    seed: int
    index: int
    recursion_error: float
    series_error: float
    series_bound: float

@frozen
class BenchSample:
    kind: ExpansionKind
    p: int
    method: str
    ns: float

@frozen
class ScalingSample:
    kind: ExpansionKind
    p_low: int
    p_high: int
    expansion_ratio: float
    recursion_ratio: float

def reference_element(element_kind, rt=0.1, density=1.0):

    """ A regular simplex inscribed in the sphere of radius `rt` about
    `SOURCE_CENTER`.
    """

    element_kind = ElementKind.parse(element_kind)

    match element_kind:
        case ElementKind.SEGMENT:
            offsets = [(1.0, 0.0, 0.0), (-1.0, 0.0, 0.0)]
        case ElementKind.TRIANGLE:
            half = math.sqrt(3) / 2
            offsets = [(1.0, 0.0, 0.0), (-0.5, half, 0.0), (-0.5, -half, 0.0)]
        case ElementKind.TETRAHEDRON:
            a = math.sqrt(2) / 3
            b = math.sqrt(2.0 / 3.0)
            offsets = [
                (1.0, 0.0, 0.0),
                (-1.0 / 3.0, 2.0 * a, 0.0),
                (-1.0 / 3.0, -a, b),
                (-1.0 / 3.0, -a, -b),
            ]

    return SimplexElement(element_kind, SOURCE_CENTER + rt * np.array(offsets), density)

def reference_point(d):
    return d * np.array([math.sqrt(3) / 2, 0.0, 0.5])

def log_spaced(d_min, d_max, steps):
    return np.geomspace(d_min, d_max, steps)

def accuracy_sweep(kind, p_list, d_values, rt=0.1, bound_constant=0.1):

    """ Relative error of the truncated series against the closed-form
    potential for every (p, d), together with its error bound.
    """

    kind = ExpansionKind.parse(kind)
    element = reference_element(kind.element_kind, rt)
    exact = [exact_potential(kind, element, reference_point(d)) for d in d_values]
    samples = []

    for p in p_list:
        coeffs = expand(element, ExpansionRequest(ORIGIN, p, kind))

        for d, value in zip(d_values, exact):
            approx = evaluate_expansion(coeffs, reference_point(d))
            bound = error_bound(kind, p, d, SOURCE_DISTANCE, bound_constant)

            samples.append(AccuracySample(kind, p, float(d), relative_error(approx, value), bound))

    return samples

def envelope_breaches(samples, margin, floor):

    """ Samples whose error exceeds max(margin * bound, floor). """

    return [s for s in samples if s.error > max(margin * s.bound, floor)]

def random_element(rng, element_kind, box=1.0, density=1.0):

    """ A simplex with vertices uniform in [-box, box]^3. Elements of poor
    shape are redrawn.
    """

    element_kind = ElementKind.parse(element_kind)

    while True:
        vertices = rng.uniform(-box, box, size=(element_kind.vertex_count, 3))
        element = SimplexElement(element_kind, vertices, density)
        quality = RANDOM_SHAPE_QUALITY * element.max_edge_length() ** element.dim

        try:
            if jacobian(element) > quality:
                return element
        except GeometryError:
            continue

def random_center(rng, radius=2.0):

    """ A point uniform in the ball of `radius` about the origin. """

    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)

    return radius * rng.uniform() ** (1.0 / 3.0) * direction

def coefficient_difference(a, b):

    """ The largest coefficient-wise difference of two triangular tables,
    each degree normalized by its largest coefficient magnitude.
    """

    worst = 0.0

    for n in range(a.p):
        scale = max(np.max(np.abs(a.degree(n))), np.max(np.abs(b.degree(n))))

        if scale > 0:
            worst = max(worst, float(np.max(np.abs(a.degree(n) - b.degree(n)))) / scale)

    return worst

def case_rng(seed, kind, index):

    """ The generator of one self-check case, reproducible from
    (seed, kind, index) alone.
    """

    return np.random.default_rng((seed, KINDS.index(kind), index))

def check_case(kind, seed, index, p, element=None, series_constant=None):

    """ Expand a random element recursively and by quadrature, compare the
    coefficients, and compare the series against the closed-form potential
    at SERIES_CHECK_RATIO source radii from the center.

    The series is held to the error bound with constant `series_constant`,
    by default the configured bound constant times the envelope margin.
    """

    kind = ExpansionKind.parse(kind)

    if series_constant is None:
        series_constant = config.bound_constant * config.envelope_margin

    rng = case_rng(seed, kind, index)

    if element is None:
        element = random_element(rng, kind.element_kind, density=rng.uniform(0.5, 2.0))

    center = random_center(rng)
    request = ExpansionRequest(center, p, kind)

    try:
        recursive = expand(element, request)
        quadrature = expand_by_quadrature(element, request)
    except GeometryError as e:
        raise GeometryError(f"{kind.value} case (seed {seed}, index {index}): {e}") from e

    radius = float(np.max(np.linalg.norm(element.vertices - center, axis=1)))
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    d = SERIES_CHECK_RATIO * radius
    r = center + d * direction

    approx = evaluate_expansion(recursive, r)
    exact = exact_potential(kind, element, r)

    if kind is ExpansionKind.M:

        # Dipole layers may vanish at the evaluation point; measure against
        # the monopole scale of the sheet instead.

        distance = float(np.linalg.norm(r - centroid(element)))
        scale = abs(element.density) * jacobian(element) / (8 * math.pi * distance * distance)
        series_error = abs(approx - exact) / scale
    else:
        series_error = relative_error(approx, exact)

    return CaseResult(
        kind,
        seed,
        index,
        coefficient_difference(recursive.data, quadrature.data),
        series_error,
        error_bound(kind, p, d, radius, series_constant),
    )

def run_check(kind, seed, count, p, tolerance, workers=1):

    """ Run `count` self-check cases of `kind`. Raises ToleranceError on the
    first case (in index order) outside its tolerances.
    """

    kind = ExpansionKind.parse(kind)
    results = parallel_map(lambda index: check_case(kind, seed, index, p), range(count), workers)

    for result in results:
        signals.case_checked.send(
            None,
            kind=kind,
            index=result.index,
            recursion_error=result.recursion_error,
            series_error=result.series_error,
        )

        if result.recursion_error > tolerance:
            _breach(
                "Recursion and quadrature coefficients disagree",
                result, result.recursion_error, tolerance
            )
        if result.series_error > result.series_bound:
            _breach(
                "Series differs from the closed-form potential beyond its bound",
                result, result.series_error, result.series_bound
            )

    return results

def _breach(message, result, value, tolerance):
    error = ToleranceError(
        message=message,
        kind=result.kind.value,
        seed=result.seed,
        index=result.index,
        value=value,
        tolerance=tolerance,
    )

    signals.tolerance_breached.send(None, error=error)

    raise error

def _time(fn, reps):
    samples = []

    for _ in range(reps):
        with stopwatch() as elapsed:
            fn()

        samples.append(elapsed())

    return statistics.median(samples)

def bench(kind, p_list, reps, tolerance, rt=0.1):

    """ Median wall-clock nanoseconds per expansion of the reference element,
    recursive against quadrature, for every p. Both methods are run once
    untimed and their coefficients compared before timing.
    """

    kind = ExpansionKind.parse(kind)
    element = reference_element(kind.element_kind, rt)
    samples = []

    for p in p_list:
        request = ExpansionRequest(ORIGIN, p, kind)
        difference = coefficient_difference(
            expand(element, request).data, expand_by_quadrature(element, request).data
        )

        if difference > tolerance:
            raise ToleranceError(
                message="Recursion and quadrature coefficients disagree",
                kind=kind.value,
                value=difference,
                tolerance=tolerance,
            )

        for method, fn in (("recursive", expand), ("quadrature", expand_by_quadrature)):
            ns = _time(lambda: fn(element, request), reps)
            signals.configuration_measured.send(None, kind=kind, p=p, method=method, ns=ns)

            samples.append(BenchSample(kind, p, method, ns))

    return samples

def _per_call(fn, reps, batch):
    return _time(lambda: [fn() for _ in range(batch)], reps) / batch

def _recursion_pass(kind, element):

    """ The compiled recursions behind `expand` for `kind`, as a function of
    p alone: the moment chain plus, for M, the double-layer step.
    """

    xis, etas, zs = chain_coefficients(frame_from_vertices(element, ORIGIN))
    nx, ny, nz = unit_normal(element) if kind is ExpansionKind.M else (0.0, 0.0, 0.0)

    def run(p):
        tables = kernels.moment_chain(xis, etas, zs, p)

        if kind is ExpansionKind.M:
            kernels.double_layer(tables[-1], nx, ny, nz, p)

    return run

def cost_scaling(kind, p_low=SCALING_P[0], p_high=SCALING_P[1], reps=5, batch=100, rt=0.1):

    """ Growth of the recursive expansion cost of the reference element from
    `p_low` to `p_high`, as a ScalingSample.

    `expansion_ratio` compares whole `expand` calls. `recursion_ratio`
    compares the compiled recursions alone, each less its cost at p = 1 so
    that per-call overhead cancels; constant cost per coefficient puts it
    near (p_high / p_low)^2. Every time is the median over `reps` batches of
    `batch` calls.
    """

    kind = ExpansionKind.parse(kind)
    element = reference_element(kind.element_kind, rt)
    recursion = _recursion_pass(kind, element)
    requests = {p: ExpansionRequest(ORIGIN, p, kind) for p in (p_low, p_high)}

    recursion(p_high)
    expand(element, requests[p_high])

    def recursion_ns(p):
        return _per_call(lambda: recursion(p), reps, batch)

    def expansion_ns(p):
        return _per_call(lambda: expand(element, requests[p]), reps, batch)

    fixed = recursion_ns(1)

    return ScalingSample(
        kind,
        p_low,
        p_high,
        expansion_ns(p_high) / expansion_ns(p_low),
        (recursion_ns(p_high) - fixed) / (recursion_ns(p_low) - fixed),
    )
