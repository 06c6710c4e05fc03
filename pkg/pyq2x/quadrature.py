
""" Gauss quadrature over unit simplices and the quadrature-based expansion
baseline.
"""

import logging
import math

from functools import lru_cache

import numpy as np

from attrs import field, frozen

from pyq2x.geometry import frame_from_vertices, unit_normal
from pyq2x.harmonics import TriangularCoeffs, regular_tilde_batch
from pyq2x.q2x import ExpansionKind, assemble, check_compatible, double_layer_moments

NEWTON_TOLERANCE = 1e-15
NEWTON_MAX_ITERATIONS = 100

logger = logging.getLogger(__name__)

def _readonly(array):
    array = np.array(array, dtype=np.float64)
    array.flags.writeable = False

    return array

@frozen(eq=False)
class QuadratureRule:

    """ Nodes inside the closed unit simplex of dimension `dim`, one row of
    (u[, v[, w]]) per node, and weights summing to its measure. Exact for
    polynomials of total degree up to `exact_degree`.
    """

    dim: int
    nodes: np.ndarray = field(converter=_readonly, repr=False)
    weights: np.ndarray = field(converter=_readonly, repr=False)
    exact_degree: int

    @property
    def size(self):
        return self.weights.shape[0]

    def integrate(self, values):

        """ Weighted sum over the leading (node) axis of `values`. """

        return self.weights @ values

def _legendre(x, n):

    """ P_n(x) and P_n'(x) by the three-term recursion. """

    p_prev = np.ones_like(x)
    p = x.copy()

    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k

    if n == 0:
        return p_prev, np.zeros_like(x)

    return p, n * (x * p - p_prev) / (x * x - 1)

@lru_cache
def gauss_legendre_unit(n):

    """ The n-point Gauss-Legendre rule mapped to [0, 1]. Roots of P_n are
    found by Newton iteration from cos(pi (k - 1/4) / (n + 1/2)).
    """

    if int(n) != n or n < 1:
        raise ValueError(f"Gauss-Legendre rules need at least one node, got {n}")

    k = np.arange(1, n + 1)
    x = np.cos(math.pi * (k - 0.25) / (n + 0.5))

    for _ in range(NEWTON_MAX_ITERATIONS):
        p, dp = _legendre(x, n)
        step = p / dp
        x = x - step

        if np.max(np.abs(step)) <= NEWTON_TOLERANCE:
            break
    else:
        logger.debug("Newton iteration for %d Legendre roots did not settle", n)

    _, dp = _legendre(x, n)
    weights = 2.0 / ((1.0 - x * x) * dp * dp)

    return QuadratureRule(1, (0.5 * (1.0 - x))[:, None], 0.5 * weights, 2 * n - 1)

def _ceil_half(value):
    return -(-value // 2)

@lru_cache
def simplex_rule(dim, target_degree):

    """ A collapsed tensor-product Gauss rule on the unit simplex. The
    Duffy factors (1-u) and (1-u-v) raise the polynomial degree seen by the
    outer directions, so those directions take the extra nodes.
    """

    if target_degree < 0:
        raise ValueError(f"Target degree must be non-negative, got {target_degree}")

    d = target_degree

    match dim:
        case 1:
            return gauss_legendre_unit(max(1, _ceil_half(d + 1)))
        case 2:
            rule_u = gauss_legendre_unit(_ceil_half(d + 2))
            rule_t = gauss_legendre_unit(max(1, _ceil_half(d + 1)))

            u, t = (g.ravel() for g in np.meshgrid(rule_u.nodes[:, 0], rule_t.nodes[:, 0], indexing="ij"))
            wu, wt = (g.ravel() for g in np.meshgrid(rule_u.weights, rule_t.weights, indexing="ij"))

            v = (1.0 - u) * t
            nodes = np.column_stack((u, v))
            weights = wu * wt * (1.0 - u)
        case 3:
            rule_u = gauss_legendre_unit(_ceil_half(d + 3))
            rule_t = gauss_legendre_unit(_ceil_half(d + 2))
            rule_s = gauss_legendre_unit(max(1, _ceil_half(d + 1)))

            grids = np.meshgrid(rule_u.nodes[:, 0], rule_t.nodes[:, 0], rule_s.nodes[:, 0], indexing="ij")
            u, t, s = (g.ravel() for g in grids)
            wgrids = np.meshgrid(rule_u.weights, rule_t.weights, rule_s.weights, indexing="ij")
            wu, wt, ws = (g.ravel() for g in wgrids)

            v = (1.0 - u) * t
            w = (1.0 - u - v) * s
            nodes = np.column_stack((u, v, w))
            weights = wu * wt * ws * (1.0 - u) * (1.0 - u - v)
        case _:
            raise ValueError(f"Simplex dimension must be 1, 2 or 3, got {dim}")

    return QuadratureRule(dim, nodes, weights, d)

def expand_by_quadrature(e, req):

    """ The same coefficients as `q2x.expand`, from Gauss quadrature of the
    regular harmonics over the element. Harmonics at the nodes come from the
    degree-ascending recursion, vectorized over nodes.
    """

    check_compatible(e, req)

    frame = frame_from_vertices(e, req.center)
    rule = simplex_rule(e.dim, req.p - 1)
    points = frame.r0 + rule.nodes @ np.array(frame.vectors[1:])
    outer = TriangularCoeffs(req.p, rule.integrate(regular_tilde_batch(points, req.p)))

    if req.kind is ExpansionKind.M:
        outer = double_layer_moments(outer, unit_normal(e))

    return assemble(e, req, outer)
