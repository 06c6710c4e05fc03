
""" Independent numerical references for tests: definitional harmonics,
adaptive quadrature of the layer integrals and tensor Gauss moments.
"""

import math

import numpy as np

from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.special import lpmv

from pyq2x.geometry import jacobian, unit_normal

FOUR_PI = 4 * math.pi

def _spherical(pt):
    x, y, z = (float(c) for c in pt)
    r = math.sqrt(x * x + y * y + z * z)
    cos_theta = z / r if r > 0 else 1.0

    return r, cos_theta, math.atan2(y, x)

def definitional_regular_tilde(pt, n, m):

    """ R~_n^m from associated Legendre values. scipy's lpmv carries the
    Condon-Shortley phase.
    """

    r, cos_theta, phi = _spherical(pt)

    return (
        (-1) ** (n + m) * r ** n * lpmv(m, n, cos_theta) * np.exp(1j * m * phi)
        / math.factorial(n + m)
    )

def definitional_singular_tilde(pt, n, m):
    r, cos_theta, phi = _spherical(pt)

    return (
        (-1) ** m * math.factorial(n - m) * r ** (-n - 1)
        * lpmv(m, n, cos_theta) * np.exp(1j * m * phi)
    )

def finite_difference_laplacian(f, pt, h=1e-3):

    """ Fourth-order central difference Laplacian with five points per axis. """

    pt = np.asarray(pt, dtype=np.float64)
    total = -30.0 * 3 * f(pt)

    for axis in range(3):
        step = np.zeros(3)
        step[axis] = h
        total += 16.0 * (f(pt + step) + f(pt - step)) - (f(pt + 2 * step) + f(pt - 2 * step))

    return total / (12.0 * h * h)

def _green(r, rp):
    return 1.0 / (FOUR_PI * np.linalg.norm(r - rp))

def _dipole(r, rp, normal):
    diff = r - rp

    return float(np.dot(normal, diff)) / (FOUR_PI * np.linalg.norm(diff) ** 3)

_TOLERANCES = dict(epsabs=0.0, epsrel=1e-12)

def adaptive_segment_integral(e, r):
    r = np.asarray(r, dtype=np.float64)
    x1, x2 = e.vertices
    value, _ = integrate.quad(lambda u: _green(r, x1 + u * (x2 - x1)), 0.0, 1.0, limit=200, **_TOLERANCES)

    return e.density * jacobian(e) * value

def adaptive_triangle_integral(e, r, double_layer=False):
    r = np.asarray(r, dtype=np.float64)
    x1, x2, x3 = e.vertices
    normal = unit_normal(e)

    def integrand(v, u):
        rp = x1 + u * (x2 - x1) + v * (x3 - x1)

        return _dipole(r, rp, normal) if double_layer else _green(r, rp)

    value, _ = integrate.dblquad(integrand, 0.0, 1.0, 0.0, lambda u: 1.0 - u, **_TOLERANCES)

    return e.density * jacobian(e) * value

def adaptive_tetra_integral(e, r):
    r = np.asarray(r, dtype=np.float64)
    x1, x2, x3, x4 = e.vertices

    def integrand(w, v, u):
        return _green(r, x1 + u * (x2 - x1) + v * (x3 - x1) + w * (x4 - x1))

    value, _ = integrate.tplquad(
        integrand, 0.0, 1.0,
        0.0, lambda u: 1.0 - u,
        0.0, lambda u, v: 1.0 - u - v,
        epsabs=0.0, epsrel=1e-10,
    )

    return e.density * jacobian(e) * value

def simplex_moments(frame, p, points_per_axis=16):

    """ Integrals of R~_n^m over the unit simplex of `frame` (segment,
    triangle or tetrahedron), by a collapsed tensor Gauss-Legendre rule
    from numpy, independent of the package's own rules.
    """

    x, w = leggauss(points_per_axis)
    t = 0.5 * (x + 1.0)
    wt = 0.5 * w
    vectors = frame.vectors[1:]
    dim = len(vectors)
    out = np.zeros(p * (p + 1) // 2, dtype=np.complex128)

    grids = np.meshgrid(*([t] * dim), indexing="ij")
    weights = np.prod(np.meshgrid(*([wt] * dim), indexing="ij"), axis=0).ravel()
    coords = [g.ravel() for g in grids]

    if dim == 1:
        params = [coords[0]]
    elif dim == 2:
        u = coords[0]
        params = [u, (1 - u) * coords[1]]
        weights = weights * (1 - u)
    else:
        u = coords[0]
        v = (1 - u) * coords[1]
        params = [u, v, (1 - u - v) * coords[2]]
        weights = weights * (1 - u) * (1 - u - v)

    points = frame.r0 + sum(params[k][:, None] * vectors[k][None, :] for k in range(dim))
    r = np.linalg.norm(points, axis=1)
    cos_theta = np.where(r > 0, points[:, 2] / np.where(r > 0, r, 1.0), 1.0)
    phi = np.arctan2(points[:, 1], points[:, 0])

    for n in range(p):
        for m in range(n + 1):
            values = (
                (-1) ** (n + m) * r ** n * lpmv(m, n, cos_theta) * np.exp(1j * m * phi)
                / math.factorial(n + m)
            )
            out[n * (n + 1) // 2 + m] = weights @ values

    return out
