
""" Compiled inner loops over packed triangular buffers.

All buffers hold degree n, order 0 <= m <= n at flat index n(n+1)/2 + m. The
routines here are scalar loops compiled with numba; they release the GIL so
callers can fan expansions out over threads.
"""

import math

import numpy as np

from numba import njit

@njit(cache=True, nogil=True)
def _ascend(x, src, n, xi, eta, z, divisor):

    """ Fill degree `n` of `x` from degree n-1 with the four-term recursion

        X_n^m = (-xi X_{n-1}^{m-1} + eta X_{n-1}^{m+1} - z X_{n-1}^m + src_n^m) / divisor

    and its m = 0 form using 2 Re{eta X_{n-1}^1}. Orders |m| > n-1 read as
    zero.
    """

    base = n * (n + 1) // 2
    prev = (n - 1) * n // 2

    acc = -z * x[prev]

    if n >= 2:
        acc += 2.0 * (eta * x[prev + 1]).real

    x[base] = (acc + src[base]) / divisor

    for m in range(1, n + 1):
        acc = -xi * x[prev + m - 1]

        if m + 1 <= n - 1:
            acc += eta * x[prev + m + 1]
        if m <= n - 1:
            acc -= z * x[prev + m]

        x[base + m] = (acc + src[base + m]) / divisor

@njit(cache=True, nogil=True)
def moment_chain(xis, etas, zs, p):

    """ Run a chain of coupled degree-ascending recursions in a single sweep
    over n = 1..p-1. Level 0 is the homogeneous recursion (divisor n) of the
    regular harmonics at the point (xis[0], etas[0], zs[0]); level k > 0 uses
    divisor n + k, takes level k-1 at the same degree as its inhomogeneous
    term and is seeded with 1/k!.

    Returns an array of shape (levels, p(p+1)/2).
    """

    levels = xis.shape[0]
    size = p * (p + 1) // 2
    out = np.zeros((levels + 1, size), dtype=np.complex128)
    seed = 1.0

    for level in range(levels):
        if level > 0:
            seed /= level

        out[level + 1, 0] = seed

    for n in range(1, p):
        for level in range(levels):
            _ascend(out[level + 1], out[level], n, xis[level], etas[level], zs[level], n + level)

    return out[1:]

@njit(cache=True, nogil=True)
def double_layer(i_tilde, nx, ny, nz, p):

    """ The double-layer table from the triangle integrals one degree lower,
    for unit normal (nx, ny, nz). Degree 0 is zero.
    """

    out = np.zeros(p * (p + 1) // 2, dtype=np.complex128)
    minus = complex(nx, -ny)
    plus = complex(nx, ny)

    for n in range(1, p):
        base = n * (n + 1) // 2
        prev = (n - 1) * n // 2

        zeroth = -nz * i_tilde[prev].real

        if n >= 2:
            zeroth += (minus * i_tilde[prev + 1]).real

        out[base] = zeroth

        for m in range(1, n + 1):
            acc = -0.5 * plus * i_tilde[prev + m - 1]

            if m + 1 <= n - 1:
                acc += 0.5 * minus * i_tilde[prev + m + 1]
            if m <= n - 1:
                acc -= nz * i_tilde[prev + m]

            out[base + m] = acc

    return out

@njit(cache=True, nogil=True)
def singular_tilde(x, y, z, p):

    """ Singular harmonics in the rephased basis, S~_n^m = (-1)^m (n-m)!
    r^(-n-1) P_n^m(cos theta) e^(im phi), by the associated Legendre degree
    recursion with the normalization folded in:

        S~_m^m     = (2m-1) (x+iy)/r^2 S~_{m-1}^{m-1}
        S~_{m+1}^m = (2m+1) z/r^2 S~_m^m
        S~_n^m     = ((2n-1) z S~_{n-1}^m - (n+m-1)(n-m-1) S~_{n-2}^m) / r^2
    """

    size = p * (p + 1) // 2
    out = np.zeros(size, dtype=np.complex128)
    inv_r2 = 1.0 / (x * x + y * y + z * z)
    w = complex(x, y) * inv_r2
    zr = z * inv_r2

    out[0] = math.sqrt(inv_r2)

    for m in range(1, p):
        out[m * (m + 1) // 2 + m] = (2 * m - 1) * w * out[(m - 1) * m // 2 + m - 1]

    for m in range(p - 1):
        diag = m * (m + 1) // 2 + m
        out[diag + m + 1] = (2 * m + 1) * zr * out[diag]

        for n in range(m + 2, p):
            out[n * (n + 1) // 2 + m] = (
                (2 * n - 1) * zr * out[(n - 1) * n // 2 + m]
                - (n + m - 1) * (n - m - 1) * inv_r2 * out[(n - 2) * (n - 1) // 2 + m]
            )

    return out
