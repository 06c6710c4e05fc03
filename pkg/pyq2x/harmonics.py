
""" Regular and singular solid harmonics in the rephased ("tilde") basis.

The tilde basis R~_n^m = i^|m| R_n^m, S~_n^m = i^-|m| S_n^m obeys the plain
conjugation symmetry F~_n^-m = conj(F~_n^m), so only orders m >= 0 are
stored. Every harmonic table, recursion intermediate and expansion in this
package is a `TriangularCoeffs`.
"""

import numpy as np

from attrs import field, frozen

from pyq2x import kernels
from pyq2x.exceptions import DomainError

def triangular_size(p):
    return p * (p + 1) // 2

def triangular_index(n, m):
    return n * (n + 1) // 2 + m

def degree_of_index(p):

    """ The degree n of every flat triangular index for truncation `p`. """

    return np.repeat(np.arange(p), np.arange(1, p + 1))

def order_of_index(p):
    return np.concatenate([np.arange(n + 1) for n in range(p)])

def as_point(value):

    """ Coerce `value` to a finite float64 3-vector. """

    point = np.array(value, dtype=np.float64).reshape(-1)

    if point.shape != (3,):
        raise ValueError(f"Expected three coordinates, got {point.shape[0]}")
    if not np.all(np.isfinite(point)):
        raise ValueError(f"Non-finite coordinates: {point}")

    return point

def _readonly(array):
    array.flags.writeable = False

    return array

def _freeze_complex(data):
    return _readonly(np.array(data, dtype=np.complex128, copy=True).reshape(-1))

def _freeze_real(data):
    return _readonly(np.array(data, dtype=np.float64, copy=True).reshape(-1))

@frozen
class ComplexSplit:

    """ A point as (xi, eta, z) with xi = (x+iy)/2 and eta = conj(xi). """

    xi: complex
    eta: complex
    z: float

    @property
    def point(self):
        return np.array([(self.xi + self.eta).real, (1j * (self.eta - self.xi)).real, self.z])

@frozen(eq=False)
class TriangularCoeffs:

    """ Complex values for degrees n = 0..p-1 and orders 0 <= m <= n, packed
    at flat index n(n+1)/2 + m. Lookups with m < 0 reconstruct the entry by
    conjugation; |m| > n reads as zero.
    """

    p: int
    data: np.ndarray = field(converter=_freeze_complex, repr=False)

    def __attrs_post_init__(self):
        if self.p < 1:
            raise ValueError(f"Truncation number must be positive, got {self.p}")
        if self.data.shape[0] != triangular_size(self.p):
            raise ValueError(
                f"Expected {triangular_size(self.p)} entries for p={self.p}, "
                f"got {self.data.shape[0]}"
            )

    @classmethod
    def zeros(cls, p):
        return cls(p, np.zeros(triangular_size(p), dtype=np.complex128))

    def __getitem__(self, nm):
        n, m = nm

        if not 0 <= n < self.p:
            raise IndexError(f"Degree {n} outside 0..{self.p - 1}")
        if abs(m) > n:
            return 0j

        value = self.data[triangular_index(n, abs(m))]

        return complex(value.conjugate() if m < 0 else value)

    def degree(self, n):

        """ Orders 0..n of degree `n` as a read-only view. """

        start = triangular_index(n, 0)

        return self.data[start:start + n + 1]

    def __add__(self, other):
        if not isinstance(other, TriangularCoeffs):
            return NotImplemented
        if other.p != self.p:
            raise ValueError(f"Cannot add truncations {self.p} and {other.p}")

        return TriangularCoeffs(self.p, self.data + other.data)

    def __mul__(self, scalar):
        return TriangularCoeffs(self.p, self.data * scalar)

    __rmul__ = __mul__

    def conj(self):
        return TriangularCoeffs(self.p, self.data.conjugate())

    def isclose(self, other, rtol=1e-12, atol=0.0):
        return self.p == other.p and np.allclose(self.data, other.data, rtol=rtol, atol=atol)

@frozen(eq=False)
class RealCoeffs:

    """ Real-basis values for degrees n = 0..p-1 and all orders -n..n, entry
    (n, m) at flat index n^2 + n + m.
    """

    p: int
    data: np.ndarray = field(converter=_freeze_real, repr=False)

    def __attrs_post_init__(self):
        if self.data.shape[0] != self.p * self.p:
            raise ValueError(f"Expected {self.p * self.p} entries for p={self.p}")

    def __getitem__(self, nm):
        n, m = nm

        if not 0 <= n < self.p:
            raise IndexError(f"Degree {n} outside 0..{self.p - 1}")
        if abs(m) > n:
            return 0.0

        return float(self.data[n * n + n + m])

def complex_split(pt):
    x, y, z = as_point(pt)
    xi = complex(x, y) / 2

    return ComplexSplit(xi, xi.conjugate(), float(z))

def _check_truncation(p):
    if int(p) != p or p < 1:
        raise ValueError(f"Truncation number must be a positive integer, got {p}")

    return int(p)

def eval_regular_tilde(pt, p):

    """ R~_n^m(pt) for n < p by the degree-ascending recursion
    n R~_n^m = -xi R~_{n-1}^{m-1} + eta R~_{n-1}^{m+1} - z R~_{n-1}^m.
    """

    p = _check_truncation(p)
    s = complex_split(pt)
    table = kernels.moment_chain(
        np.array([s.xi]), np.array([s.eta]), np.array([s.z]), p
    )

    return TriangularCoeffs(p, table[0])

def eval_singular_tilde(pt, p):
    p = _check_truncation(p)
    x, y, z = as_point(pt)

    if x == 0.0 and y == 0.0 and z == 0.0:
        raise DomainError("Singular harmonics are undefined at the origin")
    if x * x + y * y + z * z == 0.0:
        raise DomainError(f"Squared radius of ({x}, {y}, {z}) underflows")

    return TriangularCoeffs(p, kernels.singular_tilde(x, y, z, p))

def regular_tilde_batch(points, p):

    """ R~ at many points at once; returns a complex array of shape
    (len(points), p(p+1)/2). The same recursion as `eval_regular_tilde`,
    vectorized over points with one array step per degree.
    """

    p = _check_truncation(p)
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    xi = 0.5 * (points[:, 0] + 1j * points[:, 1])
    eta = xi.conjugate()
    z = points[:, 2]

    out = np.zeros((points.shape[0], triangular_size(p)), dtype=np.complex128)
    out[:, 0] = 1.0

    for n in range(1, p):
        prev = out[:, triangular_index(n - 1, 0):triangular_index(n, 0)]
        padded = np.zeros((points.shape[0], n + 3), dtype=np.complex128)
        padded[:, 1:n + 1] = prev

        # padded[:, m] = X_{n-1}^{m-1}, padded[:, m+1] = X_{n-1}^m, padded[:, m+2] = X_{n-1}^{m+1}

        current = (
            -xi[:, None] * padded[:, 0:n + 1]
            + eta[:, None] * padded[:, 2:n + 3]
            - z[:, None] * padded[:, 1:n + 2]
        )
        current[:, 0] = 2.0 * (eta * padded[:, 2]).real - z * padded[:, 1]
        out[:, triangular_index(n, 0):triangular_index(n + 1, 0)] = current / n

    return out

def to_real_basis(c):

    """ Split tilde-basis values into the real basis: Re{c(n,m)} at m >= 0 and
    -Im{c(n,|m|)} at m < 0.
    """

    degrees = degree_of_index(c.p)
    orders = order_of_index(c.p)
    out = np.zeros(c.p * c.p)
    centre = degrees * degrees + degrees

    out[centre + orders] = c.data.real

    positive = orders > 0
    out[centre[positive] - orders[positive]] = -c.data.imag[positive]

    return RealCoeffs(c.p, out)

def from_real_basis(real):

    """ Inverse of `to_real_basis`: c(n,m) = out(n,m) - i out(n,-m). """

    degrees = degree_of_index(real.p)
    orders = order_of_index(real.p)
    centre = degrees * degrees + degrees

    data = real.data[centre + orders].astype(np.complex128)
    positive = orders > 0
    data[positive] -= 1j * real.data[centre[positive] - orders[positive]]

    return TriangularCoeffs(real.p, data)
