
""" Recursive generation of multipole expansion coefficients of layer
potentials over simplices.

Every raw moment is the integral of the regular harmonics over the unit
simplex, produced degree by degree from coupled recursions seeded at n = 0.
`expand` folds in the density, the Jacobian, the Green's function constant
and the (-1)^n parity to give

    F~_n^m = density * J/(4 pi) * (-1)^n * conj(raw~_n^m),   m >= 0.

The conjugation realizes the negative-order index of the raw moment.
"""

import enum
import logging
import math

from functools import lru_cache

import numpy as np

from attrs import field, frozen

from pyq2x import kernels
from pyq2x.exceptions import IncompatibleKindError
from pyq2x.geometry import ElementKind, frame_from_vertices, jacobian, unit_normal
from pyq2x.harmonics import TriangularCoeffs, as_point, degree_of_index

logger = logging.getLogger(__name__)

class ExpansionKind(enum.Enum):

    """ K: single layer on a segment; L: single layer on a triangle; M:
    double layer on a triangle; N: volume potential of a tetrahedron.
    """

    K = "K"
    L = "L"
    M = "M"
    N = "N"

    @property
    def element_kind(self):
        return _ELEMENT_KINDS[self]

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value

        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"Unknown expansion kind: {value!r}") from None

_ELEMENT_KINDS = {
    ExpansionKind.K: ElementKind.SEGMENT,
    ExpansionKind.L: ElementKind.TRIANGLE,
    ExpansionKind.M: ElementKind.TRIANGLE,
    ExpansionKind.N: ElementKind.TETRAHEDRON,
}

def _positive_truncation(instance, attribute, value):
    if value < 1:
        raise ValueError(f"Truncation number must be positive, got {value}")

@frozen(eq=False)
class ExpansionRequest:
    center: np.ndarray = field(converter=as_point)
    p: int = field(converter=int, validator=_positive_truncation)
    kind: ExpansionKind = field(converter=ExpansionKind.parse)

@frozen(eq=False)
class MultipoleCoefficients:

    """ F~_n^m about `center` for n < p and m >= 0. `kind` is None for
    expansions not tied to a single element kind, such as point charges or
    mixed sums.
    """

    center: np.ndarray = field(converter=as_point)
    p: int
    data: TriangularCoeffs
    kind: ExpansionKind = None

    def __attrs_post_init__(self):
        if self.data.p != self.p:
            raise ValueError(f"Coefficient table holds p={self.data.p}, expected {self.p}")

    def __getitem__(self, nm):
        return self.data[nm]

    def __add__(self, other):
        if not isinstance(other, MultipoleCoefficients):
            return NotImplemented
        if not np.array_equal(self.center, other.center):
            raise ValueError(f"Cannot add expansions about {self.center} and {other.center}")
        if self.p != other.p:
            raise ValueError(f"Cannot add truncations {self.p} and {other.p}")

        kind = self.kind if self.kind is other.kind else None

        return MultipoleCoefficients(self.center, self.p, self.data + other.data, kind)

def _check_dim(frame, dim):
    if frame.dim != dim:
        raise IncompatibleKindError(f"Expected a {dim}-dimensional frame, got {frame.dim}")

def chain_coefficients(frame):

    """ (xis, etas, zs) of the moment chain of `frame`, one entry per level:
    the splits of R0 + Ru, R0 + Rv and R0 + Rw as far as the frame reaches,
    then of R0 itself.
    """

    r0, *edges = frame.vectors
    points = np.array([r0 + edge for edge in edges] + [r0])
    xis = 0.5 * (points[:, 0] + 1j * points[:, 1])

    return xis, xis.conjugate(), np.ascontiguousarray(points[:, 2])

def _chain(frame, p):
    return kernels.moment_chain(*chain_coefficients(frame), p)

def raw_segment_moments(frame, p):

    """ (q~, p~): the regular harmonics at the far endpoint and their integral
    over the unit segment.
    """

    _check_dim(frame, 1)
    q, pm = _chain(frame, p)

    return TriangularCoeffs(p, q), TriangularCoeffs(p, pm)

def raw_triangle_moments(frame, p):

    """ (q~, j~, i~): q~ at R0 + Ru, j~ its integral along the edge towards
    R0 + Rv, and i~ the integral over the unit triangle.
    """

    _check_dim(frame, 2)
    q, j, i = _chain(frame, p)

    return TriangularCoeffs(p, q), TriangularCoeffs(p, j), TriangularCoeffs(p, i)

def raw_tetra_moments(frame, p):

    """ (q~, j~, b~, a~): as for the triangle with b~ the integral over the
    face spanned from R0 + Rw, and a~ the integral over the unit tetrahedron.
    """

    _check_dim(frame, 3)
    q, j, b, a = _chain(frame, p)

    return tuple(TriangularCoeffs(p, table) for table in (q, j, b, a))

def double_layer_moments(i_tilde, normal):

    """ l~ from the triangle integrals i~ one degree lower:

        l~_n^m = 1/2 i~_{n-1}^{m+1} (nx - i ny) - 1/2 i~_{n-1}^{m-1} (nx + i ny) - nz i~_{n-1}^m

    for m > 0, l~_n^0 = Re{i~_{n-1}^1 (nx - i ny)} - nz i~_{n-1}^0 and l~_0^0 = 0.
    """

    nx, ny, nz = as_point(normal)

    return TriangularCoeffs(i_tilde.p, kernels.double_layer(i_tilde.data, nx, ny, nz, i_tilde.p))

@lru_cache
def parity_signs(p):
    parity = np.where(degree_of_index(p) % 2 == 0, 1.0, -1.0)
    parity.flags.writeable = False

    return parity

def assemble(e, req, outer):

    """ Fold the density, Jacobian and parity into raw outer moments `outer`
    (p~, i~ or a~; l~ for kind M) to give the expansion coefficients.
    """

    factor = e.density * jacobian(e) / (4 * math.pi)
    data = factor * parity_signs(req.p) * outer.data.conjugate()

    return MultipoleCoefficients(req.center, req.p, TriangularCoeffs(req.p, data), req.kind)

def check_compatible(e, req):
    if req.kind.element_kind is not e.kind:
        raise IncompatibleKindError(
            f"Expansion kind {req.kind.value} needs a {req.kind.element_kind.name.lower()}, "
            f"got a {e.kind.name.lower()}"
        )

def expand(e, req):

    """ The multipole coefficients of element `e` about `req.center`. The
    series' region of validity is left to the caller.
    """

    check_compatible(e, req)

    frame = frame_from_vertices(e, req.center)

    match req.kind:
        case ExpansionKind.K:
            _, outer = raw_segment_moments(frame, req.p)
        case ExpansionKind.L:
            _, _, outer = raw_triangle_moments(frame, req.p)
        case ExpansionKind.M:
            _, _, i_tilde = raw_triangle_moments(frame, req.p)
            outer = double_layer_moments(i_tilde, unit_normal(e))
        case ExpansionKind.N:
            *_, outer = raw_tetra_moments(frame, req.p)

    return assemble(e, req, outer)

def consolidate(coeffs):

    """ Sum expansions about a common center by pairwise tree reduction. """

    items = list(coeffs)

    if not items:
        raise ValueError("Nothing to consolidate")

    logger.debug("Consolidating %d expansions", len(items))

    while len(items) > 1:
        paired = [a + b for a, b in zip(items[0::2], items[1::2])]

        if len(items) % 2:
            paired.append(items[-1])

        items = paired

    return items[0]
