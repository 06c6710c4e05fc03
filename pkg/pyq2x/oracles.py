
""" Closed-form layer potentials of flat simplices with constant density,
used as references for the truncated expansions. All oracles refuse points
on (or, for the tetrahedron, inside) the element.
"""

import math

import numpy as np

from pyq2x.exceptions import DomainError, GeometryError, SingularInputError
from pyq2x.geometry import (
    ElementKind,
    centroid,
    diameter,
    distance_to_support,
    outward_faces,
    unit_normal,
)
from pyq2x.harmonics import as_point

NEAR_SINGULAR_FRACTION = 1e-12

FOUR_PI = 4 * math.pi

def green(r, rp):

    """ The free-space Laplace Green's function 1/(4 pi |r - rp|). """

    distance = float(np.linalg.norm(as_point(r) - as_point(rp)))

    if distance == 0.0:
        raise DomainError("Green's function evaluated at coincident points")

    return 1.0 / (FOUR_PI * distance)

def _expect_kind(e, kind):
    if e.kind is not kind:
        raise GeometryError(f"Expected a {kind.name.lower()}, got a {e.kind.name.lower()}")

def _guard(e, r):
    if distance_to_support(e, r) <= NEAR_SINGULAR_FRACTION * diameter(e):
        raise SingularInputError(
            f"Point {r.tolist()} lies on the {e.kind.name.lower()} {e.vertices.tolist()}"
        )

def segment_potential_exact(e, r):

    """ Integral of the Green's function along the segment, times density.

    With the segment's midpoint as the origin, lengths measured in units of
    the segment length J, a = 2 zeta cos(alpha) and b = 2 zeta sin(alpha),
    the integral is ln(ratio)/(4 pi) with ratio the quotient of the
    distance-plus-projection sums at both endpoints. The form used is chosen
    per side to avoid cancellation; a is reflected to be non-negative.
    """

    _expect_kind(e, ElementKind.SEGMENT)

    r = as_point(r)
    _guard(e, r)

    x1, x2 = e.vertices
    edge = x2 - x1
    length2 = float(np.dot(edge, edge))
    offset = r - 0.5 * (x1 + x2)

    a = abs(2.0 * float(np.dot(offset, edge)) / length2)
    cross = np.cross(offset, edge)
    b2 = 4.0 * float(np.dot(cross, cross)) / (length2 * length2)

    near = math.sqrt((1.0 - a) ** 2 + b2)
    far = math.sqrt((1.0 + a) ** 2 + b2)

    if a <= 1.0:
        ratio = (1.0 - a + near) * (far + 1.0 + a) / b2
    else:
        ratio = (far + 1.0 + a) / (near - 1.0 + a)

    return e.density * math.log(ratio) / FOUR_PI

def _stable_sum(x, rho2, r):

    """ r + x with r = sqrt(x^2 + rho2), without cancellation for x < 0. """

    return r + x if x >= 0 else rho2 / (r - x)

def _edge_solid_angle(x, y, z, r):

    """ The signed solid angle subtended by the right triangle spanned from
    the foot of the edge line to the point x along it, at height y.
    """

    r_minus_y = (x * x + z * z) / (r + y) if y > 0 else r - y

    return -math.atan2(x * z * r_minus_y, r * z * z + y * x * x)

def _edge_terms(x, y, z):
    r = math.sqrt(x * x + y * y + z * z)
    m = _edge_solid_angle(x, y, z, r)
    rho2 = y * y + z * z
    log_term = 0.0 if z == 0.0 else z * math.log(_stable_sum(x, rho2, r))

    return -y * m - log_term, m

def triangle_layers_exact(e, r):

    """ Single and double layer potentials (L, M) of the triangle at `r`.

    For each edge q from vertex x_q to x_{q+1} (cyclically), with unit
    direction i_q, in-plane outward direction n_q = i_q x n, x_q = (r - x_q)
    . i_q and z_q = (r - x_q) . n_q, the per-edge primitives

        M_P(x, y, z) = -atan2(x z (r - y), r z^2 + y x^2)
        L_P(x, y, z) = -y M_P - z ln(r + x)

    at y = h = |(r - x_1) . n| are differenced between the edge ends. M is
    oriented by the triangle normal.
    """

    _expect_kind(e, ElementKind.TRIANGLE)

    r = as_point(r)
    _guard(e, r)

    normal = unit_normal(e)
    vertices = e.vertices
    signed_height = float(np.dot(r - vertices[0], normal))
    h = abs(signed_height)
    l_sum = 0.0
    m_sum = 0.0

    for q in range(3):
        start = vertices[q]
        edge = vertices[(q + 1) % 3] - start
        length = float(np.linalg.norm(edge))
        along = edge / length
        outward = np.cross(along, normal)

        xq = float(np.dot(r - start, along))
        zq = float(np.dot(r - start, outward))

        l_end, m_end = _edge_terms(length - xq, h, zq)
        l_start, m_start = _edge_terms(-xq, h, zq)

        l_sum += l_end - l_start
        m_sum += m_end - m_start

    m_sign = math.copysign(1.0, signed_height) if signed_height != 0.0 else 0.0

    return e.density * l_sum / FOUR_PI, e.density * m_sign * m_sum / FOUR_PI

def tetra_potential_exact(e, r):

    """ Volume integral of the Green's function over the tetrahedron from the
    face single layers, -1/2 sum_j n_j . (r - r_cj) L_j(r), with outward unit
    face normals n_j and face centroids r_cj.
    """

    _expect_kind(e, ElementKind.TETRAHEDRON)

    r = as_point(r)
    _guard(e, r)

    total = 0.0

    for face in outward_faces(e):
        single, _ = triangle_layers_exact(face.with_density(1.0), r)
        total += float(np.dot(unit_normal(face), r - centroid(face))) * single

    return -0.5 * e.density * total

def exact_potential(kind, e, r):

    """ The oracle value matching expansion kind `kind` ("K", "L", "M" or "N"). """

    match str(getattr(kind, "value", kind)).upper():
        case "K":
            return segment_potential_exact(e, r)
        case "L":
            return triangle_layers_exact(e, r)[0]
        case "M":
            return triangle_layers_exact(e, r)[1]
        case "N":
            return tetra_potential_exact(e, r)
        case other:
            raise ValueError(f"Unknown expansion kind: {other!r}")
