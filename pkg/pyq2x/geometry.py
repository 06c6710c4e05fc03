
""" Flat simplex elements and their affine maps onto unit simplices. """

import enum
import math

import numpy as np

from attrs import field, frozen

from pyq2x.exceptions import GeometryError
from pyq2x.harmonics import as_point, complex_split

DEGENERACY_THRESHOLD = 1e-14

class ElementKind(enum.Enum):
    SEGMENT = "S"
    TRIANGLE = "T"
    TETRAHEDRON = "Q"

    @property
    def dim(self):
        return _DIMS[self]

    @property
    def vertex_count(self):
        return self.dim + 1

    @classmethod
    def parse(cls, value):

        """ Accept an ElementKind, its mesh letter or its (case-insensitive)
        name.
        """

        if isinstance(value, cls):
            return value

        try:
            return cls(value)
        except ValueError:
            pass

        try:
            return cls[str(value).upper()]
        except KeyError:
            raise ValueError(f"Unknown element kind: {value!r}") from None

_DIMS = {
    ElementKind.SEGMENT: 1,
    ElementKind.TRIANGLE: 2,
    ElementKind.TETRAHEDRON: 3,
}

def _as_vertices(value):
    vertices = np.array(value, dtype=np.float64)

    if vertices.ndim != 2 or vertices.shape[1] != 3:
        raise GeometryError(f"Vertices must be an (k, 3) array, got shape {vertices.shape}")
    if not np.all(np.isfinite(vertices)):
        raise GeometryError("Non-finite vertex coordinates")

    vertices.flags.writeable = False

    return vertices

@frozen(eq=False)
class SimplexElement:

    """ A flat segment, triangle or tetrahedron carrying a constant density
    multiplier. The vertex order fixes the orientation of the affine map and,
    for triangles, of the normal.
    """

    kind: ElementKind = field(converter=ElementKind.parse)
    vertices: np.ndarray = field(converter=_as_vertices, repr=lambda v: str(v.tolist()))
    density: float = field(default=1.0, converter=float)

    def __attrs_post_init__(self):
        if self.vertices.shape[0] != self.kind.vertex_count:
            raise GeometryError(
                f"A {self.kind.name.lower()} takes {self.kind.vertex_count} vertices, "
                f"got {self.vertices.shape[0]}"
            )
        if not math.isfinite(self.density):
            raise GeometryError(f"Non-finite density: {self.density}")

    @property
    def dim(self):
        return self.kind.dim

    @property
    def edges(self):
        return self.vertices[1:] - self.vertices[0]

    def max_edge_length(self):
        diffs = self.vertices[:, None, :] - self.vertices[None, :, :]

        return float(np.sqrt((diffs * diffs).sum(axis=-1).max()))

    def translated(self, offset):
        return SimplexElement(self.kind, self.vertices + as_point(offset), self.density)

    def scaled(self, factor, origin=(0.0, 0.0, 0.0)):
        origin = as_point(origin)

        return SimplexElement(
            self.kind, origin + factor * (self.vertices - origin), self.density
        )

    def with_density(self, density):
        return SimplexElement(self.kind, self.vertices, density)

@frozen(eq=False)
class ParametricFrame:

    """ The affine map R(u, v, w) = R0 + u Ru + v Rv + w Rw of an element onto
    its unit simplex, with R0 taken relative to the expansion center. `rv`
    is None for segments and `rw` is None for segments and triangles.
    """

    r0: np.ndarray = field(converter=as_point)
    ru: np.ndarray = field(converter=as_point)
    rv: np.ndarray = field(default=None, converter=lambda v: None if v is None else as_point(v))
    rw: np.ndarray = field(default=None, converter=lambda v: None if v is None else as_point(v))

    def __attrs_post_init__(self):
        if self.rw is not None and self.rv is None:
            raise GeometryError("A volume frame needs both Rv and Rw")

    @property
    def dim(self):
        return 1 + (self.rv is not None) + (self.rw is not None)

    @property
    def splits(self):

        """ ComplexSplits of (R0, Ru[, Rv[, Rw]]). """

        return tuple(complex_split(vec) for vec in self.vectors)

    @property
    def vectors(self):
        return tuple(vec for vec in (self.r0, self.ru, self.rv, self.rw) if vec is not None)

    def point(self, u, v=0.0, w=0.0):
        out = self.r0 + u * self.ru

        if self.rv is not None:
            out = out + v * self.rv
        if self.rw is not None:
            out = out + w * self.rw

        return out

def _measure(e):
    edges = e.edges

    match e.kind:
        case ElementKind.SEGMENT:
            return float(np.linalg.norm(edges[0]))
        case ElementKind.TRIANGLE:
            return float(np.linalg.norm(np.cross(edges[0], edges[1])))
        case ElementKind.TETRAHEDRON:
            return abs(float(np.dot(np.cross(edges[0], edges[1]), edges[2])))

def jacobian(e):

    """ The measure ratio of the element's affine map: the edge length, the
    doubled area or six times the volume.
    """

    measure = _measure(e)
    scale = e.max_edge_length() ** e.dim

    if not measure > DEGENERACY_THRESHOLD * scale:
        raise GeometryError(
            f"Degenerate {e.kind.name.lower()}: Jacobian {measure:.3e} "
            f"against edge scale {scale:.3e}"
        )

    return measure

def frame_from_vertices(e, center):
    jacobian(e)

    r0 = e.vertices[0] - as_point(center)
    edges = e.edges

    return ParametricFrame(r0, *edges)

def unit_normal(e):

    """ (Ru x Rv)/|Ru x Rv|, oriented by the vertex order. """

    if e.kind is not ElementKind.TRIANGLE:
        raise GeometryError(f"Normals are defined for triangles only, not {e.kind.name.lower()}s")

    cross = np.cross(e.edges[0], e.edges[1])

    return cross / jacobian(e)

def centroid(e):
    return e.vertices.mean(axis=0)

def diameter(e):
    return e.max_edge_length()

def area_vector(e):

    """ The triangle's normal scaled by its area. """

    return 0.5 * np.cross(e.edges[0], e.edges[1])

def outward_faces(e):

    """ The four faces of a tetrahedron as triangles whose normals point away
    from the opposite vertex.
    """

    if e.kind is not ElementKind.TETRAHEDRON:
        raise GeometryError(f"Faces are defined for tetrahedra only, not {e.kind.name.lower()}s")

    v = e.vertices
    faces = []

    for opposite in range(4):
        a, b, c = (v[i] for i in range(4) if i != opposite)

        if np.dot(np.cross(b - a, c - a), v[opposite] - a) > 0:
            b, c = c, b

        faces.append(SimplexElement(ElementKind.TRIANGLE, [a, b, c], e.density))

    return faces

def _segment_distance(a, b, r):
    ab = b - a
    t = np.clip(np.dot(r - a, ab) / np.dot(ab, ab), 0.0, 1.0)

    return float(np.linalg.norm(r - (a + t * ab)))

def _triangle_distance(a, b, c, r):
    n = np.cross(b - a, c - a)
    n = n / np.linalg.norm(n)
    h = float(np.dot(r - a, n))
    foot = r - h * n

    # Inside test through the signs of the sub-triangle normals
    inside = all(
        np.dot(np.cross(q - p, foot - p), n) >= 0
        for p, q in ((a, b), (b, c), (c, a))
    )

    if inside:
        return abs(h)

    return min(_segment_distance(a, b, r), _segment_distance(b, c, r), _segment_distance(c, a, r))

def distance_to_support(e, r):

    """ Euclidean distance from `r` to the closed element; zero inside a
    tetrahedron.
    """

    r = as_point(r)
    v = e.vertices

    match e.kind:
        case ElementKind.SEGMENT:
            return _segment_distance(v[0], v[1], r)
        case ElementKind.TRIANGLE:
            return _triangle_distance(v[0], v[1], v[2], r)
        case ElementKind.TETRAHEDRON:
            bary = np.linalg.solve(e.edges.T, r - v[0])

            if np.all(bary >= 0) and bary.sum() <= 1:
                return 0.0

            return min(
                _triangle_distance(*face.vertices, r) for face in outward_faces(e)
            )
